"""Z2-graded algebras given by structure constants.

A :class:`SuperAlgebra` is a parity-tagged basis together with a sparse
structure-constant table ``table[(i, j)] = ((k, c_ijk), ...)`` and, for the
matrix families, the graded matrices realising each basis element.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import numpy as np
import sympy
from scipy import sparse

from .exact_linalg import Echelon, Mat, as_rational, kernel_basis, rank

__all__ = [
    "Parity",
    "EVEN",
    "ODD",
    "GradedMatrixRealization",
    "SuperAlgebra",
    "Subspace",
    "AxiomReport",
    "SimplicityVerdict",
    "product",
    "super_jordan_matrix_product",
    "matrix_parity",
    "check_axioms",
    "graded_closure",
    "is_subsuperalgebra",
    "find_identity",
    "annihilator",
    "ideal_generated",
    "is_simple",
    "associative_envelope",
    "left_operators",
    "orthogonal_idempotent_count",
    "restrict",
    "matrix_coordinates",
    "BURNSIDE_PRIME",
]


class Parity(IntEnum):
    EVEN = 0
    ODD = 1

    def __add__(self, other):
        return Parity((int(self) + int(other)) % 2)


EVEN = Parity.EVEN
ODD = Parity.ODD


def _sign(a: int, b: int) -> int:
    return -1 if (a & b) else 1


# --- matrices ------------------------------------------------------------------


def matrix_parity(p: int, q: int, X: Mat) -> Parity | None:
    """EVEN/ODD for a homogeneous (p+q)-square matrix, None if mixed; zero is EVEN."""
    n = p + q
    if X.rows != n or X.cols != n:
        raise ValueError(f"expected a {n}x{n} matrix")
    diag = offd = False
    for i in range(n):
        for j in range(n):
            if X[i, j]:
                if (i < p) == (j < p):
                    diag = True
                else:
                    offd = True
    if diag and offd:
        return None
    return ODD if offd else EVEN


def super_jordan_matrix_product(p: int, q: int, X: Mat, Y: Mat) -> Mat:
    """x∘y = ½(xy + (−1)^{|x||y|} yx) for homogeneous block matrices."""
    px, py = matrix_parity(p, q, X), matrix_parity(p, q, Y)
    if px is None or py is None:
        raise ValueError("super-Jordan product needs parity-homogeneous matrices")
    xy, yx = X @ Y, Y @ X
    half = Fraction(1, 2)
    if px & py:
        return (xy - yx).scale(half)
    return (xy + yx).scale(half)


@dataclass(frozen=True)
class GradedMatrixRealization:
    block_even: int
    block_odd: int
    basis_mats: tuple

    @property
    def size(self) -> int:
        return self.block_even + self.block_odd

    def matrix_of(self, coords: Sequence) -> Mat:
        n = self.size
        acc = [Fraction(0)] * (n * n)
        for c, M in zip(coords, self.basis_mats):
            c = as_rational(c)
            if c:
                acc = [a + c * b for a, b in zip(acc, M.entries)]
        return Mat(n, n, tuple(acc))


# --- algebras --------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SuperAlgebra:
    parity: tuple
    table: dict = field(repr=False)
    realization: GradedMatrixRealization | None = field(default=None, repr=False)
    name: str = ""

    @property
    def dim(self) -> int:
        return len(self.parity)

    @property
    def even_indices(self) -> list[int]:
        return [i for i, p in enumerate(self.parity) if p == EVEN]

    @property
    def odd_indices(self) -> list[int]:
        return [i for i, p in enumerate(self.parity) if p == ODD]

    @property
    def parity_dims(self) -> tuple[int, int]:
        e = sum(1 for p in self.parity if p == EVEN)
        return e, self.dim - e

    def sc(self, i: int, j: int, k: int) -> Fraction:
        for kk, c in self.table.get((i, j), ()):
            if kk == k:
                return c
        return Fraction(0)

    def quadruples(self) -> list[tuple[int, int, int, Fraction]]:
        return sorted((i, j, k, c) for (i, j), terms in self.table.items() for k, c in terms if c)

    @classmethod
    def from_quadruples(cls, parity, quads: Iterable, realization=None, name: str = "") -> "SuperAlgebra":
        table: dict = {}
        for i, j, k, c in quads:
            c = as_rational(c)
            if c:
                table.setdefault((i, j), {})
                table[(i, j)][k] = table[(i, j)].get(k, Fraction(0)) + c
        frozen = {
            key: tuple(sorted((k, c) for k, c in d.items() if c)) for key, d in table.items()
        }
        frozen = {key: v for key, v in frozen.items() if v}
        return cls(tuple(Parity(int(p)) for p in parity), frozen, realization, name)

    @classmethod
    def from_realization(cls, p: int, q: int, mats: Sequence[Mat], name: str = "") -> "SuperAlgebra":
        """Structure constants of the plus-algebra spanned by homogeneous matrices.

        Raises ValueError if the span is not closed under the super-Jordan product.
        """
        parity = []
        for M in mats:
            par = matrix_parity(p, q, M)
            if par is None:
                raise ValueError("realization matrices must be parity-homogeneous")
            parity.append(par)
        coords = _CoordinateMap(mats)
        n = p + q
        den = 1
        for M in mats:
            for x in M.entries:
                den = lcm(den, x.denominator)
        ints = np.array([[int(x * den) for x in M.entries] for M in mats], dtype=object)
        ints = ints.reshape(len(mats), n, n)
        if max((abs(int(v)) for v in ints.flat), default=0) < 2**20:
            ints = ints.astype(np.int64)
        quads = []
        pairs, prods = [], []
        for i in range(len(mats)):
            for j in range(i, len(mats)):
                xy = ints[i] @ ints[j]
                yx = ints[j] @ ints[i]
                s = _sign(parity[i], parity[j])
                pairs.append((i, j))
                prods.append((xy + s * yx).reshape(-1))  # = 2 den^2 (x∘y)
        if prods:
            C = coords.solve(np.array(prods), Fraction(1, 2 * den * den))
            for (i, j), row in zip(pairs, C):
                s = _sign(parity[i], parity[j])
                for k, c in row:
                    quads.append((i, j, k, c))
                    if i != j:
                        quads.append((j, i, k, s * c))
        real = GradedMatrixRealization(p, q, tuple(mats))
        return cls.from_quadruples(parity, quads, realization=real, name=name)

    def int_tensor(self) -> tuple[np.ndarray, int]:
        """Dense integer tensor D*c[i,j,k] and the common denominator D."""
        den = 1
        for terms in self.table.values():
            for _, c in terms:
                den = lcm(den, c.denominator)
        n = self.dim
        T = np.zeros((n, n, n), dtype=np.int64)
        for (i, j), terms in self.table.items():
            for k, c in terms:
                T[i, j, k] = int(c * den)
        return T, den

    def basis_vector(self, i: int) -> tuple:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def __repr__(self) -> str:
        e, o = self.parity_dims
        return f"SuperAlgebra({self.name or '?'}, dim={self.dim}, even={e}, odd={o})"


class _CoordinateMap:
    """Coordinates of flattened matrices with respect to a fixed independent set."""

    def __init__(self, mats: Sequence[Mat]):
        B = Mat.from_rows([M.entries for M in mats]) if mats else None
        if B is None:
            self.piv, self.inv_int, self.inv_den, self.B = [], None, 1, None
            return
        if rank(B) != len(mats):
            raise ValueError("realization matrices are linearly dependent")
        ech = Echelon(B.cols)
        piv = []
        # pick independent columns of B greedily, in column order
        for c in range(B.cols):
            if ech.add(list(B.col(c))) is not None:
                piv.append(c)
            if len(piv) == B.rows:
                break
        sub = Mat.from_rows([[B[i, c] for c in piv] for i in range(B.rows)])
        from .exact_linalg import solve_linear

        inv = solve_linear(sub, Mat.identity(B.rows))  # sub @ inv = I, so coords = v[piv] @ inv
        den = 1
        for x in inv.entries:
            den = lcm(den, x.denominator)
        self.piv = piv
        self.inv_den = den
        self.inv_int = np.array([[int(x * den) for x in inv.row(i)] for i in range(inv.rows)], dtype=object)
        self.B_den = _den(B)
        self.B = np.array([[int(x * self.B_den) for x in B.row(i)] for i in range(B.rows)], dtype=object)

    def solve(self, V: np.ndarray, scale: Fraction) -> list[list[tuple[int, Fraction]]]:
        """Sparse coordinates of each row of V (times scale); checks membership exactly."""
        V = V.astype(object)
        X = V[:, self.piv].dot(self.inv_int)  # coords * inv_den
        # membership: X @ B / (inv_den * B_den) must equal V
        back = X.dot(self.B)
        if np.any(back != V * (self.inv_den * self.B_den)):
            raise ValueError("span is not closed under the super-Jordan product")
        out = []
        for row in X:
            out.append([(k, Fraction(int(x)) / self.inv_den * scale) for k, x in enumerate(row) if x])
        return out


def _den(M: Mat) -> int:
    d = 1
    for x in M.entries:
        d = lcm(d, x.denominator)
    return d


# --- products and operators --------------------------------------------------------


def product(alg: SuperAlgebra, x: Sequence, y: Sequence) -> tuple:
    n = alg.dim
    if len(x) != n or len(y) != n:
        raise ValueError(f"coordinate vectors must have length {n}")
    out = [Fraction(0)] * n
    xs = [(i, as_rational(a)) for i, a in enumerate(x) if a]
    ys = [(j, as_rational(b)) for j, b in enumerate(y) if b]
    for i, a in xs:
        for j, b in ys:
            terms = alg.table.get((i, j))
            if terms:
                ab = a * b
                for k, c in terms:
                    out[k] += ab * c
    return tuple(out)


class _IntMul:
    """Integer-scaled product for fixpoint loops: returns den * (x∘y) for integer x, y."""

    def __init__(self, alg: SuperAlgebra):
        T, den = alg.int_tensor()
        self.n = alg.dim
        self.den = den
        self.table = {
            key: [(k, int(c * den)) for k, c in terms] for key, terms in alg.table.items()
        }

    def __call__(self, x: Sequence[int], y: Sequence[int]) -> list[int]:
        out = [0] * self.n
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in ys:
                terms = self.table.get((i, j))
                if terms:
                    ab = a * b
                    for k, c in terms:
                        out[k] += ab * c
        return out


def left_operators(alg: SuperAlgebra) -> tuple[np.ndarray, int]:
    """Integer matrices D*L_i with L_i[k, j] = c[i][j][k], and D."""
    T, den = alg.int_tensor()
    return np.transpose(T, (0, 2, 1)).copy(), den


# --- subspaces ------------------------------------------------------------------------


def _split(alg: SuperAlgebra, v: Sequence) -> list[list]:
    even = [x if alg.parity[i] == EVEN else 0 for i, x in enumerate(v)]
    odd = [x if alg.parity[i] == ODD else 0 for i, x in enumerate(v)]
    return [w for w in (even, odd) if any(w)]


def _is_homogeneous(alg: SuperAlgebra, v: Sequence) -> bool:
    return len(_split(alg, v)) <= 1


@dataclass(frozen=True, eq=False)
class Subspace:
    ambient: SuperAlgebra
    basis: Mat
    graded: bool = True

    @classmethod
    def span(cls, alg: SuperAlgebra, vectors: Iterable[Sequence], graded: bool = True) -> "Subspace":
        """Independent basis of the span; with graded=True, of the span of homogeneous parts."""
        ech = Echelon(alg.dim)
        for v in vectors:
            parts = _split(alg, v) if graded else [list(v)]
            for w in parts:
                ech.add([as_rational(x) for x in w])
        return cls(alg, ech.as_mat(), graded)

    @classmethod
    def whole(cls, alg: SuperAlgebra) -> "Subspace":
        return cls(alg, Mat.identity(alg.dim), True)

    @classmethod
    def zero(cls, alg: SuperAlgebra) -> "Subspace":
        return cls(alg, Mat(0, alg.dim, ()), True)

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> list[tuple]:
        return self.basis.row_list()

    def parity_dims(self) -> tuple[int, int]:
        e = sum(1 for v in self.vectors() if all(x == 0 for i, x in enumerate(v) if self.ambient.parity[i] == ODD))
        return e, self.dim - e

    def even_part(self) -> "Subspace":
        return Subspace.span(self.ambient, [v for v in self.vectors() if _parity_of(self.ambient, v) == EVEN])

    def odd_part(self) -> "Subspace":
        return Subspace.span(self.ambient, [v for v in self.vectors() if _parity_of(self.ambient, v) == ODD])

    def contains(self, v: Sequence) -> bool:
        ech = self._echelon()
        return ech.contains([as_rational(x) for x in v])

    def _echelon(self) -> Echelon:
        ech = Echelon(self.ambient.dim)
        for v in self.vectors():
            ech.add(list(v))
        return ech

    def same_space(self, other: "Subspace") -> bool:
        if self.dim != other.dim:
            return False
        ech = self._echelon()
        return all(ech.contains(list(v)) for v in other.vectors())

    def matrices(self) -> list[Mat]:
        real = self.ambient.realization
        if real is None:
            raise ValueError("ambient algebra has no matrix realization")
        return [real.matrix_of(v) for v in self.vectors()]


def _parity_of(alg: SuperAlgebra, v: Sequence) -> Parity | None:
    has_e = any(x for i, x in enumerate(v) if alg.parity[i] == EVEN)
    has_o = any(x for i, x in enumerate(v) if alg.parity[i] == ODD)
    if has_e and has_o:
        return None
    return ODD if has_o else EVEN


# --- axioms -------------------------------------------------------------------------


@dataclass
class AxiomReport:
    grading: list = field(default_factory=list)
    supercommutativity: list = field(default_factory=list)
    jordan_identity: list = field(default_factory=list)
    jordan_violation_count: int = 0
    triples_checked: int = 0

    @property
    def ok(self) -> bool:
        return not (self.grading or self.supercommutativity or self.jordan_violation_count)

    def summary(self) -> str:
        if self.ok:
            return f"pass ({self.triples_checked} triples)"
        return (
            f"fail: grading={len(self.grading)} supercommutativity={len(self.supercommutativity)} "
            f"jordan={self.jordan_violation_count}"
        )


def check_axioms(alg: SuperAlgebra, max_listed: int = 50) -> AxiomReport:
    """Grading, supercommutativity and the operator-form super-Jordan identity.

    The identity checked on every triple of basis elements is
    sum over cyclic (a,b,c) of (−1)^{|a||c|} [L_{a∘b}, L_c]_s = 0.
    """
    rep = AxiomReport()
    par = alg.parity
    for (i, j), terms in alg.table.items():
        for k, c in terms:
            if par[k] != (par[i] + par[j]) % 2:
                rep.grading.append((i, j, k))
            if alg.sc(j, i, k) != _sign(par[i], par[j]) * c:
                rep.supercommutativity.append((i, j, k))
        for k, c in alg.table.get((j, i), ()):
            if not any(kk == k for kk, _ in terms) and c:
                rep.supercommutativity.append((i, j, k))
    rep.supercommutativity = sorted(set(rep.supercommutativity))

    n = alg.dim
    if n == 0:
        return rep
    C, _ = alg.int_tensor()
    p = np.array([int(x) for x in par], dtype=np.int64)
    sgn = np.where(np.outer(p, p) == 1, -1, 1).astype(np.int64)
    L = np.transpose(C, (0, 2, 1))  # L[x][k, j] = C[x, j, k]
    # P[x, y] = L_x L_y
    Ls = sparse.csr_matrix(L.reshape(n * n, n))
    Lcat = np.transpose(L, (1, 0, 2)).reshape(n, n * n)  # [j, (y, k)]
    P = (Ls @ Lcat).reshape(n, n, n, n).transpose(0, 2, 1, 3)  # [x, y, i, k]
    Q = P - sgn[:, :, None, None] * P.transpose(1, 0, 2, 3)  # [k, c] super-commutator
    Qflat = Q.reshape(n, n * n * n)
    Cpair = sparse.csr_matrix(C.reshape(n * n, n))
    bound = int(np.abs(C).max()) ** 3 * n * n * 6 + 1 if C.size else 1
    if bound > 2**62:
        raise OverflowError("structure constants too large for the int64 identity check")
    listed = []
    count = 0
    for a in range(n):
        Ca = sparse.csr_matrix(C[a])  # [b, k]
        T1 = (Ca @ Qflat).reshape(n, n, n, n)  # [b, c, i, j] = sum_k C[a,b,k] Q[k,c]
        T1 = T1 * sgn[a][None, :, None, None]
        T2 = (Cpair @ Q[:, a].reshape(n, n * n)).reshape(n, n, n, n)  # [b, c]: sum_k C[b,c,k] Q[k,a]
        T2 = T2 * sgn[a][:, None, None, None]
        Cca = sparse.csr_matrix(C[:, a, :])  # [c, k]
        T3 = (Cca @ Qflat).reshape(n, n, n, n).transpose(1, 0, 2, 3)  # [b, c]
        T3 = T3 * sgn[:, :, None, None]
        tot = T1 + T2 + T3
        bad = np.argwhere(np.any(tot.reshape(n, n, -1) != 0, axis=2))
        count += len(bad)
        for b, c in bad[: max(0, max_listed - len(listed))]:
            listed.append((a, int(b), int(c)))
    rep.jordan_identity = listed
    rep.jordan_violation_count = count
    rep.triples_checked = n**3
    return rep


# --- closures ---------------------------------------------------------------------------


def _int_vec(v) -> list[int]:
    from .exact_linalg import _int_row

    return _int_row(v)


def _closure_under(alg: SuperAlgebra, seed: Iterable[Sequence], step) -> Echelon:
    """Span of seed closed under `step(new_vector, basis_list) -> iterable of vectors`."""
    ech = Echelon(alg.dim)
    queue = []
    for v in seed:
        for w in _split(alg, v):
            r = ech.add(_int_vec(w))
            if r is not None:
                queue.append(r)
    done: list[list[int]] = []
    while queue:
        v = queue.pop(0)
        done.append(v)
        for w in step(v, done):
            r = ech.add(w)
            if r is not None:
                queue.append(r)
    return ech


def graded_closure(alg: SuperAlgebra, seed: Subspace) -> Subspace:
    """Smallest graded subalgebra containing the seed."""
    mul = _IntMul(alg)

    def step(v, done):
        for u in done:
            yield mul(v, u)

    ech = _closure_under(alg, seed.vectors(), step)
    return Subspace(alg, ech.as_mat(), True)


def restrict(alg: SuperAlgebra, s: Subspace, name: str = "") -> SuperAlgebra:
    """The subsuperalgebra s as an algebra in its own right, in the basis of s.

    Raises ValueError if s is not closed.  Realized ambients keep their
    matrices, so the result is realized too.
    """
    vs = s.vectors()
    if any(_parity_of(alg, v) is None for v in vs):
        raise ValueError("basis vectors must be homogeneous")
    real = alg.realization
    if real is not None and vs:
        return SuperAlgebra.from_realization(real.block_even, real.block_odd, s.matrices(), name)
    parity = [_parity_of(alg, v) or EVEN for v in vs]
    r = len(vs)
    cols, pairs = [], []
    for i in range(r):
        for j in range(i, r):
            pairs.append((i, j))
            cols.append(product(alg, vs[i], vs[j]))
    quads = []
    if cols:
        A = s.basis.T  # n x r
        B = Mat.from_rows(cols).T  # n x #pairs
        from .exact_linalg import solve_linear

        X = solve_linear(A, B)
        if X is None:
            raise ValueError("subspace is not closed under the product")
        for c, (i, j) in enumerate(pairs):
            sgn = _sign(parity[i], parity[j])
            for k in range(r):
                x = X[k, c]
                if x:
                    quads.append((i, j, k, x))
                    if i != j:
                        quads.append((j, i, k, sgn * x))
    return SuperAlgebra.from_quadruples(parity, quads, name=name)


_COORD_CACHE: dict[int, tuple] = {}


def matrix_coordinates(alg: SuperAlgebra, mats: Sequence[Mat]) -> list[tuple]:
    """Coordinates of matrices in the realization basis of alg (ValueError if outside)."""
    real = alg.realization
    if real is None:
        raise ValueError("algebra has no matrix realization")
    hit = _COORD_CACHE.get(id(alg))
    if hit is None or hit[0] is not alg:
        hit = (alg, _CoordinateMap(list(real.basis_mats)))
        _COORD_CACHE[id(alg)] = hit
    cmap = hit[1]
    out = []
    for M in mats:
        d = _den(M)
        V = np.array([[int(x * d) for x in M.entries]], dtype=object)
        try:
            row = cmap.solve(V, Fraction(1, d))[0]
        except ValueError:
            raise ValueError("matrix lies outside the realized span") from None
        v = [Fraction(0)] * alg.dim
        for k, c in row:
            v[k] = c
        out.append(tuple(v))
    return out


def is_subsuperalgebra(alg: SuperAlgebra, s: Subspace) -> bool:
    mul = _IntMul(alg)
    ech = s._echelon()
    vs = [_int_vec(v) for v in s.vectors()]
    for v in vs:
        if _parity_of(alg, v) is None:
            return False
    for i, v in enumerate(vs):
        for u in vs[i:]:
            if not ech.contains(mul(v, u)):
                return False
    return True


def find_identity(alg: SuperAlgebra, s: Subspace) -> tuple | None:
    """The e in s with e∘x = x for every basis vector x of s, if it exists."""
    vs = s.vectors()
    if not vs:
        return None
    n = alg.dim
    # unknown coefficients a_r: sum_r a_r (v_r ∘ x) = x for each x
    rows, rhs = [], []
    for x in vs:
        prods = [product(alg, v, x) for v in vs]
        for k in range(n):
            rows.append([pv[k] for pv in prods])
            rhs.append([x[k]])
    from .exact_linalg import solve_linear

    sol = solve_linear(Mat.from_rows(rows, cols=len(vs)), Mat.from_rows(rhs, cols=1))
    if sol is None:
        return None
    e = [Fraction(0)] * n
    for a, v in zip(sol.col(0), vs):
        if a:
            e = [ei + a * vi for ei, vi in zip(e, v)]
    return tuple(e)


def annihilator(alg: SuperAlgebra, s: Subspace) -> Subspace:
    """{x : x∘y = 0 for every basis vector y of s}, via a single kernel."""
    n = alg.dim
    vs = s.vectors()
    if not vs:
        return Subspace.whole(alg)
    rows = []
    for y in vs:
        cols = [product(alg, alg.basis_vector(i), y) for i in range(n)]
        for k in range(n):
            rows.append([cols[i][k] for i in range(n)])
    K = kernel_basis(Mat.from_rows(rows, cols=n))
    return Subspace.span(alg, [K.col(j) for j in range(K.cols)], graded=True)


def ideal_generated(alg: SuperAlgebra, elements: Iterable[Sequence]) -> Subspace:
    """Smallest graded ideal containing the homogeneous parts of the elements."""
    mul = _IntMul(alg)
    basis = [[int(i == k) for k in range(alg.dim)] for i in range(alg.dim)]

    def step(v, done):
        for b in basis:
            yield mul(b, v)

    ech = _closure_under(alg, elements, step)
    return Subspace(alg, ech.as_mat(), True)


# --- simplicity -------------------------------------------------------------------------

# Residues are held in float64: with p < 2**20 every dot product of length
# up to 2**12 is an exact integer below 2**53.
BURNSIDE_PRIME = 1048573


@dataclass
class SimplicityVerdict:
    kind: str  # "Simple" | "NotSimple" | "Inconclusive"
    witness: Mat | None = None
    burnside_dim: int | None = None
    reason: str = ""
    seed: int | None = None
    prime: int | None = None

    def recheck(self, alg: SuperAlgebra) -> bool:
        """Re-validate a NotSimple witness: graded, proper, nonzero, invariant."""
        if self.kind != "NotSimple":
            return True
        if self.witness is None:
            return all(not any(product(alg, alg.basis_vector(i), alg.basis_vector(j)))
                       for i in range(alg.dim) for j in range(alg.dim))
        W = Subspace(alg, self.witness)
        if not 0 < W.dim < alg.dim or rank(self.witness) != W.dim:
            return False
        if any(_parity_of(alg, v) is None for v in W.vectors()):
            return False
        return all(W.contains(product(alg, alg.basis_vector(i), v)) for i in range(alg.dim) for v in W.vectors())


class _ModSpan:
    """Row-reduced span of residue vectors mod p, kept in reduced echelon form."""

    CHUNK = 32

    def __init__(self, width: int, prime: int):
        self.p = float(prime)
        self.prime = prime
        self.basis = np.zeros((0, width))
        self.pivots: list[int] = []

    def __len__(self):
        return len(self.pivots)

    def _reduce(self, V: np.ndarray) -> np.ndarray:
        p = self.p
        if self.pivots:
            V = np.mod(V - V[:, self.pivots] @ self.basis, p)
        return V

    def _absorb(self, V: np.ndarray) -> np.ndarray:
        p, prime = self.p, self.prime
        V = self._reduce(np.mod(V, p))
        cols: list[int] = []
        for i in range(V.shape[0]):
            nz = np.flatnonzero(V[i])
            if nz.size == 0:
                continue
            c = int(nz[0])
            V[i] = np.mod(V[i] * pow(int(V[i, c]), -1, prime), p)
            f = V[:, c].copy()
            f[i] = 0
            V = np.mod(V - np.outer(f, V[i]), p)
            cols.append(c)
        W = V[[i for i in range(V.shape[0]) if V[i].any()]]
        if not cols:
            return W
        if self.pivots:
            self.basis = np.mod(self.basis - self.basis[:, cols] @ W, p)
        self.basis = np.vstack([self.basis, W])
        self.pivots.extend(cols)
        return W

    def add_batch(self, V: np.ndarray) -> np.ndarray:
        """Insert the rows of V; return the rows that were new, in reduced form."""
        out = [self._absorb(V[i:i + self.CHUNK].astype(float)) for i in range(0, V.shape[0], self.CHUNK)]
        return np.vstack(out) if out else np.zeros((0, V.shape[1]))


def _generated_dim(gens: list[np.ndarray], n: int, prime: int) -> int:
    """Dimension mod prime of the unital algebra generated by gens (n x n)."""
    N = n * n
    span = _ModSpan(N, prime)
    gens = [np.mod(g, prime).astype(float) for g in gens]
    frontier = span.add_batch(np.eye(n).reshape(1, N))
    while frontier.shape[0] and len(span) < N:
        X = frontier.reshape(-1, n, n)
        cand = np.concatenate([np.mod(np.matmul(g, X), prime) for g in gens]).reshape(-1, N)
        frontier = span.add_batch(cand)
    return len(span)


def _burnside_dim(alg: SuperAlgebra, prime: int = BURNSIDE_PRIME, seed: int = 0) -> int:
    """Dimension mod `prime` of the unital algebra generated by the L_i and the parity operator.

    Over Q the dimension is at least this number, so reaching dim**2 certifies
    an absolutely irreducible action.  Two random combinations of the L_i are
    tried first (alone, then with the parity operator) since they usually
    generate everything and keep the search cheap.
    """
    n = alg.dim
    L, _ = left_operators(alg)
    L = L % prime
    par = np.diag([1 if q == EVEN else prime - 1 for q in alg.parity]).astype(np.int64)
    rng = np.random.default_rng(seed)
    mixed = [np.tensordot(rng.integers(-3, 4, size=n), L, axes=1) % prime for _ in range(2)]
    d = _generated_dim(mixed, n, prime)
    if d < n * n:
        d = _generated_dim(mixed + [par], n, prime)
    if d < n * n:
        d = _generated_dim([g for g in L if np.any(g)] + [par], n, prime)
    return d


def _commutant_ideal(alg: SuperAlgebra, seed: int = 0, max_dim: int = 16) -> Mat | None:
    """A proper graded ideal read off a rational eigenspace of the commutant, if one shows up.

    Operators commuting with every L_x and with the parity operator have
    graded eigenspaces that are invariant under all L_x, hence ideals.
    """
    n = alg.dim
    if n > max_dim:
        return None
    L, _ = left_operators(alg)
    unknowns = [(r, c) for r in range(n) for c in range(n) if alg.parity[r] == alg.parity[c]]
    col = {rc: t for t, rc in enumerate(unknowns)}
    rows = []
    for Li in L:
        if not Li.any():
            continue
        for r in range(n):
            for c in range(n):
                row = [0] * len(unknowns)
                for k in range(n):
                    if Li[r, k] and (k, c) in col:
                        row[col[(k, c)]] += int(Li[r, k])
                    if Li[k, c] and (r, k) in col:
                        row[col[(r, k)]] -= int(Li[k, c])
                if any(row):
                    rows.append(row)
    K = kernel_basis(Mat.from_rows(rows, cols=len(unknowns))) if rows else Mat.identity(len(unknowns))
    if K.cols <= 1:
        return None
    rng = random.Random(seed)
    basis = [K.col(j) for j in range(K.cols)]
    for _ in range(4):
        w = [rng.randint(-3, 3) for _ in basis]
        C = sympy.zeros(n, n)
        for t, (r, c) in enumerate(unknowns):
            C[r, c] = sum(sympy.Rational(x.numerator, x.denominator) * wj
                          for wj, b in zip(w, basis) for x in [b[t]])
        if C.is_diagonal() and len(set(C.diagonal())) <= 1:
            continue
        lam = sympy.Symbol("lam")
        for fac, _ in sympy.factor_list(C.charpoly(lam).as_expr(), lam)[1]:
            if sympy.degree(fac, lam) != 1:
                continue
            root = sympy.solve(fac, lam)[0]
            E = (C - root * sympy.eye(n)).nullspace()
            if 0 < len(E) < n:
                return Mat.from_rows([[Fraction(str(x)) for x in v] for v in E])
    return None


def is_simple(alg: SuperAlgebra, random_trials: int = 4, seed: int = 0) -> SimplicityVerdict:
    """Graded simplicity: spin for ideals, try a Burnside certificate, then the commutant."""
    n = alg.dim
    if n == 0 or not any(c for terms in alg.table.values() for _, c in terms):
        return SimplicityVerdict("NotSimple", None, reason="zero multiplication", seed=seed)
    for i in range(n):
        I = ideal_generated(alg, [alg.basis_vector(i)])
        if 0 < I.dim < n:
            return SimplicityVerdict("NotSimple", I.basis, reason=f"ideal generated by basis {i}", seed=seed)
    rng = random.Random(seed)
    for t in range(random_trials):
        for idx in (alg.even_indices, alg.odd_indices):
            if not idx:
                continue
            v = [0] * n
            for i in idx:
                v[i] = rng.randint(-3, 3)
            if not any(v):
                continue
            I = ideal_generated(alg, [v])
            if 0 < I.dim < n:
                return SimplicityVerdict("NotSimple", I.basis, reason=f"ideal from random trial {t}", seed=seed)
    d = _burnside_dim(alg, seed=seed)
    if d == n * n:
        return SimplicityVerdict("Simple", None, burnside_dim=d, reason="Burnside", seed=seed, prime=BURNSIDE_PRIME)
    W = _commutant_ideal(alg, seed)
    if W is not None:
        return SimplicityVerdict("NotSimple", W, burnside_dim=d, reason="commutant eigenspace", seed=seed,
                                 prime=BURNSIDE_PRIME)
    return SimplicityVerdict("Inconclusive", None, burnside_dim=d, reason="operator algebra too small", seed=seed,
                             prime=BURNSIDE_PRIME)


# --- associative envelope ---------------------------------------------------------------


def associative_envelope(real: GradedMatrixRealization | None, s: Subspace) -> Echelon:
    """Span of all associative products of the realised matrices of s (no unit adjoined)."""
    if real is None:
        raise ValueError("associative envelope needs a matrix realization")
    n = real.size
    mats = [real.matrix_of(v) for v in s.vectors()]
    ech = Echelon(n * n)
    queue = []
    for M in mats:
        r = ech.add(list(M.entries))
        if r is not None:
            queue.append(np.array(r, dtype=object).reshape(n, n))
    done: list[np.ndarray] = []
    while queue:
        X = queue.pop(0)
        done.append(X)
        for Y in list(done):
            for Z in (X.dot(Y), Y.dot(X)):
                r = ech.add([int(z) for z in Z.reshape(-1)])
                if r is not None:
                    queue.append(np.array(r, dtype=object).reshape(n, n))
    return ech


# --- rank datum -------------------------------------------------------------------------


def orthogonal_idempotent_count(alg: SuperAlgebra, s: Subspace | None = None) -> int:
    """Heuristic rank: number of pairwise orthogonal idempotents among the basis vectors.

    Only basis-expressible idempotents are considered, so this is a lower
    bound for any reasonable notion of rank.
    """
    vs = (s or Subspace.whole(alg)).vectors()
    idem = [v for v in vs if _parity_of(alg, v) == EVEN and any(v) and product(alg, v, v) == tuple(v)]
    best: list = []
    for v in idem:
        if all(not any(product(alg, v, u)) for u in best):
            best.append(v)
    return len(best)
