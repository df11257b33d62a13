"""Graded homomorphisms between small superalgebras, by Groebner bases."""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

import sympy

from ..catalog import build_Dt, build_full_matrix_super
from ..exact_linalg import Mat, rank
from ..superalgebra import SuperAlgebra, product

__all__ = [
    "multiplicativity_equations",
    "embedding_exists",
    "solve_graded_isomorphism",
    "is_graded_homomorphism",
    "DMINUS1_WITNESS",
    "verify_Dminus1_iso",
]


def _unknowns(source: SuperAlgebra, target: SuperAlgebra, fixed: dict | None = None):
    """Symbolic images: phi[i] is a vector over target coordinates of matching parity."""
    fixed = fixed or {}
    syms = []
    phi = []
    for i, p in enumerate(source.parity):
        if i in fixed:
            phi.append([sympy.Rational(str(x)) for x in fixed[i]])
            continue
        row = []
        for k, q in enumerate(target.parity):
            if q == p:
                s = sympy.Symbol(f"a{i}_{k}")
                syms.append(s)
                row.append(s)
            else:
                row.append(sympy.Integer(0))
        phi.append(row)
    return phi, syms


def _sym_product(alg: SuperAlgebra, x, y):
    out = [sympy.Integer(0)] * alg.dim
    for (i, j), terms in alg.table.items():
        if x[i] == 0 or y[j] == 0:
            continue
        xy = x[i] * y[j]
        for k, c in terms:
            out[k] += sympy.Rational(c.numerator, c.denominator) * xy
    return out


def multiplicativity_equations(source: SuperAlgebra, target: SuperAlgebra, phi) -> list:
    eqs = []
    for i in range(source.dim):
        for j in range(i, source.dim):
            lhs = _sym_product(target, phi[i], phi[j])
            rhs = [sympy.Integer(0)] * target.dim
            for k, c in source.table.get((i, j), ()):
                rc = sympy.Rational(c.numerator, c.denominator)
                rhs = [r + rc * v for r, v in zip(rhs, phi[k])]
            eqs.extend(sympy.expand(a - b) for a, b in zip(lhs, rhs))
    return [e for e in eqs if e != 0]


def _consistent(eqs: list, syms: list) -> bool:
    if not eqs:
        return True
    G = sympy.groebner(eqs, *syms, order="grevlex", domain="QQ")
    return not (len(G.exprs) == 1 and G.exprs[0] == 1)


def embedding_exists(source: SuperAlgebra, target: SuperAlgebra) -> bool:
    """Whether a nonzero graded homomorphism source -> target exists.

    For a simple source a nonzero homomorphism is injective, so this decides
    whether source embeds.  Nonzero is imposed as phi(b0)_k * z = 1 for some
    coordinate k of the first basis vector's image.
    """
    phi, syms = _unknowns(source, target)
    eqs = multiplicativity_equations(source, target, phi)
    z = sympy.Symbol("z")
    for k, v in enumerate(phi[0]):
        if v == 0:
            continue
        if _consistent(eqs + [v * z - 1], syms + [z]):
            return True
    return False


def _matrix_of_map(phi) -> Mat:
    return Mat.from_rows([[Fraction(str(sympy.nsimplify(v))) for v in row] for row in phi])


def is_graded_homomorphism(source: SuperAlgebra, target: SuperAlgebra, rows: Mat) -> bool:
    """Exact re-multiplication check for the linear map sending basis i to rows.row(i)."""
    imgs = rows.row_list()
    for i, p in enumerate(source.parity):
        for k, q in enumerate(target.parity):
            if q != p and imgs[i][k]:
                return False
    for i in range(source.dim):
        for j in range(source.dim):
            lhs = product(target, imgs[i], imgs[j])
            rhs = [Fraction(0)] * target.dim
            for k, c in source.table.get((i, j), ()):
                rhs = [r + c * v for r, v in zip(rhs, imgs[k])]
            if tuple(lhs) != tuple(rhs):
                return False
    return True


def solve_graded_isomorphism(source: SuperAlgebra, target: SuperAlgebra,
                             fixed: dict | None = None) -> Mat | None:
    """A rational graded isomorphism source -> target, or None if the system is inconsistent.

    `fixed` pins images of chosen basis vectors (e.g. idempotents).  Free
    parameters left by the solver are set to small integers until the map is
    invertible.
    """
    if source.dim != target.dim or source.parity_dims != target.parity_dims:
        return None
    phi, syms = _unknowns(source, target, fixed)
    eqs = multiplicativity_equations(source, target, phi)
    # invertibility via Rabinowitsch: det * z = 1
    z = sympy.Symbol("z")
    det = sympy.Matrix(phi).det()
    if not _consistent(eqs + [sympy.expand(det * z - 1)], syms + [z]):
        return None
    sols = sympy.solve(eqs, syms, dict=True) if eqs else [{}]
    for sol in sols:
        free = sorted({s for s in syms if s not in sol}, key=str)
        for vals in itertools.product([1, 2, -1, 3], repeat=len(free)):
            sub = dict(zip(free, vals))
            full = {s: sympy.sympify(sol.get(s, s)).subs(sub) for s in syms}
            cand = [[sympy.sympify(v).subs(full) for v in row] for row in phi]
            if any(not sympy.sympify(v).is_rational for row in cand for v in row):
                continue
            M = _matrix_of_map(cand)
            if rank(M) == source.dim and is_graded_homomorphism(source, target, M):
                return M
            if not free:
                break
    return None


# Images of e1, e2, x, y of D_{-1} in the basis E11, E22, E12, E21 of M(1,1),
# produced by solve_graded_isomorphism with e1 -> E11 and e2 -> E22 pinned.
DMINUS1_WITNESS = (
    ("1", "0", "0", "0"),
    ("0", "1", "0", "0"),
    ("0", "0", "3", "1"),
    ("0", "0", "1", "1"),
)


@lru_cache(maxsize=None)
def _witness() -> Mat:
    return Mat.from_nested([list(r) for r in DMINUS1_WITNESS])


def verify_Dminus1_iso() -> bool:
    """Re-multiply the stored witness: a bijective graded map D_{-1} -> M(1,1)."""
    D = build_Dt(Fraction(-1))
    M11 = build_full_matrix_super(1, 1)
    W = _witness()
    return rank(W) == 4 and is_graded_homomorphism(D, M11, W)
