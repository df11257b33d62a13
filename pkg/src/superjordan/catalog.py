"""Builders for the seven families of simple special Jordan superalgebras.

Basis order is always even elements first, then odd; inside the matrix
families the generators follow the lexicographic order of matrix units.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact_linalg import Mat, parse_rational, rational_str
from .superalgebra import EVEN, ODD, SuperAlgebra

__all__ = [
    "FamilySpec",
    "InvalidParameters",
    "SpecParseError",
    "parse_spec",
    "build",
    "build_full_matrix_super",
    "build_osp",
    "build_P",
    "build_Q",
    "build_JVf",
    "build_K3",
    "build_Dt",
    "family_dims",
    "EnvelopingFact",
    "enveloping_fact",
    "symplectic_form",
]

FAMILIES = ("M", "osp", "P", "Q", "JVf", "K3", "Dt")


class SpecParseError(ValueError):
    pass


class InvalidParameters(ValueError):
    pass


@dataclass(frozen=True, order=True)
class FamilySpec:
    family: str
    params: tuple = ()

    def __str__(self) -> str:
        if self.family == "K3":
            return "K3"
        if self.family == "Dt":
            # no parameter: the generic member, used as a screening pattern
            return f"Dt({rational_str(self.params[0])})" if self.params else "Dt(t)"
        return f"{self.family}({','.join(str(p) for p in self.params)})"

    @property
    def t(self) -> Fraction:
        return self.params[0]

    def validate(self, strict: bool = True) -> "FamilySpec":
        f, p = self.family, self.params
        if f not in FAMILIES:
            raise InvalidParameters(f"unknown family {f!r}")
        lo = 1 if strict else 0
        if f in ("M", "osp"):
            if len(p) != 2 or min(p) < lo or sum(p) < 1:
                raise InvalidParameters(f"{self}: parameters must be >= {lo}")
        elif f in ("P", "Q"):
            if len(p) != 1 or p[0] < 1:
                raise InvalidParameters(f"{self}: n must be >= 1")
        elif f == "JVf":
            if len(p) != 2 or min(p) < 0 or p[0] + 2 * p[1] < 1:
                raise InvalidParameters(f"{self}: need m0 + 2*n1 >= 1")
        elif f == "Dt":
            if len(p) != 1:
                raise InvalidParameters("Dt takes one rational parameter")
        elif p:
            raise InvalidParameters("K3 takes no parameters")
        return self


_SPEC_RE = re.compile(r"^\s*([A-Za-z]+[0-9]?)\s*(?:\(([^)]*)\))?\s*$")


def parse_spec(text: str) -> FamilySpec:
    m = _SPEC_RE.match(text)
    if not m:
        raise SpecParseError(f"cannot parse family spec {text!r}")
    name, args = m.group(1), m.group(2)
    canon = {"m": "M", "osp": "osp", "p": "P", "q": "Q", "jvf": "JVf", "k3": "K3", "dt": "Dt", "d": "Dt"}
    fam = canon.get(name.lower())
    if fam is None:
        raise SpecParseError(f"unknown family {name!r}")
    if fam == "K3":
        if args:
            raise SpecParseError("K3 takes no arguments")
        return FamilySpec("K3")
    if args is None:
        raise SpecParseError(f"{fam} needs parameters")
    parts = [a.strip() for a in args.split(",")]
    try:
        if fam == "Dt":
            if len(parts) != 1:
                raise SpecParseError("Dt takes one parameter")
            return FamilySpec("Dt", (parse_rational(parts[0]),))
        vals = tuple(int(a) for a in parts)
    except ValueError as exc:
        raise SpecParseError(str(exc)) from exc
    want = 1 if fam in ("P", "Q") else 2
    if len(vals) != want:
        raise SpecParseError(f"{fam} takes {want} integer parameter(s)")
    return FamilySpec(fam, vals)


def family_dims(spec: FamilySpec) -> tuple[int, int]:
    """(even dim, odd dim) from the closed formulas, without building."""
    f, p = spec.family, spec.params
    if f == "M":
        n, m = p
        return n * n + m * m, 2 * n * m
    if f == "osp":
        n, m = p
        return n * (n + 1) // 2 + m * (2 * m - 1), 2 * n * m
    if f in ("P", "Q"):
        return p[0] ** 2, p[0] ** 2
    if f == "JVf":
        return 1 + p[0], 2 * p[1]
    if f == "K3":
        return 1, 2
    if f == "Dt":
        return 2, 2
    raise InvalidParameters(f"unknown family {f!r}")


# --- matrix helpers --------------------------------------------------------------


def _E(N: int, i: int, j: int, c=1) -> dict:
    return {(i, j): Fraction(c)}


def _mat(N: int, entries: dict) -> Mat:
    e = [Fraction(0)] * (N * N)
    for (i, j), c in entries.items():
        e[i * N + j] += c
    return Mat(N, N, tuple(e))


def _plus(*ds: dict) -> dict:
    out: dict = {}
    for d in ds:
        for k, v in d.items():
            out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def symplectic_form(m: int) -> Mat:
    """S = [[0, I], [-I, 0]] of order 2m."""
    rows = [[0] * (2 * m) for _ in range(2 * m)]
    for i in range(m):
        rows[i][m + i] = 1
        rows[m + i][i] = -1
    return Mat.from_rows(rows)


# --- builders ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def build_full_matrix_super(n: int, m: int, strict: bool = True) -> SuperAlgebra:
    FamilySpec("M", (n, m)).validate(strict)
    N = n + m
    even, odd = [], []
    for i in range(N):
        for j in range(N):
            (even if (i < n) == (j < n) else odd).append(_mat(N, _E(N, i, j)))
    return SuperAlgebra.from_realization(n, m, even + odd, name=f"M({n},{m})")


def _osp_mats(n: int, m: int, off: int = 0, N: int | None = None) -> tuple[list[Mat], list[Mat]]:
    """Even and odd basis matrices of osp(n, m) in blocks (n, 2m), optionally shifted."""
    N = N if N is not None else n + 2 * m
    q = 2 * m
    even, odd = [], []
    for i in range(n):
        for j in range(i, n):
            d = _E(N, i, j) if i == j else _plus(_E(N, i, j), _E(N, j, i))
            even.append(_mat(N, d))
    # D = S^{-1} K with K skew; S^{-1} = -S = [[0, -I], [I, 0]]
    Sinv = {}
    for i in range(m):
        Sinv[(i, m + i)] = Fraction(-1)
        Sinv[(m + i, i)] = Fraction(1)
    for a in range(q):
        for b in range(a + 1, q):
            K = {(a, b): Fraction(1), (b, a): Fraction(-1)}
            D = {}
            for (r, s), c in Sinv.items():
                for (s2, t), c2 in K.items():
                    if s == s2:
                        D[(n + r, n + t)] = D.get((n + r, n + t), 0) + c * c2
            even.append(_mat(N, {k: v for k, v in D.items() if v}))
    for i in range(n):
        for j in range(q):
            # top-right C = E_ij, bottom-left S^{-1} C^t
            d = {(i, n + j): Fraction(1)}
            for (r, s), c in Sinv.items():
                if s == j:
                    d[(n + r, i)] = d.get((n + r, i), 0) + c
            odd.append(_mat(N, d))
    return even, odd


@lru_cache(maxsize=None)
def build_osp(n: int, m: int) -> SuperAlgebra:
    FamilySpec("osp", (n, m)).validate(True)
    even, odd = _osp_mats(n, m)
    return SuperAlgebra.from_realization(n, 2 * m, even + odd, name=f"osp({n},{m})")


@lru_cache(maxsize=None)
def build_P(n: int) -> SuperAlgebra:
    FamilySpec("P", (n,)).validate()
    N = 2 * n
    even = [_mat(N, _plus(_E(N, i, j), _E(N, n + j, n + i))) for i in range(n) for j in range(n)]
    odd = []
    for i in range(n):
        for j in range(i, n):
            odd.append(_mat(N, _E(N, i, n + i) if i == j else _plus(_E(N, i, n + j), _E(N, j, n + i))))
    for i in range(n):
        for j in range(i + 1, n):
            odd.append(_mat(N, _plus(_E(N, n + i, j), _E(N, n + j, i, -1))))
    return SuperAlgebra.from_realization(n, n, even + odd, name=f"P({n})")


@lru_cache(maxsize=None)
def build_Q(n: int) -> SuperAlgebra:
    FamilySpec("Q", (n,)).validate()
    N = 2 * n
    even = [_mat(N, _plus(_E(N, i, j), _E(N, n + i, n + j))) for i in range(n) for j in range(n)]
    odd = [_mat(N, _plus(_E(N, i, n + j), _E(N, n + i, j))) for i in range(n) for j in range(n)]
    return SuperAlgebra.from_realization(n, n, even + odd, name=f"Q({n})")


@lru_cache(maxsize=None)
def build_JVf(m0: int, n1: int) -> SuperAlgebra:
    """Unit, then an orthonormal even basis, then symplectic pairs v_i, w_i."""
    FamilySpec("JVf", (m0, n1)).validate()
    dim = 1 + m0 + 2 * n1
    parity = [EVEN] * (1 + m0) + [ODD] * (2 * n1)
    quads = []
    for k in range(dim):
        quads.append((0, k, k, 1))
        if k:
            quads.append((k, 0, k, 1))
    for i in range(1, 1 + m0):
        quads.append((i, i, 0, 1))
    for r in range(n1):
        v, w = 1 + m0 + 2 * r, 2 + m0 + 2 * r
        quads.append((v, w, 0, 1))
        quads.append((w, v, 0, -1))
    return SuperAlgebra.from_quadruples(parity, quads, name=f"JVf({m0},{n1})")


@lru_cache(maxsize=None)
def build_K3() -> SuperAlgebra:
    e, x, y = 0, 1, 2
    half = Fraction(1, 2)
    quads = [(e, e, e, 1), (e, x, x, half), (x, e, x, half), (e, y, y, half), (y, e, y, half),
             (x, y, e, 1), (y, x, e, -1)]
    return SuperAlgebra.from_quadruples([EVEN, ODD, ODD], quads, name="K3")


@lru_cache(maxsize=None)
def build_Dt(t) -> SuperAlgebra:
    t = Fraction(t)
    e1, e2, x, y = 0, 1, 2, 3
    half = Fraction(1, 2)
    quads = [(e1, e1, e1, 1), (e2, e2, e2, 1)]
    for e in (e1, e2):
        for o in (x, y):
            quads += [(e, o, o, half), (o, e, o, half)]
    quads += [(x, y, e1, 1), (x, y, e2, t), (y, x, e1, -1), (y, x, e2, -t)]
    return SuperAlgebra.from_quadruples([EVEN, EVEN, ODD, ODD], quads, name=f"Dt({rational_str(t)})")


def build(spec: FamilySpec | str, strict: bool = True) -> SuperAlgebra:
    if isinstance(spec, str):
        spec = parse_spec(spec)
    spec.validate(strict)
    f, p = spec.family, spec.params
    if f == "M":
        return build_full_matrix_super(p[0], p[1], strict)
    if f == "osp":
        return build_osp(*p)
    if f == "P":
        return build_P(p[0])
    if f == "Q":
        return build_Q(p[0])
    if f == "JVf":
        return build_JVf(*p)
    if f == "K3":
        return build_K3()
    return build_Dt(p[0])


# --- enveloping algebras ---------------------------------------------------------------


@dataclass(frozen=True)
class EnvelopingFact:
    spec: FamilySpec
    kind: str  # "simple" | "two-copies" | "special"
    matrix_size: int | None
    dim: int | None
    description: str


def enveloping_fact(spec: FamilySpec) -> EnvelopingFact:
    """Shape of the universal associative enveloping superalgebra.

    Families outside the finite-dimensional table get kind "special"
    (infinite-dimensional envelope, or none finite-dimensional at all).
    """
    f, p = spec.family, spec.params
    if f == "M" and tuple(p) != (1, 1):
        k, l = p
        s = k + l
        return EnvelopingFact(spec, "two-copies", s, 2 * s * s, f"M_{s}(F) + M_{s}(F)")
    if f == "Q" and p[0] >= 2:
        k = p[0]
        return EnvelopingFact(spec, "two-copies", 2 * k, 4 * k * k, f"Q({k}) + Q({k})")
    if f == "osp" and tuple(p) != (1, 1):
        m, n = p
        s = m + 2 * n
        return EnvelopingFact(spec, "simple", s, s * s, f"M_{s}(F)")
    if f == "P" and p[0] >= 3:
        s = 2 * p[0]
        return EnvelopingFact(spec, "simple", s, s * s, f"M_{s}(F)")
    return EnvelopingFact(spec, "special", None, None, "infinite-dimensional or no finite-dimensional specialization")
