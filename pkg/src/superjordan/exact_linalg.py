"""Exact rational matrices.

Scalars are :class:`fractions.Fraction`.  Elimination is done fraction-free
(Bareiss) on integer-scaled rows, pivoting on the first nonzero entry in
column order, so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

__all__ = [
    "Rational",
    "Mat",
    "as_rational",
    "rational_str",
    "parse_rational",
    "mat_mul",
    "rank",
    "solve_linear",
    "kernel_basis",
    "rowspace_intersection",
    "rowspace_sum",
    "rref",
    "Echelon",
    "DimensionError",
]

Rational = Fraction


class DimensionError(ValueError):
    """Raised when matrix shapes are not conformable."""


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact scalars")
    return Fraction(x)


def rational_str(x: Fraction) -> str:
    """Canonical text form: "p/q", or "p" when q == 1."""
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        p, q = s.split("/", 1)
        q = int(q)
        if q == 0:
            raise ValueError(f"zero denominator in {s!r}")
        return Fraction(int(p), q)
    return Fraction(int(s))


@dataclass(frozen=True)
class Mat:
    """Immutable dense matrix of Fractions, stored row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Mat":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise DimensionError("column count needed for an empty matrix")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        return cls(len(rows), cols, tuple(as_rational(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    @classmethod
    def unit(cls, rows: int, cols: int, i: int, j: int) -> "Mat":
        e = [Fraction(0)] * (rows * cols)
        e[i * cols + j] = Fraction(1)
        return cls(rows, cols, tuple(e))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_list(self) -> list[tuple]:
        return [self.row(i) for i in range(self.rows)]

    def col(self, j: int) -> tuple:
        return self.entries[j :: self.cols]

    @property
    def T(self) -> "Mat":
        return Mat(
            self.cols,
            self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def flat(self) -> tuple:
        return self.entries

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __add__(self, other: "Mat") -> "Mat":
        _same_shape(self, other)
        return Mat(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Mat") -> "Mat":
        _same_shape(self, other)
        return Mat(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Mat":
        return Mat(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> "Mat":
        c = as_rational(c)
        return Mat(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other: "Mat") -> "Mat":
        return mat_mul(self, other)

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Mat":
        return Mat.from_rows([self.row(i)[c0:c1] for i in range(r0, r1)], cols=c1 - c0)

    def vstack(self, other: "Mat") -> "Mat":
        if self.cols != other.cols:
            raise DimensionError("column counts differ")
        return Mat(self.rows + other.rows, self.cols, self.entries + other.entries)

    def to_nested(self) -> list[list[str]]:
        return [[rational_str(x) for x in self.row(i)] for i in range(self.rows)]

    @classmethod
    def from_nested(cls, data, cols: int | None = None) -> "Mat":
        return cls.from_rows([[parse_rational(str(x)) for x in r] for r in data], cols=cols)

    def __repr__(self) -> str:
        return f"Mat({self.rows}x{self.cols}, {self.to_nested()})"


def _same_shape(a: Mat, b: Mat) -> None:
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise DimensionError(f"shape {a.rows}x{a.cols} vs {b.rows}x{b.cols}")


def mat_mul(a: Mat, b: Mat) -> Mat:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    bcols = [b.col(j) for j in range(b.cols)]
    out = []
    for i in range(a.rows):
        r = a.row(i)
        nz = [(k, x) for k, x in enumerate(r) if x]
        for c in bcols:
            out.append(sum((x * c[k] for k, x in nz), Fraction(0)))
    return Mat(a.rows, b.cols, tuple(out))


# --- integer scaling ---------------------------------------------------------


def _primitive(v: list[int]) -> list[int]:
    g = 0
    for x in v:
        if x:
            g = gcd(g, x)
            if g == 1:
                return v
    if g > 1:
        return [x // g for x in v]
    return v


def _int_row(row: Iterable) -> list[int]:
    row = [as_rational(x) for x in row]
    d = 1
    for x in row:
        if x.denominator != 1:
            d = lcm(d, x.denominator)
    return [int(x * d) for x in row]


def _bareiss(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free forward elimination. Returns echelon rows and pivot columns."""
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        pr = m[r]
        for i in range(r + 1, nrows):
            mi = m[i]
            f = mi[c]
            # exact division by the previous pivot is guaranteed by Sylvester's identity
            m[i] = [(piv * mi[j] - f * pr[j]) // prev for j in range(ncols)]
        prev = piv
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(m: Mat) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    _, piv = _bareiss([_int_row(m.row(i)) for i in range(m.rows)], m.cols)
    return len(piv)


def rref(m: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    if m.rows == 0:
        return Mat(0, m.cols, ()), []
    ech, piv = _bareiss([_int_row(m.row(i)) for i in range(m.rows)], m.cols)
    rows = [[Fraction(x) for x in r] for r in ech]
    for k in range(len(rows) - 1, -1, -1):
        c = piv[k]
        inv = 1 / rows[k][c]
        rows[k] = [x * inv for x in rows[k]]
        for i in range(k):
            f = rows[i][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[k])]
    return Mat(len(rows), m.cols, tuple(x for r in rows for x in r)), piv


def solve_linear(a: Mat, b: Mat) -> Mat | None:
    """Some X with a @ X == b, or None when the system is inconsistent."""
    if a.rows != b.rows:
        raise DimensionError("a and b must have the same number of rows")
    aug = Mat.from_rows(
        [list(a.row(i)) + list(b.row(i)) for i in range(a.rows)], cols=a.cols + b.cols
    ) if a.rows else Mat(0, a.cols + b.cols, ())
    R, piv = rref(aug)
    if any(p >= a.cols for p in piv):
        return None
    X = [[Fraction(0)] * b.cols for _ in range(a.cols)]
    for k, p in enumerate(piv):
        X[p] = list(R.row(k)[a.cols :])
    return Mat.from_rows(X, cols=b.cols) if a.cols else Mat(0, b.cols, ())


def kernel_basis(m: Mat) -> Mat:
    """Columns of the result span the right null space of m."""
    R, piv = rref(m)
    free = [j for j in range(m.cols) if j not in set(piv)]
    cols = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for k, p in enumerate(piv):
            v[p] = -R[k, f]
        cols.append(v)
    if not cols:
        return Mat(m.cols, 0, ())
    return Mat.from_rows(cols).T


def rowspace_sum(a: Mat, b: Mat) -> Mat:
    if a.cols != b.cols:
        raise DimensionError("column counts differ")
    R, _ = rref(a.vstack(b))
    return R


def rowspace_intersection(a: Mat, b: Mat) -> Mat:
    """Basis (as rows) of rowspace(a) ∩ rowspace(b)."""
    if a.cols != b.cols:
        raise DimensionError("column counts differ")
    A, _ = rref(a)
    B, _ = rref(b)
    if A.rows == 0 or B.rows == 0:
        return Mat(0, a.cols, ())
    # x A = y B  <=>  [x, -y] [A; B] = 0
    K = kernel_basis(A.vstack(B).T)
    if K.cols == 0:
        return Mat(0, a.cols, ())
    coeffs = Mat.from_rows([K.col(j)[: A.rows] for j in range(K.cols)], cols=A.rows)
    out, _ = rref(mat_mul(coeffs, A))
    return out


class Echelon:
    """Incrementally grown span of integer vectors.

    Rows are kept primitive and fully reduced at each other's pivots, so
    membership tests are one pass.  Used by all the fixpoint closures; not
    shared across threads.
    """

    def __init__(self, width: int):
        self.width = width
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: list[int]) -> list[int]:
        v = list(v)
        for r, p in zip(self.rows, self.pivots):
            f = v[p]
            if f:
                a = r[p]
                g = gcd(a, f)
                a, f = a // g, f // g
                v = [a * x - f * y for x, y in zip(v, r)]
        return _primitive(v)

    def add(self, v) -> list[int] | None:
        """Add v (ints or rationals); return the new reduced row or None if dependent."""
        if v and not isinstance(v[0], int):
            v = _int_row(v)
        w = self.reduce(v)
        p = next((i for i, x in enumerate(w) if x), None)
        if p is None:
            return None
        if w[p] < 0:
            w = [-x for x in w]
        for i, r in enumerate(self.rows):
            f = r[p]
            if f:
                g = gcd(w[p], f)
                a, f = w[p] // g, f // g
                self.rows[i] = _primitive([a * x - f * y for x, y in zip(r, w)])
                if self.rows[i][self.pivots[i]] < 0:
                    self.rows[i] = [-x for x in self.rows[i]]
        self.rows.append(w)
        self.pivots.append(p)
        return w

    def contains(self, v) -> bool:
        if v and not isinstance(v[0], int):
            v = _int_row(v)
        return not any(self.reduce(v))

    def basis(self) -> list[list[Fraction]]:
        """Rows in pivot order, normalised to have pivot entry 1."""
        order = sorted(range(len(self.rows)), key=lambda i: self.pivots[i])
        out = []
        for i in order:
            r, p = self.rows[i], self.pivots[i]
            out.append([Fraction(x, r[p]) for x in r])
        return out

    def as_mat(self) -> Mat:
        b = self.basis()
        if not b:
            return Mat(0, self.width, ())
        return Mat.from_rows(b, cols=self.width)
