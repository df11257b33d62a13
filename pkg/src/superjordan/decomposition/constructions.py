"""Explicit two-part decompositions of M(n,m) and JVf(m0,n1)."""

from __future__ import annotations

from fractions import Fraction

from ..catalog import (
    FamilySpec,
    InvalidParameters,
    _osp_mats,
    build_full_matrix_super,
    build_JVf,
)
from ..exact_linalg import Mat
from ..superalgebra import Subspace, SuperAlgebra, matrix_coordinates

__all__ = [
    "example1_embedding",
    "construct_example1",
    "construct_example2",
    "construct_jvf_split",
    "even_projections",
    "example1_claims",
    "example2_claims",
    "jvf_split_claims",
    "swap_matrix",
    "certify_example1",
    "certify_example2",
    "certify_jvf_split",
    "jvf_splits",
]


def _in_target(target: SuperAlgebra, mats: list[Mat]) -> Subspace:
    return Subspace.span(target, matrix_coordinates(target, mats))


def example1_embedding(n: int, m: int) -> tuple[Mat, Mat]:
    """(R, S) with S @ R = I; X -> R X S embeds M(n-1,m) in M(n,m).

    R inserts a zero row at index n-1; S sends column n-2 to columns n-2 and
    n-1 and shifts the odd columns by one.
    """
    N = n + m
    R = [[0] * (N - 1) for _ in range(N)]
    S = [[0] * N for _ in range(N - 1)]
    for j in range(N - 1):
        R[j if j < n - 1 else j + 1][j] = 1
        if j < n - 1:
            S[j][j] = 1
            if j == n - 2:
                S[j][n - 1] = 1
        else:
            S[j][j + 1] = 1
    return Mat.from_rows(R), Mat.from_rows(S)


def example1_claims(n: int, m: int) -> tuple[FamilySpec, FamilySpec]:
    return FamilySpec("osp", (n, m // 2)), FamilySpec("M", (n - 1, m))


def construct_example1(n: int, m: int) -> tuple[Subspace, Subspace]:
    """osp(n, m/2) and the image of M(n-1, m), both inside M(n, m).

    n = 1 is allowed; the second part is then purely even (see `example1_claims`).
    """
    if m % 2 or m < 2 or n < 1:
        raise InvalidParameters(f"construct_example1 needs m even >= 2 and n >= 1, got ({n},{m})")
    target = build_full_matrix_super(n, m)
    even, odd = _osp_mats(n, m // 2)
    A = _in_target(target, even + odd)
    R, S = example1_embedding(n, m)
    N = n + m
    B_mats = [R @ Mat.unit(N - 1, N - 1, i, j) @ S for i in range(N - 1) for j in range(N - 1)]
    B = _in_target(target, B_mats)
    return A, B


def swap_matrix(X: Mat, n: int) -> Mat:
    """Conjugate by the block permutation moving the first n indices to the end."""
    N = X.rows
    perm = [(i + N - n) % N for i in range(N)]
    e = [Fraction(0)] * (N * N)
    for i in range(N):
        for j in range(N):
            e[perm[i] * N + perm[j]] = X[i, j]
    return Mat(N, N, tuple(e))


def example2_claims(n: int, m: int) -> tuple[FamilySpec, FamilySpec]:
    return FamilySpec("osp", (m, n // 2)), FamilySpec("M", (m - 1, n))


def construct_example2(n: int, m: int) -> tuple[Subspace, Subspace]:
    """`construct_example1` on M(m, n), pulled back to M(n, m) along the parity swap."""
    if n % 2 or n < 2 or m < 1:
        raise InvalidParameters(f"construct_example2 needs n even >= 2 and m >= 1, got ({n},{m})")
    target = build_full_matrix_super(n, m)
    parts = construct_example1(m, n)
    out = []
    for s in parts:
        mats = [swap_matrix(M, m) for M in s.matrices()]
        out.append(_in_target(target, mats))
    return out[0], out[1]


def jvf_split_claims(m0: int, n1: int, a: int, b: int) -> tuple[FamilySpec, FamilySpec]:
    return FamilySpec("JVf", (a, b)), FamilySpec("JVf", (m0 - a, n1 - b))


def construct_jvf_split(m0: int, n1: int, m0_first: int, n1_first: int) -> tuple[Subspace, Subspace]:
    """F + W1 and F + W2 for the coordinate split of V into the first and remaining vectors.

    The first part takes m0_first orthonormal even vectors and n1_first
    symplectic pairs; restrictions of the forms stay nondegenerate.
    """
    if not (0 <= m0_first <= m0 and 0 <= n1_first <= n1):
        raise InvalidParameters("split sizes out of range")
    if m0_first + 2 * n1_first == 0 or (m0 - m0_first) + 2 * (n1 - n1_first) == 0:
        raise InvalidParameters("both parts of the split must be nonzero")
    J = build_JVf(m0, n1)
    first = [0] + list(range(1, 1 + m0_first))
    second = [0] + list(range(1 + m0_first, 1 + m0))
    for r in range(n1):
        pair = [1 + m0 + 2 * r, 2 + m0 + 2 * r]
        (first if r < n1_first else second).extend(pair)
    return (Subspace.span(J, [J.basis_vector(i) for i in first]),
            Subspace.span(J, [J.basis_vector(i) for i in second]))


def even_projections(target: SuperAlgebra, s: Subspace) -> tuple[Subspace, Subspace]:
    """Images of the even part of s in the two diagonal blocks of M(n, m).

    Each image is returned inside the full matrix Jordan algebra of that block
    size (built as M(k, 0)).
    """
    real = target.realization
    if real is None or target.dim != real.size ** 2:
        raise InvalidParameters("even_projections needs a full matrix superalgebra target")
    n, m = real.block_even, real.block_odd
    blocks = []
    for lo, size in ((0, n), (n, m)):
        amb = build_full_matrix_super(size, 0, strict=False) if size else None
        mats = [M.block(lo, lo + size, lo, lo + size) for M in s.even_part().matrices()]
        if amb is None:
            blocks.append(None)
            continue
        blocks.append(Subspace.span(amb, matrix_coordinates(amb, [X for X in mats if not X.is_zero()])))
    return blocks[0], blocks[1]


def certify_example1(n: int, m: int, seed: int = 0, permissive: bool = True):
    """verify_sum on the `construct_example1` parts with their claimed types.

    For n = 1 the second part has shape M(0, m); such runs are tagged as
    outside the positive-block hypotheses, and refused unless permissive.
    """
    from .certificate import verify_sum

    if n == 1 and not permissive:
        raise InvalidParameters("n = 1 gives an M(0,m) part; use permissive mode")
    A, B = construct_example1(n, m)
    ca, cb = example1_claims(n, m)
    cert = verify_sum(A.ambient, A, B, ca, cb, seed=seed, target_name=f"M({n},{m})")
    if n == 1:
        cert.notes.append(f"outside hypotheses: part B has shape M(0,{m})")
    return cert


def certify_example2(n: int, m: int, seed: int = 0, permissive: bool = True):
    from .certificate import verify_sum

    if m == 1 and not permissive:
        raise InvalidParameters("m = 1 gives an M(0,n) part; use permissive mode")
    A, B = construct_example2(n, m)
    ca, cb = example2_claims(n, m)
    cert = verify_sum(A.ambient, A, B, ca, cb, seed=seed, target_name=f"M({n},{m})")
    if m == 1:
        cert.notes.append(f"outside hypotheses: part B has shape M(0,{n})")
    return cert


def certify_jvf_split(m0: int, n1: int, a: int, b: int, seed: int = 0):
    from .certificate import verify_sum

    A, B = construct_jvf_split(m0, n1, a, b)
    ca, cb = jvf_split_claims(m0, n1, a, b)
    return verify_sum(A.ambient, A, B, ca, cb, seed=seed, target_name=f"JVf({m0},{n1})")


def jvf_splits(m0: int, n1: int, min_w: int = 2) -> list[tuple[int, int]]:
    """Coordinate splits (a, b) whose two W parts both have dim >= min_w.

    With min_w = 2 both parts are simple; a 1-dimensional W gives F + F.
    """
    out = []
    for a in range(m0 + 1):
        for b in range(n1 + 1):
            if min(a + 2 * b, (m0 - a) + 2 * (n1 - b)) >= max(min_w, 1):
                out.append((a, b))
    return out
