"""Randomized search for an accepted decomposition with prescribed part types."""

from __future__ import annotations

import numpy as np

from ..catalog import FamilySpec, build, family_dims, parse_spec
from ..exact_linalg import Mat, solve_linear
from ..superalgebra import Subspace, SuperAlgebra, matrix_coordinates
from .certificate import DecompositionCertificate, verify_sum
from .constructions import construct_example1, construct_example2, example1_claims, example2_claims

__all__ = [
    "random_conjugate_search",
    "canonical_placements",
    "random_graded_unimodular",
    "NoCanonicalEmbedding",
]


class NoCanonicalEmbedding(ValueError):
    pass


def _spec(s) -> FamilySpec:
    if isinstance(s, SuperAlgebra):
        s = s.name
    return parse_spec(s) if isinstance(s, str) else s


def _unoriented(spec: FamilySpec) -> FamilySpec:
    if spec.family == "M":
        return FamilySpec("M", tuple(sorted(spec.params)))
    return spec


def canonical_placements(target: FamilySpec, a: FamilySpec, b: FamilySpec):
    """Known embeddings (A, B) of the requested types inside a full matrix target."""
    if target.family != "M":
        return []
    n, m = target.params
    want = {_unoriented(a), _unoriented(b)}
    out = []
    for ok, make, claims in (
        (m % 2 == 0 and m >= 2, construct_example1, example1_claims),
        (n % 2 == 0 and n >= 2, construct_example2, example2_claims),
    ):
        if not ok:
            continue
        ca, cb = claims(n, m)
        if {_unoriented(ca), _unoriented(cb)} == want and min(cb.params) >= 0:
            pa, pb = make(n, m)
            if _unoriented(ca) == _unoriented(a):
                out.append((pa, pb))
            else:
                out.append((pb, pa))
    return out


def random_graded_unimodular(n: int, m: int, rng: np.random.Generator) -> tuple[Mat, Mat]:
    """Block-diagonal P and P^{-1} with unimodular integer blocks (entries of the factors in [-2, 2])."""
    def block(k):
        L = np.eye(k, dtype=np.int64)
        U = np.eye(k, dtype=np.int64)
        for i in range(k):
            for j in range(i):
                L[i, j] = rng.integers(-2, 3)
                U[j, i] = rng.integers(-2, 3)
        return L @ U
    N = n + m
    P = np.zeros((N, N), dtype=np.int64)
    if n:
        P[:n, :n] = block(n)
    if m:
        P[n:, n:] = block(m)
    Pm = Mat.from_rows(P.tolist())
    Pinv = _inverse(Pm)
    return Pm, Pinv


def _inverse(P: Mat) -> Mat:
    return solve_linear(P, Mat.identity(P.rows))


def _conjugate(target: SuperAlgebra, s: Subspace, P: Mat, Pinv: Mat) -> Subspace:
    mats = [P @ X @ Pinv for X in s.matrices()]
    return Subspace.span(target, matrix_coordinates(target, mats))


def random_conjugate_search(target, spec_a, spec_b, trials: int = 8,
                            seed: int = 0) -> DecompositionCertificate | None:
    """First accepted certificate among conjugates of a canonical placement, else None.

    Trial 0 is the canonical placement itself; later trials conjugate each
    part independently by a random graded unimodular matrix.  None means no
    witness was found, not that none exists.
    """
    target, a, b = _spec(target), _spec(spec_a), _spec(spec_b)
    if trials <= 0:
        return None
    T = build(target)
    da, db = family_dims(a), family_dims(b)
    te, to = T.parity_dims
    if sum(da) >= T.dim or sum(db) >= T.dim:
        return None
    if da[0] + db[0] < te or da[1] + db[1] < to:
        return None
    placements = canonical_placements(target, a, b)
    if not placements:
        raise NoCanonicalEmbedding(f"no canonical placement of {a} and {b} in {target}")
    n, m = target.params
    rng = np.random.default_rng(seed)
    for t in range(trials):
        for pa, pb in placements:
            if t:
                pa = _conjugate(T, pa, *random_graded_unimodular(n, m, rng))
                pb = _conjugate(T, pb, *random_graded_unimodular(n, m, rng))
            cert = verify_sum(T, pa, pb, a, b, seed=seed, target_name=str(target))
            if cert.accepted:
                return cert
    return None
