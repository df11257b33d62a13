"""Checked sums J = A + B of two graded subsuperalgebras."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..catalog import FamilySpec, family_dims
from ..exact_linalg import Mat, rank, rowspace_intersection
from ..superalgebra import (
    EVEN,
    SimplicityVerdict,
    Subspace,
    SuperAlgebra,
    _parity_of,
    find_identity,
    is_simple,
    is_subsuperalgebra,
    restrict,
)

__all__ = ["PartRecord", "DecompositionCertificate", "UngradedInput", "verify_sum", "check_part"]


class UngradedInput(ValueError):
    pass


@dataclass
class PartRecord:
    claim: FamilySpec | None
    basis: Mat
    parity_dims: tuple[int, int]
    claimed_dims: tuple[int, int] | None
    closed: bool
    proper: bool
    simplicity: SimplicityVerdict | None
    contains_identity: bool | None

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def dims_match_claim(self) -> bool:
        return self.claimed_dims is None or self.claimed_dims == self.parity_dims


@dataclass
class DecompositionCertificate:
    target: str
    target_dims: tuple[int, int]
    part_a: PartRecord
    part_b: PartRecord
    span_rank: int
    span_rank_even: int
    span_rank_odd: int
    intersection_even: int
    intersection_odd: int
    accepted: bool
    reason: str
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    seed: int = 0

    @property
    def target_dim(self) -> int:
        return sum(self.target_dims)

    @property
    def intersection_dim(self) -> int:
        return self.intersection_even + self.intersection_odd


def _graded_basis(alg: SuperAlgebra, s: Subspace | Mat, what: str) -> Subspace:
    basis = s.basis if isinstance(s, Subspace) else s
    if basis.cols != alg.dim:
        raise UngradedInput(f"{what}: vectors have length {basis.cols}, expected {alg.dim}")
    for v in basis.row_list():
        if _parity_of(alg, v) is None:
            raise UngradedInput(f"{what}: basis vector is not homogeneous")
    sub = Subspace.span(alg, basis.row_list())
    if sub.dim != basis.rows:
        raise UngradedInput(f"{what}: basis vectors are linearly dependent")
    return sub


def _parity_rows(alg: SuperAlgebra, s: Subspace) -> tuple[list, list]:
    even, odd = [], []
    for v in s.vectors():
        (even if _parity_of(alg, v) == EVEN else odd).append(v)
    return even, odd


def check_part(alg: SuperAlgebra, s: Subspace, claim: FamilySpec | None, seed: int = 0,
               identity: tuple | None = None) -> PartRecord:
    closed = is_subsuperalgebra(alg, s)
    proper = 0 < s.dim < alg.dim
    verdict = None
    if closed and s.dim:
        verdict = is_simple(restrict(alg, s), seed=seed)
    claimed = family_dims(claim) if claim is not None else None
    has_one = s.contains(identity) if identity is not None else None
    return PartRecord(claim, s.basis, s.parity_dims(), claimed, closed, proper, verdict, has_one)


def verify_sum(target: SuperAlgebra, a: Subspace | Mat, b: Subspace | Mat,
               claim_a: FamilySpec | None = None, claim_b: FamilySpec | None = None,
               seed: int = 0, target_name: str | None = None) -> DecompositionCertificate:
    """Certificate for target = a + b with closure, dimension and simplicity checks.

    Raises UngradedInput if either basis has an inhomogeneous vector.
    """
    A = _graded_basis(target, a, "part A")
    B = _graded_basis(target, b, "part B")
    one = find_identity(target, Subspace.whole(target))
    ra = check_part(target, A, claim_a, seed, one)
    rb = check_part(target, B, claim_b, seed, one)

    ae, ao = _parity_rows(target, A)
    be, bo = _parity_rows(target, B)
    n = target.dim
    stacked = Mat.from_rows(A.vectors() + B.vectors(), cols=n)
    span = rank(stacked)
    span_e = rank(Mat.from_rows(ae + be, cols=n))
    span_o = rank(Mat.from_rows(ao + bo, cols=n))
    int_e = rowspace_intersection(Mat.from_rows(ae, cols=n), Mat.from_rows(be, cols=n)).rows
    int_o = rowspace_intersection(Mat.from_rows(ao, cols=n), Mat.from_rows(bo, cols=n)).rows
    te, to = target.parity_dims

    failures = []
    if span_o < to:
        failures.append("odd part not spanned")
    if span_e < te:
        failures.append("even part not spanned")
    for tag, r in (("A", ra), ("B", rb)):
        if not r.closed:
            failures.append(f"part {tag} not closed")
        if not r.proper:
            failures.append(f"part {tag} not proper")
        if not r.dims_match_claim:
            failures.append(f"part {tag} dims {r.parity_dims} differ from {r.claim} {r.claimed_dims}")
        if r.simplicity is not None and r.simplicity.kind == "NotSimple":
            failures.append(f"part {tag} not simple")
    accepted = not failures
    notes = []
    for tag, r in (("A", ra), ("B", rb)):
        if r.simplicity is not None and r.simplicity.kind == "Inconclusive":
            notes.append(f"part {tag}: simplicity inconclusive")
    return DecompositionCertificate(
        target=target_name or target.name,
        target_dims=(te, to),
        part_a=ra,
        part_b=rb,
        span_rank=span,
        span_rank_even=span_e,
        span_rank_odd=span_o,
        intersection_even=int_e,
        intersection_odd=int_o,
        accepted=accepted,
        reason="accepted" if accepted else failures[0],
        failures=failures,
        notes=notes,
        seed=seed,
    )
