import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superjordan.catalog import FamilySpec, family_dims, parse_spec
from superjordan.decomposition import RULES, Candidate, enumerate_candidates, screen


def _pair(rep, a, b):
    for p in rep.survivors + rep.excluded:
        if {str(p.a), str(p.b)} == {a, b}:
            return p
    raise KeyError((a, b))


def test_every_exclusion_cites_one_known_rule():
    rep = screen("M(2,2)")
    assert rep.excluded
    for p in rep.excluded:
        (rule, anchor, detail), = p.trace
        assert rule in RULES and anchor == RULES[rule] and detail
        assert not p.exclusion.heuristic


def test_dimension_rule_instantiation():
    p = _pair(screen("M(3,2)"), "osp(2,1)@even", "M(2,2)")
    assert p.exclusion.rule == "R-DIM"
    assert p.exclusion.detail == "even 4+8 < 13"


def test_osp_shape_rule():
    rep = screen("M(3,2)")
    assert _pair(rep, "osp(3,1)@even", "M(1,3)").exclusion.rule == "R-OSP-SHAPE"
    assert _pair(rep, "osp(3,1)@odd", "M(2,2)").exclusion.rule == "R-OSP-SHAPE"


def test_k_equals_n_shape_is_annotated_not_dropped():
    rep = screen("M(3,2)")
    p = _pair(rep, "osp(3,1)@even", "M(3,1)")
    assert p.survives and "M(2,2)" in p.note
    assert rep.survivor_keys(annotated=False) == {("osp(3,1)@even", "M(2,2)")}


def test_oddgen_rule_in_osp_target():
    assert screen("osp(2,2)").rule_counts().get("R-ODDGEN", 0) > 0


@pytest.mark.parametrize("target", ["JVf(2,1)", "JVf(1,2)", "JVf(3,0)"])
def test_jvf_targets_keep_only_spin_factor_pairs(target):
    rep = screen(target)
    assert rep.survivors
    assert all(p.a.family == p.b.family == "JVf" for p in rep.survivors)


def test_jvf_target_survivors():
    assert screen("JVf(2,1)").survivor_keys() == {
        ("JVf(0,1)", "JVf(2,0)"), ("JVf(1,1)", "JVf(1,1)"), ("JVf(1,1)", "JVf(2,0)"),
    }


def test_embedding_rule_for_Dt_target():
    rep = screen("Dt(1/2)")
    assert not rep.survivors
    assert "R-EMBED" in rep.rule_counts()


def test_candidates_are_proper_and_oriented_only_in_matrix_targets():
    cands = enumerate_candidates(parse_spec("M(2,2)"))
    assert all(c.dim < 16 for c in cands)
    assert Candidate(FamilySpec("M", (2, 1))) in cands and Candidate(FamilySpec("M", (1, 2))) in cands
    osp_cands = enumerate_candidates(parse_spec("osp(2,2)"))
    assert Candidate(FamilySpec("M", (2, 1))) not in osp_cands
    assert all(c.placement == "" for c in osp_cands)


def test_max_dim_truncates():
    full = enumerate_candidates(parse_spec("M(3,2)"))
    small = enumerate_candidates(parse_spec("M(3,2)"), max_dim=5)
    assert small and all(c.dim <= 5 for c in small) and len(small) < len(full)


def test_type_name_is_unoriented():
    assert Candidate(FamilySpec("M", (2, 1))).type_name() == "M(1,2)"


TARGETS = ["M(1,2)", "M(2,2)", "M(2,3)", "osp(1,2)", "osp(2,1)", "P(3)", "Q(3)", "JVf(1,2)", "JVf(2,1)"]


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(TARGETS))
def test_survivors_pass_parity_counts(target):
    spec = parse_spec(target)
    te, to = family_dims(spec)
    for p in screen(spec).survivors:
        (ae, ao), (be, bo) = p.a.dims, p.b.dims
        assert ae + be >= te and ao + bo >= to
        assert p.a.dim < te + to and p.b.dim < te + to


def test_screening_is_deterministic():
    a, b = screen("M(2,3)"), screen("M(2,3)")
    assert [(str(p.a), str(p.b), p.trace) for p in a.excluded] == [(str(p.a), str(p.b), p.trace) for p in b.excluded]
