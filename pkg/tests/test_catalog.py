from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superjordan.catalog import (
    FamilySpec,
    InvalidParameters,
    SpecParseError,
    build,
    build_full_matrix_super,
    build_JVf,
    enveloping_fact,
    family_dims,
    parse_spec,
    symplectic_form,
)
from superjordan.superalgebra import product


def _expected_dim(spec: FamilySpec) -> int:
    f, p = spec.family, spec.params
    if f == "M":
        return (p[0] + p[1]) ** 2
    if f == "osp":
        n, m = p
        return n * (n + 1) // 2 + m * (2 * m - 1) + 2 * n * m
    if f in ("P", "Q"):
        return 2 * p[0] ** 2
    if f == "JVf":
        return 1 + p[0] + 2 * p[1]
    return {"K3": 3, "Dt": 4}[f]


GRID = (
    [FamilySpec("M", (n, m)) for n in range(1, 4) for m in range(1, 4)]
    + [FamilySpec("osp", (n, m)) for n in range(1, 4) for m in range(1, 3)]
    + [FamilySpec(f, (n,)) for f in ("P", "Q") for n in (1, 2, 3)]
    + [FamilySpec("JVf", (a, b)) for a in range(3) for b in range(3) if a + 2 * b >= 1]
    + [FamilySpec("K3")]
    + [FamilySpec("Dt", (Fraction(t),)) for t in ("-1", "0", "1/2", "2")]
)


@pytest.mark.parametrize("spec", GRID, ids=str)
def test_built_dims_match_formula(spec):
    A = build(spec)
    assert A.dim == _expected_dim(spec)
    assert A.parity_dims == family_dims(spec)


@pytest.mark.parametrize("text", ["M(2,3)", "osp(3,1)", "P(2)", "Q(3)", "JVf(2,1)", "K3", "Dt(1/2)", "Dt(-1)"])
def test_spec_text_roundtrip(text):
    assert str(parse_spec(text)) == text


def test_parse_aliases_and_spaces():
    assert parse_spec(" m( 2 , 3 ) ") == FamilySpec("M", (2, 3))
    assert parse_spec("D(2/4)") == FamilySpec("Dt", (Fraction(1, 2),))


@pytest.mark.parametrize("text", ["", "M(2)", "K3(1)", "X(1,2)", "M(a,b)", "Dt(1,2)", "M(2,3"])
def test_parse_errors(text):
    with pytest.raises(SpecParseError):
        parse_spec(text)


@pytest.mark.parametrize("text", ["M(0,2)", "osp(0,1)", "P(0)", "JVf(0,0)"])
def test_strict_rejects(text):
    with pytest.raises(InvalidParameters):
        build(text)


def test_permissive_allows_zero_block():
    A = build("M(0,2)", strict=False)
    assert A.parity_dims == (4, 0)


def test_full_matrix_basis_order_is_deterministic():
    A = build_full_matrix_super(2, 1)
    B = build_full_matrix_super(2, 1)
    assert [M.to_nested() for M in A.realization.basis_mats] == [M.to_nested() for M in B.realization.basis_mats]
    assert list(A.parity) == [0] * 5 + [1] * 4


def test_symplectic_form_is_alternating_and_invertible():
    J = symplectic_form(2)
    assert J.T == -J
    assert (J @ J) == -type(J).identity(4)


def test_spin_factor_forms():
    J = build_JVf(2, 1)
    one = J.basis_vector(0)
    v1, v2, w1, w2 = (J.basis_vector(i) for i in (1, 2, 3, 4))
    assert product(J, v1, v1) == one
    assert not any(product(J, v1, v2))
    assert product(J, w1, w2) == one
    assert product(J, w2, w1) == tuple(-x for x in one)


@pytest.mark.parametrize("spec,size,kind", [
    ("osp(2,1)", 4, "simple"), ("P(3)", 6, "simple"), ("Q(2)", 4, "two-copies"),
    ("M(2,1)", 3, "two-copies"), ("K3", None, "special"), ("JVf(2,1)", None, "special"),
])
def test_enveloping_facts(spec, size, kind):
    fact = enveloping_fact(parse_spec(spec))
    assert (fact.matrix_size, fact.kind) == (size, kind)


@given(st.integers(1, 4), st.integers(1, 4))
def test_family_dims_parity_sum(n, m):
    for f in ("M", "osp"):
        spec = FamilySpec(f, (n, m))
        assert sum(family_dims(spec)) == _expected_dim(spec)
