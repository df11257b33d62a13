from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superjordan.catalog import build, build_Dt, build_full_matrix_super
from superjordan.exact_linalg import Mat
from superjordan.superalgebra import (
    EVEN,
    ODD,
    SimplicityVerdict,
    SuperAlgebra,
    Subspace,
    annihilator,
    associative_envelope,
    check_axioms,
    find_identity,
    graded_closure,
    ideal_generated,
    is_simple,
    is_subsuperalgebra,
    matrix_coordinates,
    matrix_parity,
    orthogonal_idempotent_count,
    product,
    restrict,
    super_jordan_matrix_product,
)

SMALL = ["M(1,1)", "M(2,1)", "osp(1,1)", "osp(2,1)", "P(2)", "Q(2)", "JVf(2,1)", "K3", "Dt(1/2)", "Dt(-1)"]
coef = st.integers(-3, 3)


def _homogeneous(alg, parity, data):
    idx = alg.even_indices if parity == EVEN else alg.odd_indices
    v = [0] * alg.dim
    for i in idx:
        v[i] = data.draw(coef)
    return tuple(v)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.sampled_from([EVEN, ODD]), st.sampled_from([EVEN, ODD]), st.data())
def test_supercommutative(name, p, q, data):
    A = build(name)
    if not (A.odd_indices or (p == q == EVEN)):
        return
    x, y = _homogeneous(A, p, data), _homogeneous(A, q, data)
    sign = -1 if (p == ODD and q == ODD) else 1
    assert product(A, x, y) == tuple(sign * c for c in product(A, y, x))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(1, 1), (2, 1), (1, 2)]), st.data())
def test_table_matches_matrix_product(nm, data):
    n, m = nm
    A = build_full_matrix_super(n, m)
    real = A.realization
    for p in (EVEN, ODD):
        for q in (EVEN, ODD):
            x, y = _homogeneous(A, p, data), _homogeneous(A, q, data)
            direct = super_jordan_matrix_product(n, m, real.matrix_of(x), real.matrix_of(y))
            assert real.matrix_of(product(A, x, y)) == direct


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["JVf(3,0)", "M(2,0)"]), st.data())
def test_even_algebras_satisfy_classical_jordan_identity(name, data):
    A = build(name, strict=False)
    x = tuple(data.draw(coef) for _ in range(A.dim))
    y = tuple(data.draw(coef) for _ in range(A.dim))
    x2 = product(A, x, x)
    assert product(A, product(A, x2, y), x) == product(A, x2, product(A, y, x))


@pytest.mark.parametrize("name", SMALL)
def test_axioms_hold(name):
    rep = check_axioms(build(name))
    assert rep.ok, rep.summary()


def test_axioms_catch_corruption():
    A = build("osp(2,1)")
    (i, j, k, c), *rest = A.quadruples()
    bad = SuperAlgebra.from_quadruples(A.parity, [(i, j, k, c + 1)] + rest)
    assert not check_axioms(bad).ok


def test_axioms_catch_wrong_grading():
    A = build("K3")
    odd = A.odd_indices[0]
    quads = A.quadruples() + [(odd, odd, odd, Fraction(1))]
    assert check_axioms(SuperAlgebra.from_quadruples(A.parity, quads)).grading


def test_matrix_parity():
    X = Mat.from_rows([[1, 0], [0, 0]])
    Y = Mat.from_rows([[0, 1], [0, 0]])
    assert matrix_parity(1, 1, X) == EVEN
    assert matrix_parity(1, 1, Y) == ODD
    assert matrix_parity(1, 1, X + Y) is None


def test_identity_of_Dt():
    D = build_Dt(Fraction(1, 2))
    one = find_identity(D, Subspace.whole(D))
    assert one == tuple(Fraction(x) for x in (1, 1, 0, 0))


def test_odd_part_generates_full_matrix():
    A = build("M(2,1)")
    odd = Subspace.span(A, [A.basis_vector(i) for i in A.odd_indices])
    assert graded_closure(A, odd).dim == A.dim


def test_closure_of_single_idempotent():
    A = build("M(2,1)")
    e = [0] * A.dim
    e[0] = 1  # E11
    assert graded_closure(A, Subspace.span(A, [e])).dim == 1


def test_Dt0_ideal():
    D = build_Dt(0)
    I = ideal_generated(D, [D.basis_vector(0)])
    assert 0 < I.dim < D.dim
    v = is_simple(D)
    assert v.kind == "NotSimple" and v.recheck(D)


def test_spin_factor_with_one_vector_is_not_simple():
    A = build("JVf(1,0)")
    v = is_simple(A)
    assert v.kind == "NotSimple" and v.recheck(A)


@pytest.mark.parametrize("name", ["M(1,1)", "osp(1,1)", "K3", "JVf(2,1)"])
def test_simple_burnside_square(name):
    A = build(name)
    v = is_simple(A)
    assert v.kind == "Simple" and v.burnside_dim == A.dim ** 2


def test_recheck_rejects_bogus_witness():
    A = build("M(1,1)")
    bogus = SimplicityVerdict("NotSimple", Mat.from_rows([[1, 0, 0, 0]]))
    assert not bogus.recheck(A)


def test_restrict_and_subalgebra():
    A = build("M(2,1)")
    # span of E11, E22, E33 is closed
    diag = [i for i, M in enumerate(A.realization.basis_mats) if any(M[k, k] for k in range(3))]
    s = Subspace.span(A, [A.basis_vector(i) for i in diag])
    assert is_subsuperalgebra(A, s)
    R = restrict(A, s)
    assert R.dim == 3 and check_axioms(R).ok
    # E13 and E31 multiply into E11 - E33, outside their span
    pair = [i for i, M in enumerate(A.realization.basis_mats) if M[0, 2] or M[2, 0]]
    assert not is_subsuperalgebra(A, Subspace.span(A, [A.basis_vector(i) for i in pair]))
    with pytest.raises(ValueError):
        restrict(A, Subspace.span(A, [A.basis_vector(i) for i in pair]))


def test_annihilator_of_corner_idempotent():
    # X with E11 X + X E11 = 0 is supported away from row 1 and column 1
    A = build("M(2,1)")
    e = [0] * A.dim
    e[0] = 1
    ann = annihilator(A, Subspace.span(A, [e]))
    assert ann.dim == 4
    assert all(M[0, j] == M[j, 0] == 0 for M in ann.matrices() for j in range(3))
    D = build_Dt(0)
    assert annihilator(D, Subspace.whole(D)).dim == 0


@pytest.mark.parametrize("name,dim", [("osp(1,1)", 9), ("osp(2,1)", 16), ("P(3)", 36), ("Q(2)", 8)])
def test_envelope_dims(name, dim):
    A = build(name)
    E = associative_envelope(A.realization, Subspace.whole(A))
    assert len(E) == dim


def test_matrix_coordinates_outside_span():
    A = build("osp(1,1)")
    with pytest.raises(ValueError):
        matrix_coordinates(A, [Mat.unit(3, 3, 1, 2)])


def test_idempotent_count():
    assert orthogonal_idempotent_count(build("M(2,1)")) == 3
    assert orthogonal_idempotent_count(build_Dt(Fraction(1, 2))) == 2
