from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from superjordan.exact_linalg import (
    DimensionError,
    Echelon,
    Mat,
    kernel_basis,
    parse_rational,
    rank,
    rational_str,
    rowspace_intersection,
    rowspace_sum,
    rref,
    solve_linear,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return Mat.from_rows(rows)


def _sym(M: Mat) -> sympy.Matrix:
    return sympy.Matrix(M.rows, M.cols, [sympy.Rational(x.numerator, x.denominator) for x in M.entries])


@given(matrices())
def test_rank_matches_sympy(M):
    assert rank(M) == _sym(M).rank()


@given(matrices())
def test_rref_matches_sympy(M):
    R, piv = rref(M)
    S, spiv = _sym(M).rref()
    assert list(piv) == list(spiv)
    assert [R[i, j] for i in range(len(piv)) for j in range(M.cols)] == \
        [Fraction(str(S[i, j])) for i in range(len(piv)) for j in range(M.cols)]


@given(matrices())
def test_kernel_is_annihilated(M):
    K = kernel_basis(M)
    assert K.cols == M.cols - rank(M)
    if K.cols:
        assert (M @ K).is_zero()
        assert rank(K) == K.cols


@given(matrices(), st.data())
def test_solve_linear_roundtrip(A, data):
    x = Mat.from_rows([[data.draw(small)] for _ in range(A.cols)])
    b = A @ x
    X = solve_linear(A, b)
    assert X is not None and A @ X == b


def test_solve_linear_inconsistent():
    A = Mat.from_rows([[1, 1], [1, 1]])
    assert solve_linear(A, Mat.from_rows([[1], [2]])) is None


@settings(max_examples=60)
@given(matrices(4, 4), matrices(4, 4))
def test_grassmann_formula(A, B):
    if A.cols != B.cols:
        return
    s = rowspace_sum(A, B).rows
    i = rowspace_intersection(A, B).rows
    assert s + i == rank(A) + rank(B)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), max_size=6))
def test_echelon_tracks_rank(vecs):
    E = Echelon(4)
    for v in vecs:
        E.add(v)
    assert len(E) == (rank(Mat.from_rows(vecs, cols=4)) if vecs else 0)
    for v in vecs:
        assert E.contains(v)


@given(st.fractions(max_denominator=1000))
def test_rational_text_roundtrip(x):
    assert parse_rational(rational_str(x)) == x


def test_rational_text_canonical():
    assert rational_str(Fraction(6, 4)) == "3/2"
    assert rational_str(Fraction(-4, 2)) == "-2"
    with pytest.raises(ValueError):
        parse_rational("1/0")


def test_shape_errors():
    with pytest.raises(DimensionError):
        Mat.from_rows([[1, 2]]) @ Mat.from_rows([[1, 2]])


def test_nested_roundtrip():
    M = Mat.from_rows([[Fraction(1, 2), 0], [3, Fraction(-7, 3)]])
    assert M.to_nested() == [["1/2", "0"], ["3", "-7/3"]]
    assert Mat.from_nested(M.to_nested()) == M
