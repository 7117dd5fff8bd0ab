from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from embedlattice.linalg import bareiss_echelon, nullspace, primitive, rank


@st.composite
def matrices(draw):
    rows = draw(st.integers(1, 7))
    cols = draw(st.integers(1, 7))
    entries = st.integers(-4, 4) | st.just(0)
    return [[draw(entries) for _ in range(cols)] for _ in range(rows)], cols


@settings(max_examples=300, deadline=None)
@given(matrices())
def test_rank_matches_sympy(mc):
    A, cols = mc
    assert rank(A, cols) == sympy.Matrix(A).rank()


@settings(max_examples=300, deadline=None)
@given(matrices())
def test_nullspace_matches_sympy(mc):
    A, cols = mc
    basis = nullspace(A, cols)
    assert len(basis) == len(sympy.Matrix(A).nullspace())
    for v in basis:
        assert all(type(x) is F for x in v)
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)
    if basis:
        assert sympy.Matrix([list(v) for v in basis]).rank() == len(basis)


def test_rational_input():
    A = [[F(1, 2), F(1, 3)], [1, F(2, 3)]]
    assert rank(A, 2) == 1
    (v,) = nullspace(A, 2)
    assert primitive(v) == (2, -3)


def test_echelon_is_integral():
    ech, piv = bareiss_echelon([[2, 4, 1], [1, 3, 5], [3, 7, 6]], 3)
    assert piv == [0, 1]
    assert all(isinstance(x, int) for row in ech for x in row)


def test_ragged_rejected():
    with pytest.raises(ValueError):
        rank([[1, 2], [3]], 2)


def test_primitive():
    assert primitive([F(1, 2), F(-1, 3), 0]) == (3, -2, 0)
    assert primitive([F(-2), F(4)]) == (1, -2)
    assert primitive([0, 0]) == (0, 0)
