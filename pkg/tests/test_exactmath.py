from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ehrlat.exactmath import (
    DimensionError,
    SingularMatrixError,
    as_rational,
    det,
    integer_solutions,
    inverse,
    is_lll_reduced,
    lll_reduce,
    matmul,
    matrix,
    nullspace,
    rank,
    rational_str,
    saturation_basis,
    smith_normal_form,
)


def square_matrices(n_max=4, bound=9):
    return st.integers(1, n_max).flatmap(
        lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                           min_size=n, max_size=n))


def test_det_examples():
    assert det([[1, 1], [0, 1]]) == 1
    assert det([[3, 2], [2, 1]]) == -1
    assert det([[1, 0, 1], [0, 1, 1], [0, 0, 5]]) == 5


@given(square_matrices())
def test_det_matches_float(m):
    assert det(m) == round(np.linalg.det(np.array(m, dtype=float)))


def test_rational_parsing():
    assert as_rational("3/6") == Fraction(1, 2)
    assert rational_str(Fraction(-4, 6)) == "-2/3"
    assert rational_str(Fraction(4, 2)) == "2"
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        as_rational(True)


def test_matrix_validation():
    with pytest.raises(DimensionError):
        matrix([[1, 2], [3]])
    with pytest.raises(TypeError):
        matrix([[1, 2.5]])


def test_snf_examples():
    assert smith_normal_form([[1, 0], [0, 1]]).diagonal == (1, 1)
    assert smith_normal_form([[2, 0], [0, 3]]).diagonal == (1, 6)
    assert smith_normal_form([[3, 2], [2, 1]]).diagonal == (1, 1)


@settings(max_examples=150)
@given(square_matrices())
def test_snf_properties(m):
    if det(m) == 0:
        with pytest.raises(SingularMatrixError):
            smith_normal_form(m)
        return
    u, s, w = smith_normal_form(m)
    assert [list(r) for r in matmul(matmul(u, s), w)] == [list(r) for r in m]
    assert abs(det(u)) == 1 and abs(det(w)) == 1
    diag = [s[i][i] for i in range(len(s))]
    assert all(x > 0 for x in diag)
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1))
    assert all(s[i][j] == 0 for i in range(len(s)) for j in range(len(s)) if i != j)


@given(square_matrices())
def test_inverse(m):
    if det(m) == 0:
        return
    inv = inverse(m)
    n = len(m)
    prod = [[sum(Fraction(m[i][k]) * inv[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    assert prod == [[int(i == j) for j in range(n)] for i in range(n)]


def test_lll_examples():
    assert [list(r) for r in lll_reduce([[1, 0], [0, 1]])] == [[1, 0], [0, 1]]
    red = lll_reduce([[201, 200], [1, 1]])
    assert is_lll_reduced(red)
    assert abs(det(red)) == abs(det([[201, 200], [1, 1]]))
    assert min(max(abs(x) for x in r) for r in red) <= 1


@settings(max_examples=100)
@given(square_matrices(bound=50))
def test_lll_same_lattice(m):
    if det(m) == 0:
        return
    red = lll_reduce(m)
    assert is_lll_reduced(red)
    assert abs(det(red)) == abs(det(m))
    # columns of the old basis are integer combinations of the new columns
    coeff = matmul(inverse(red), m)
    assert all(Fraction(x).denominator == 1 for r in coeff for x in r)


def test_nullspace_and_rank():
    ns = nullspace([[1, 1, 0], [0, 1, 1]], 3)
    assert len(ns) == 1
    v = ns[0]
    assert v[0] + v[1] == 0 and v[1] + v[2] == 0
    assert rank([[1, 2], [2, 4]]) == 1


def test_integer_solutions():
    x0, kernel = integer_solutions([[2, 4]], [6])
    assert 2 * x0[0] + 4 * x0[1] == 6
    assert len(kernel) == 1 and abs(kernel[0][0]) == 2 and abs(kernel[0][1]) == 1
    assert integer_solutions([[2, 4]], [3]) is None


def test_saturation_basis():
    basis = saturation_basis([(2, 2, 0)], 3)
    assert len(basis) == 1 and sorted(map(abs, basis[0])) == [0, 1, 1]
