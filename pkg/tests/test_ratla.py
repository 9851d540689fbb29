from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framedlin.ratla import (RationalMatrix, complement_basis, det, intersect_subspaces, inverse, kernel_basis,
                             rank, scalar_to_str, solve, sparse_rank, span_basis, sum_subspaces)

from oracles import naive_rank
from strategies import low_rank_matrices, matrices, scalars

M = RationalMatrix.from_rows


def test_rank_examples():
    assert rank(RationalMatrix.identity(2)) == 2
    assert rank(RationalMatrix(0, 5)) == 0
    assert rank(M([[1, 2], [2, 4]])) == 1


def test_kernel_examples():
    assert kernel_basis(RationalMatrix.identity(3)) == []
    assert len(kernel_basis(RationalMatrix.zeros(2, 3))) == 3
    (v,) = kernel_basis(M([[1, 2], [2, 4]]))
    assert v[0] == -2 * v[1] and v[1] != 0


def test_solve_examples():
    assert solve(RationalMatrix.identity(2), [3, 5]) == [3, 5]
    assert solve(M([[1, 2], [2, 4]]), [1, 3]) is None
    assert solve(RationalMatrix.zeros(2, 2), [0, 0]) == [0, 0]
    with pytest.raises(ValueError):
        solve(RationalMatrix.identity(2), [1, 2, 3])


def test_subspace_examples():
    e1, e2 = [1, 0], [0, 1]
    assert intersect_subspaces([[e1], [e2]], 2) == []
    assert len(sum_subspaces([[e1], [e2]], 2)) == 2
    assert len(intersect_subspaces([[[1, 1]], [[2, 2]]], 2)) == 1


def test_scalar_strings_and_json():
    assert scalar_to_str(Fraction(3, 1)) == "3"
    assert scalar_to_str(Fraction(-2, 6)) == "-1/3"
    m = M([[Fraction(1, 2), 0], [3, Fraction(-4, 3)]])
    assert m.to_json() == {"rows": 2, "cols": 2, "entries": ["1/2", "0", "3", "-4/3"]}
    assert RationalMatrix.from_json(m.to_json()) == m


def test_empty_shapes():
    a = RationalMatrix(0, 3)
    b = RationalMatrix(3, 0)
    assert (b @ a).shape == (3, 3) and (b @ a).is_zero()
    assert (a @ b).shape == (0, 0)
    assert len(kernel_basis(a)) == 3
    assert det(RationalMatrix(0, 0)) == 1


def test_singular_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        inverse(M([[1, 2], [2, 4]]))


@given(matrices())
def test_rank_nullity(m):
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == m.cols
    for v in ker:
        assert not any(m.apply(v))


@settings(max_examples=100)
@given(matrices(max_rows=8, max_cols=8))
def test_rank_of_transpose(m):
    assert rank(m) == rank(m.T)


@given(low_rank_matrices())
def test_rank_against_naive_elimination(m):
    assert rank(m) == naive_rank(m.to_rows())


@given(low_rank_matrices())
def test_sparse_rank_agrees(m):
    cols = [{i: x for i, x in enumerate(c) if x} for c in m.columns()]
    assert sparse_rank(cols) == rank(m)


@given(matrices(min_rows=1, min_cols=1), st.data())
def test_solve_is_exact(m, data):
    x0 = data.draw(st.lists(scalars, min_size=m.cols, max_size=m.cols))
    b = m.apply(x0)
    x = solve(m, b)
    assert x is not None and m.apply(x) == b


@given(st.integers(1, 5).flatmap(lambda n: matrices(n, n, n, n)))
def test_inverse_when_invertible(m):
    if det(m) == 0:
        return
    assert m @ inverse(m) == RationalMatrix.identity(m.rows)


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(low_rank_matrices(rows=n), low_rank_matrices(rows=n))))
def test_intersection_dimension_formula(pair):
    a, b = pair
    n = a.rows
    A, B = a.columns(), b.columns()
    s = sum_subspaces([A, B], n)
    i = intersect_subspaces([A, B], n)
    assert len(s) + len(i) == len(span_basis(A, n)) + len(span_basis(B, n))


@given(low_rank_matrices())
def test_complement_extends_to_basis(m):
    n = m.rows
    sub = m.columns()
    unit = [[int(i == j) for j in range(n)] for i in range(n)]
    comp = complement_basis(sub, unit, n)
    assert len(comp) + rank(m) == n
