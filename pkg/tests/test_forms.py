from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from framedlin.forms import P1_SPACE, P2_SPACE, P1xP1_SPACE, Poly, PolyMatrix
from framedlin.ratla import RationalMatrix

from oracles import monomial_count
from strategies import scalars


def test_monomial_counts():
    for d in range(-2, 6):
        assert len(P2_SPACE.monomials((d,))) == monomial_count(3, d)
    assert len(P1xP1_SPACE.monomials((2, 1))) == 6
    # window monomials of O(-1) on P1 with exponents >= -2: s^-2 t, s^-1 t^0, s^0 t^-1, s t^-2
    assert P1_SPACE.monomials((-1,), lower=-2) == [(-2, 1), (-1, 0), (0, -1), (1, -2)]


def test_poly_arithmetic_and_degrees():
    x0, x1, x2 = (Poly.var(3, v) for v in range(3))
    p = x0 * x1 - x2 * x2
    assert p.degrees(P2_SPACE) == {(2,)}
    assert p.evaluate([1, 2, 3]) == 2 - 9
    assert (p - p).is_zero()
    q = p.substitute([Poly.var(2, 0), Poly.var(2, 1), Poly.zero(2)])
    assert q == Poly.var(2, 0) * Poly.var(2, 1)


def test_poly_json_round_trip():
    p = Poly(4, {(1, 0, 0, 1): Fraction(-1, 2), (0, 1, 1, 0): 3})
    assert Poly.from_json(4, p.to_json()) == p


linear = st.lists(scalars, min_size=3, max_size=3).map(Poly.linear)


@given(linear, linear, linear)
def test_poly_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@given(st.lists(scalars, min_size=6, max_size=6), st.lists(scalars, min_size=3, max_size=3))
def test_from_linear_evaluates_to_weighted_sum(entries, point):
    mats = [RationalMatrix(1, 2, entries[2 * v:2 * v + 2]) for v in range(3)]
    P = PolyMatrix.from_linear(mats)
    want = mats[0].scale(point[0]) + mats[1].scale(point[1]) + mats[2].scale(point[2])
    assert P.evaluate(point) == want
    for v in range(3):
        assert P.coefficient_matrix(tuple(int(u == v) for u in range(3))) == mats[v]


def test_polymatrix_json_and_blocks():
    x = [Poly.var(3, v) for v in range(3)]
    A = PolyMatrix.from_rows([[x[0], x[1]]], 3)
    B = PolyMatrix.from_rows([[x[2]]], 3)
    assert PolyMatrix.from_json(3, A.to_json()) == A
    C = A.block(B)
    assert C.shape == (2, 3) and C[1, 2] == x[2] and not C[0, 2]
    K = A.kron(B)
    assert K.shape == (1, 2) and K[0, 1] == x[1] * x[2]
