from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from framedlin.forms import space_of
from framedlin.surface import (COTANGENT_P2, DIAGONAL, LINE_AT_INFINITY, TANGENT_P2, ChernCharacter, NumericalClass,
                               chern_character, chi, chi_pair, get_surface, hypothesis_check, intersect, line_bundle,
                               numerical_class, structure_sheaf, twist)

from oracles import chi_pair_p1xp1, chi_pair_p2, h_p1xp1, h_p2

P2, Q = get_surface("P2"), get_surface("P1xP1")


def test_intersections():
    assert intersect(Q, (1, 0), (0, 1)) == 1
    assert intersect(Q, (1, 0), (1, 0)) == 0
    assert intersect(P2, (1,), (1,)) == 1
    with pytest.raises(ValueError):
        intersect(P2, (1, 0), (1,))


def test_canonical_classes():
    assert P2.canonical == (-3,)
    assert Q.canonical == (-2, -2)
    assert (P2.chart_count, Q.chart_count) == (3, 4)


def test_chi_examples():
    assert chi(P2, line_bundle(P2, (1,))) == 3
    assert chi(Q, line_bundle(Q, (1, 1))) == 4
    for s in (P2, Q):
        assert chi(s, chern_character(structure_sheaf(s))) == 1


def test_chi_pair_examples():
    for s in (P2, Q):
        ideal = chern_character(NumericalClass(s, 1, (0,) * s.picard_rank, 0))
        assert chi_pair(s, ideal, ideal) == -1
        O = chern_character(structure_sheaf(s))
        assert chi_pair(s, O, O) == 1


def test_twist_examples():
    O = structure_sheaf(P2)
    assert twist(O, (1,)).chi == 3
    assert twist(O, (0,)) == O
    assert twist(NumericalClass(P2, 1, (0,), 1), (-2,)).chi == 0


def test_tangent_characters():
    assert chi(P2, TANGENT_P2) == 8  # h0(T) = 8, higher cohomology vanishes
    assert chi(P2, COTANGENT_P2) == -1
    assert COTANGENT_P2 == TANGENT_P2.dual()


@pytest.mark.parametrize("d", range(-5, 6))
def test_chi_p2_line_bundles(d):
    assert chi(P2, line_bundle(P2, (d,))) == Fraction((d + 1) * (d + 2), 2)
    h = h_p2(d)
    assert chi(P2, line_bundle(P2, (d,))) == h[0] - h[1] + h[2]


@pytest.mark.parametrize("a", range(-4, 5))
@pytest.mark.parametrize("b", range(-4, 5))
def test_chi_p1xp1_line_bundles(a, b):
    assert chi(Q, line_bundle(Q, (a, b))) == (a + 1) * (b + 1)
    h = h_p1xp1(a, b)
    assert chi(Q, line_bundle(Q, (a, b))) == h[0] - h[1] + h[2]


coords = st.integers(-4, 4)
p2_classes = st.builds(lambda r, d, x: NumericalClass(P2, r, (d,), x), coords, coords, coords)
q_classes = st.builds(lambda r, a, b, x: NumericalClass(Q, r, (a, b), x), coords, coords, coords, coords)


@given(p2_classes, p2_classes)
def test_chi_pair_p2_matches_oracle(v, w):
    assert chi_pair(P2, chern_character(v), chern_character(w)) == chi_pair_p2(v.coordinates, w.coordinates)


@given(q_classes, q_classes)
def test_chi_pair_p1xp1_matches_oracle(v, w):
    assert chi_pair(Q, chern_character(v), chern_character(w)) == chi_pair_p1xp1(v.coordinates, w.coordinates)


@given(st.one_of(st.tuples(p2_classes, p2_classes), st.tuples(q_classes, q_classes)))
def test_chi_is_additive(pair):
    v, w = pair
    s = v.surface
    assert chi(s, chern_character(v + w)) == chi(s, chern_character(v)) + chi(s, chern_character(w))


@given(p2_classes, coords)
def test_twist_two_ways_p2(v, d):
    # direct: chi(v(d)) = chi + r d(d+3)/2 + deg d
    direct = v.chi + v.rank * Fraction(d * (d + 3), 2) + v.c1[0] * d
    assert twist(v, (d,)).chi == direct


@given(q_classes, coords, coords)
def test_twist_two_ways_p1xp1(v, a, b):
    cH, cF = v.c1
    direct = v.chi + v.rank * (a * b + a + b) + cH * b + cF * a
    assert twist(v, (a, b)).chi == direct


@given(st.one_of(p2_classes, q_classes))
def test_self_pairing_is_integral(v):
    ch = chern_character(v)
    assert chi_pair(v.surface, ch, ch).denominator == 1


def test_pairing_is_not_symmetric():
    O = chern_character(structure_sheaf(P2))
    O1 = line_bundle(P2, (1,))
    assert chi_pair(P2, O, O1) == 3 and chi_pair(P2, O1, O) == 0


def test_class_json_round_trip():
    v = NumericalClass(Q, 2, (1, -1), 3)
    obj = v.to_json()
    assert obj == {"surface": "P1xP1", "class": {"rank": 2, "c1": [1, -1], "chi": 3}}
    assert NumericalClass.from_json(obj) == v


def test_numerical_class_rejects_fractional_chi():
    with pytest.raises(ValueError):
        numerical_class(ChernCharacter(P2, 1, (0,), Fraction(1, 3)))


def test_curves():
    assert LINE_AT_INFINITY.check() and DIAGONAL.check()
    assert LINE_AT_INFINITY.restricted_degree((3,)) == 3
    assert DIAGONAL.restricted_degree((1, 1)) == 2
    assert DIAGONAL.restricted_degree((2, -1)) == 1


def test_hypothesis_bounds():
    a = hypothesis_check("P1xP1", "diag", [(1, 0), (1, 1), (2, 0), (2, 1)])
    assert a.passed and a.anticanonical_degree == 4
    assert [m["D.C0"] for m in a.members] == [1, 2, 2, 3]
    assert a.degree_one_class == (1, 0)
    b = hypothesis_check("P2", "linf", [(1,), (2,)])
    assert b.passed and b.anticanonical_degree == 3 and b.degree_one_class == (1,)
    c = hypothesis_check("P2", "linf", [(3,)])
    assert not c.passed and c.members[0]["lower"] and not c.members[0]["upper"]


def test_linear_system_dimension():
    assert hypothesis_check("P2", "linf", [(1,)]).linear_system_dim == 2
    assert hypothesis_check("P1xP1", "diag", [(1, 0)]).linear_system_dim == 3
    assert space_of("P1xP1").dim == 2
