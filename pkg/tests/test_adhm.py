from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framedlin.adhm import (ADHMDatum, ADHMEquationError, FramingError, adhm_from_points, canonical_framing,
                            check_equation, fiber_homology, gl_action, is_costable, is_stable, monad_from_adhm,
                            monad_maps, partitions, tangent_report, torus_fixed_points, young_datum)
from framedlin.ratla import RationalMatrix
from framedlin.sampling import Sampler

from oracles import partition_count


def point_datum(a=0, b=0):
    return ADHMDatum.from_lists([[a]], [[b]], [[1]], [[0]])


def test_equation_examples():
    assert check_equation(point_datum())
    assert check_equation(ADHMDatum.zero(2, 1))
    bad = ADHMDatum.from_lists([[0]], [[0]], [[1]], [[1]])
    assert not check_equation(bad)
    assert bad.residual() == RationalMatrix.from_rows([[1]])


def test_shape_validation():
    with pytest.raises(ValueError):
        ADHMDatum(1, 1, RationalMatrix.zeros(1, 1), RationalMatrix.zeros(1, 1), RationalMatrix.zeros(1, 2),
                  RationalMatrix.zeros(1, 1))


def test_stability_examples():
    assert is_stable(point_datum())
    assert not is_stable(ADHMDatum.zero(1, 1))
    assert not is_costable(point_datum())  # j = 0
    assert is_stable(ADHMDatum.zero(0, 3))
    # a nilpotent Jordan block reached from one vector
    d = ADHMDatum.from_lists([[0, 0], [1, 0]], [[0, 0], [0, 0]], [[1], [0]], [[0, 0]])
    assert is_stable(d) and check_equation(d)


def test_monad_composition_vanishes_iff_equation():
    S = Sampler(3)
    for k, r in [(1, 1), (2, 1), (2, 2)]:
        for d in (S.solution_adhm(k, r), S.nonsolution_adhm(k, r)):
            alpha, beta = monad_maps(d)
            assert (beta @ alpha).is_zero() == check_equation(d)
    with pytest.raises(ADHMEquationError):
        monad_from_adhm(ADHMDatum.from_lists([[0]], [[0]], [[1]], [[1]]))


def test_monad_shape():
    M = monad_from_adhm(point_datum())
    assert M.start == -1 and M.terms == (((-1,),), ((0,),) * 3, ((1,),))


def test_fiber_homology_profile():
    M = monad_from_adhm(point_datum())
    assert fiber_homology(M, (0, 0, 1))[0] == 2
    assert fiber_homology(M, (1, 0, 1))[0] == 1
    assert fiber_homology(M, (1, 0, 0))[0] == 1
    M = monad_from_adhm(point_datum(2, -1))
    assert fiber_homology(M, (2, -1, 1))[0] == 2
    assert fiber_homology(M, (0, 0, 1))[0] == 1


def test_canonical_framing():
    fr = canonical_framing(point_datum())
    assert fr.rank == 1
    assert fr.sections == RationalMatrix.from_columns([[0, 0, 1]])
    assert all(ok for _, _, ok in fr.samples)


def test_canonical_framing_rejects_unstable_and_nonsolutions():
    with pytest.raises(FramingError):
        canonical_framing(ADHMDatum.zero(1, 1))
    with pytest.raises(FramingError):
        canonical_framing(ADHMDatum.from_lists([[0]], [[0]], [[1]], [[1]]))
    with pytest.raises(ValueError):
        canonical_framing(point_datum(), points=[(0, 0, 1)])


def test_partitions():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert list(partitions(0)) == [()]


@pytest.mark.parametrize("k", range(1, 7))
def test_fixed_point_count(k):
    pts = torus_fixed_points(k)
    assert len(pts) == partition_count(k)
    for lam, d in pts:
        assert sum(lam) == k
        assert check_equation(d) and is_stable(d)
        assert (d.B1 @ d.B2 - d.B2 @ d.B1).is_zero()


def test_young_datum_small():
    d = young_datum((2,))
    assert d.B1 == RationalMatrix.from_rows([[0, 0], [1, 0]])
    assert d.B2.is_zero()
    assert d.i == RationalMatrix.from_rows([[1], [0]])


def test_adhm_from_points():
    d = adhm_from_points([(1, 2), (0, Fraction(1, 2))])
    assert check_equation(d) and is_stable(d)
    # coincident points are not stable
    assert not is_stable(adhm_from_points([(1, 2), (1, 2)]))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([(1, 1), (2, 1), (2, 2), (3, 1)]))
def test_gl_action_preserves_everything(seed, kr):
    S = Sampler(seed)
    d = S.stable_adhm(*kr)
    g = S.invertible(d.k)
    e = gl_action(g, d)
    assert check_equation(e)
    assert is_stable(e) == is_stable(d)
    assert tangent_report(e) == tangent_report(d)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)]))
def test_tangent_dimension(seed, kr):
    k, r = kr
    t = tangent_report(Sampler(seed).stable_adhm(k, r))
    assert t.tangent_dim == 2 * k * r
    assert t.rank_dmu == k * k and t.stabilizer_dim == 0


def test_tangent_rejects_nonsolution():
    with pytest.raises(ADHMEquationError):
        tangent_report(ADHMDatum.from_lists([[0]], [[0]], [[1]], [[1]]))


def test_tangent_of_unstable_point_has_stabilizer():
    t = tangent_report(ADHMDatum.zero(1, 1))
    assert t.stabilizer_dim == 1


def test_json_round_trip():
    d = Sampler(1).stable_adhm(2, 2)
    assert ADHMDatum.from_json(d.to_json()) == d
