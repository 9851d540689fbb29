from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from framedlin.adhm import check_equation, is_stable
from framedlin.quiver import check_relations, preset_p2
from framedlin.sampling import DEFAULT_SEED, Sampler


def test_same_seed_same_stream():
    a, b = Sampler(DEFAULT_SEED), Sampler(DEFAULT_SEED)
    assert [a.scalar() for _ in range(50)] == [b.scalar() for _ in range(50)]
    assert a.stable_adhm(2, 2) == b.stable_adhm(2, 2)
    assert a.complex("P2").to_json() == b.complex("P2").to_json()


def test_different_seeds_differ():
    assert [Sampler(1).scalar() for _ in range(20)] != [Sampler(2).scalar() for _ in range(20)]


@given(st.integers(0, 10 ** 6))
def test_scalar_bounds(seed):
    S = Sampler(seed)
    for _ in range(20):
        x = S.scalar()
        assert isinstance(x, Fraction)
        assert x.denominator in (1, 2, 3) and abs(x * x.denominator) <= 5
    assert S.scalar(nonzero=True) != 0


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)]))
def test_adhm_generators(seed, kr):
    S = Sampler(seed)
    d = S.stable_adhm(*kr)
    assert (d.k, d.r) == kr
    assert check_equation(d) and is_stable(d)
    assert check_equation(S.solution_adhm(*kr))
    assert not check_equation(S.nonsolution_adhm(*kr))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_points_are_distinct(seed):
    pts = Sampler(seed).points(6)
    assert len(set(pts)) == 6


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([(1, 3, 1), (2, 5, 2), (1, 5, 1)]))
def test_representations_satisfy_relations(seed, dims):
    q, J = preset_p2()
    rep = Sampler(seed).p2_representation(dims)
    assert rep.dims == dims
    assert check_relations(q, J, rep)[0]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from(["P1", "P2", "P1xP1"]))
def test_complexes_are_valid(seed, tag):
    cx = Sampler(seed).complex(tag)
    cx.validate()
    assert 1 <= len(cx.terms) <= 3
    assert cx.max_twist() <= 6
