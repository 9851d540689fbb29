import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framedlin.quiver import (Representation, check_relations, dimension_vector, dimension_vector_matrix,
                              euler_form, hom_space, is_isomorphic, path_space_dim, preset, preset_p1xp1,
                              preset_p2, quiver_from_json, quiver_to_json)
from framedlin.ratla import RationalMatrix
from framedlin.sampling import Sampler
from framedlin.surface import NumericalClass, chern_character, chi_pair, get_surface

from oracles import chi_pair_p1xp1, chi_pair_p2

M = RationalMatrix.from_rows


def ideal_rep():
    return Representation((1, 3, 1), {
        "a1": M([[-1], [0], [0]]), "a2": M([[0], [-1], [0]]), "a3": M([[0], [0], [0]]),
        "b1": M([[0, -1, 0]]), "b2": M([[1, 0, 0]]), "b3": M([[0, 0, 1]]),
    })


def test_p2_preset():
    q, J = preset_p2()
    assert len(q.arrows) == 6 and len(J) == 6
    assert set(J.ends(q)) == {(0, 2)}


def test_p1xp1_preset():
    q, J = preset_p1xp1()
    assert len(q.arrows) == 8 and len(J) == 4
    # the sink is the vertex whose collection member is O(1,0)
    assert set(J.ends(q)) == {(0, 3)}


def test_check_relations_examples():
    q, J = preset_p2()
    assert check_relations(q, J, Representation((1, 3, 1)))[0]
    assert check_relations(q, J, ideal_rep())[0]
    one = M([[1]])
    bad = Representation((1, 1, 1), {f"{x}{m}": one for x in "ab" for m in (1, 2, 3)})
    ok, violations = check_relations(q, J, bad)
    assert not ok and violations[0][0] == 0


def test_check_relations_rejects_bad_shapes():
    q, J = preset_p2()
    with pytest.raises(ValueError):
        check_relations(q, J, Representation((1, 3, 1), {"a1": M([[1, 2]])}))


def test_hom_examples():
    q, J = preset_p2()
    simple = Representation((1, 0, 0))
    assert hom_space(q, J, simple, simple).dim == 1
    assert hom_space(q, J, Representation((0, 0, 0)), ideal_rep()).dim == 0
    rep = ideal_rep()
    assert hom_space(q, J, rep, rep).dim == 1
    # Euler-form lower bound hom - ext1 + ext2 with ext2 = 0 here
    O = Representation((0, 1, 0))
    assert hom_space(q, J, O, rep).dim >= euler_form(q, J, O.dims, rep.dims)


def test_isomorphism_examples():
    q, J = preset_p2()
    a = Representation((1, 1, 0), {"a1": M([[1]])})
    b = Representation((1, 1, 0), {"a1": M([[2]])})
    c = Representation((1, 1, 0), {"a2": M([[1]])})
    assert is_isomorphic(q, J, a, a)
    assert is_isomorphic(q, J, a, b)
    assert not is_isomorphic(q, J, a, c)


def test_euler_form_examples():
    q, J = preset_p2()
    assert euler_form(q, J, (1, 3, 1), (1, 3, 1)) == -1
    assert euler_form(q, J, (0, 0, 0), (1, 3, 1)) == 0
    q, J = preset_p1xp1()
    assert euler_form(q, J, (1, 2, 1, 1), (1, 2, 1, 1)) == -1


def test_dimension_vector_examples():
    P2, Q = get_surface("P2"), get_surface("P1xP1")
    assert dimension_vector(P2, NumericalClass(P2, 1, (0,), 0)) == (1, 3, 1)
    assert dimension_vector(P2, NumericalClass(P2, 1, (0,), 1)) == (0, 1, 0)
    assert dimension_vector(Q, NumericalClass(Q, 1, (0, 0), 1)) == (0, 1, 0, 0)
    with pytest.raises(ValueError):
        dimension_vector(P2, NumericalClass(P2, 0, (0,), 1))  # skyscraper sits in a shifted heart


def test_dimension_vector_matrices():
    assert dimension_vector_matrix("P2").to_rows() == [[1, 2, -1], [3, 3, -2], [1, 1, -1]]
    assert dimension_vector_matrix("P1xP1").to_rows() == [[1, 1, 2, -1], [2, 0, 2, -1], [1, 1, 1, -1],
                                                          [1, 0, 1, -1]]
    assert dimension_vector_matrix("P2").apply([1, 0, 1]) == [0, 1, 0]


def test_path_spaces():
    q, J = preset_p2()
    assert path_space_dim(q, J, 0, 1) == 3
    assert path_space_dim(q, J, 0, 2) == 3
    assert all(path_space_dim(q, J, i, i) == 1 for i in range(3))
    assert path_space_dim(q, J, 2, 0) == 0
    q, J = preset_p1xp1()
    # Hom(O(1,0), O(2,1)) has dimension 4
    assert path_space_dim(q, J, 0, 3) == 4
    assert [path_space_dim(q, J, 0, j) for j in (1, 2)] == [2, 2]


coords = st.integers(-4, 4)


@settings(max_examples=50)
@given(st.tuples(coords, coords, coords), st.tuples(coords, coords, coords))
def test_euler_form_dictionary_p2(v, w):
    q, J = preset_p2()
    d = dimension_vector("P2", NumericalClass.from_coordinates("P2", v), allow_negative=True)
    e = dimension_vector("P2", NumericalClass.from_coordinates("P2", w), allow_negative=True)
    assert euler_form(q, J, d, e) == chi_pair_p2(v, w)


@settings(max_examples=50)
@given(st.tuples(coords, coords, coords, coords), st.tuples(coords, coords, coords, coords))
def test_euler_form_dictionary_p1xp1(v, w):
    q, J = preset_p1xp1()
    d = dimension_vector("P1xP1", NumericalClass.from_coordinates("P1xP1", v), allow_negative=True)
    e = dimension_vector("P1xP1", NumericalClass.from_coordinates("P1xP1", w), allow_negative=True)
    assert euler_form(q, J, d, e) == chi_pair_p1xp1(v, w)


def test_relation_count_is_pinned_by_the_euler_form():
    # dropping a relation or adding the mirrored ones breaks the dictionary
    q, J = preset_p2()
    v = NumericalClass.from_coordinates("P2", (1, 0, 0))
    d = dimension_vector("P2", v)
    target = chi_pair("P2", chern_character(v), chern_character(v))
    assert euler_form(q, J, d, d) == target
    from framedlin.quiver import RelationSet
    assert euler_form(q, RelationSet(J.relations[:-1]), d, d) != target
    assert euler_form(q, RelationSet(J.relations * 2), d, d) != target


@settings(max_examples=50)
@given(st.tuples(coords, coords, coords))
def test_dimension_vector_is_matrix_product(v):
    cls = NumericalClass.from_coordinates("P2", v)
    assert list(dimension_vector("P2", cls, allow_negative=True)) == dimension_vector_matrix("P2").apply(v)


def test_relations_invariant_under_gauge():
    q, J = preset_p2()
    S = Sampler(5)
    for n in range(20):
        dims = [(1, 3, 1), (2, 5, 2), (1, 4, 1)][n % 3]
        rep = S.p2_representation(dims, satisfy=n % 2 == 0)
        g = {v: S.invertible(dims[v]) for v in range(3)}
        assert check_relations(q, J, rep)[0] == check_relations(q, J, rep.conjugate(q, g))[0]


def small_pool():
    S = Sampler(11)
    q, J = preset_p2()
    pool = [S.p2_representation(d) for d in [(1, 3, 1), (1, 4, 1), (0, 2, 0), (1, 3, 1), (2, 5, 2)]]
    pool += [Representation((1, 1, 0), {"a1": M([[x]])}) for x in (1, 2)]
    pool += [Representation((1, 1, 0), {f"a{m}": M([[1]])}) for m in (1, 2, 3)]
    pool += [Representation(d) for d in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]]
    pool += [pool[0].conjugate(q, {v: S.invertible(pool[0].dims[v]) for v in range(3)}) for _ in range(3)]
    pool += [Representation((0, 1, 1), {"b1": M([[1]])}), Representation((0, 1, 1), {"b3": M([[2]])})]
    pool += [Representation((0, 2, 0))]
    return q, J, pool


def test_isomorphism_is_reflexive_and_symmetric():
    q, J, pool = small_pool()
    assert len(pool) == 20
    for a in pool:
        assert is_isomorphic(q, J, a, a)
        assert hom_space(q, J, a, a).dim >= (1 if any(a.dims) else 0)
    for n, a in enumerate(pool):
        for b in pool[n + 1:]:
            assert is_isomorphic(q, J, a, b) == is_isomorphic(q, J, b, a)
    # gauge-equivalent copies are recognized
    assert is_isomorphic(q, J, pool[0], pool[-4])


def test_quiver_json_round_trip():
    for tag in ("P2", "P1xP1"):
        q, J = preset(tag)
        q2, J2 = quiver_from_json(quiver_to_json(q, J))
        assert q2 == q and J2 == J
    rep = ideal_rep()
    assert Representation.from_json(rep.to_json()) == rep
