import pytest
from hypothesis import given, strategies as st

from necknerve.ladjoint import (
    AdjointError, FreeFrobenius, GradedDims, closed_form_cubical, closed_form_dg,
    closed_form_duskin_objects, closed_form_hc, flanked_flag_count, free_frobenius,
    free_frobenius_basis, hc_matches_poset_nerve, normalize, oracle_dg, oracle_matches,
    minus_maps_from_simplex, path_bound, phi_compare, poset_simplex_count,
)
from necknerve.neckcomb import Necklace, all_necklaces, cube_hom, fint
from necknerve.simpset import boundary, circle, horn, necklace_instances, std_simplex

D = Necklace.simplex


def test_closed_form_dg_examples():
    assert closed_form_dg(std_simplex(2)).dims == {0: 2, 1: 1}
    assert closed_form_dg(std_simplex(1)).dims == {0: 1}
    assert closed_form_dg(horn(2, 1)).dims == {0: 1}
    assert closed_form_dg(std_simplex(3)).as_tuple() == (4, 4, 1)
    assert closed_form_dg(boundary(2)).dims == {0: 2}


def test_closed_form_needs_a_bound_on_the_circle():
    assert path_bound(circle()) is None
    with pytest.raises(AdjointError):
        closed_form_dg(circle())
    assert closed_form_dg(circle(), pmax=3).dims == {0: 4}


@pytest.mark.parametrize("k,P,dims", [
    (std_simplex(2), 4, {0: 2, 1: 1}),
    (std_simplex(1), 2, {0: 1}),
])
def test_oracle_examples(k, P, dims):
    res = oracle_dg(k, P)
    assert res.dims == dims and res.stabilized


@pytest.mark.slow
def test_oracle_on_the_three_simplex():
    res = oracle_dg(std_simplex(3), 5)
    assert res.dims == {0: 4, 1: 4, 2: 1} and res.stabilized


@pytest.mark.parametrize("k", [boundary(2), horn(2, 1), std_simplex(2)])
def test_oracle_with_all_maps(k):
    assert oracle_dg(k, 3, all_maps=True).dims == oracle_dg(k, 3).dims


def test_oracle_on_the_circle_does_not_stabilize():
    rep = oracle_matches(circle(), 3)
    assert rep["agrees"] and not rep["stabilized"]


def test_cubical_examples():
    assert closed_form_cubical(std_simplex(2), 1) == 3 == len(cube_hom(1, 1)[0])
    assert closed_form_cubical(std_simplex(2), 0) == 2
    assert [closed_form_cubical(std_simplex(1), n) for n in range(4)] == [1, 1, 1, 1]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cubical_matches_cube_homs(n):
    for m in range(4):
        assert closed_form_cubical(std_simplex(n), m) == len(cube_hom(m, n - 1)[0])


def test_duskin_examples():
    assert closed_form_duskin_objects(std_simplex(2)) == 2
    assert closed_form_duskin_objects(std_simplex(1)) == 1
    # the constant instance at the base point counts alongside the paths of length 1..3
    assert closed_form_duskin_objects(circle(), pmax=3) == 4


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_duskin_objects_on_simplices(n):
    assert closed_form_duskin_objects(std_simplex(n)) == 2 ** (n - 1)


def test_hc_examples():
    assert [closed_form_hc(std_simplex(1), n) for n in range(4)] == [1, 1, 1, 1]
    assert [closed_form_hc(std_simplex(2), n) for n in range(3)] == [2, 3, 4]
    assert closed_form_hc(boundary(2), 0) == 2


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hc_counts_poset_simplices(n):
    for m in range(4):
        assert hc_matches_poset_nerve(n, m)
        assert closed_form_hc(std_simplex(n), m) == poset_simplex_count(D(n), m)


def test_flanked_flags():
    assert flanked_flag_count(D(1), 0) == 1
    assert flanked_flag_count(D(3), 0) == 0
    assert flanked_flag_count(D(3), 2) == 4


def test_free_frobenius_examples():
    assert [free_frobenius(circle(), n) for n in range(1, 5)] == [2, 6, 20, 70]
    assert free_frobenius(std_simplex(1), 1) == 1


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_free_frobenius_on_circle_is_fint(n):
    assert free_frobenius(circle(), n) == sum(len(fint(n, p)) for p in range(n + 1))


def test_free_frobenius_elements_are_normal():
    k = std_simplex(2)
    for e in free_frobenius_basis(k, 2):
        assert e.phi.in_minus and e.inst.totally_nondegenerate
        assert normalize(e.phi, e.inst, k) == e
    x = FreeFrobenius(circle(), 3)
    assert len(x.elements(2)) == free_frobenius(circle(), 2, pmax=3)


@pytest.mark.parametrize("tag", ["dg", "Dusk", "cub", "hc"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_phi_compare(tag, n):
    rep = phi_compare(tag, n)
    assert rep["agrees"], rep["rows"]


def test_phi_compare_rejects_bad_input():
    with pytest.raises(AdjointError):
        phi_compare("dg", 5)
    with pytest.raises(AdjointError):
        phi_compare("nope", 1)


def test_graded_dims_json():
    g = closed_form_dg(std_simplex(2))
    out = g.to_json()
    assert out["dims"] == {"0": 2, "1": 1}
    assert len(out["basis"]["0"]) == 2
    assert GradedDims({}).as_tuple() == ()


@given(st.sampled_from([std_simplex(1), std_simplex(2), std_simplex(3), boundary(2),
                        horn(2, 1), horn(3, 1), circle()]),
       st.integers(1, 3), st.integers(1, 3), st.data())
def test_normalize_lands_in_the_basis(k, n, p, data):
    t = data.draw(st.sampled_from([u for u in all_necklaces(p) if u.p == p]))
    xs = necklace_instances(k, t)
    phis = minus_maps_from_simplex(n, t)
    if not xs or not phis:
        return
    x = data.draw(st.sampled_from(xs))
    e = normalize(data.draw(st.sampled_from(phis)), x, k)
    assert e.phi.in_minus and e.inst.totally_nondegenerate
    assert normalize(e.phi, e.inst, k) == e


@given(st.integers(0, 3), st.integers(0, 3))
def test_poset_simplex_count_formula(d, m):
    t = Necklace.of(d + 1, set())
    assert poset_simplex_count(t, m) == (m + 2) ** d
