import pytest
from hypothesis import given

from necknerve.neckcomb import (
    CubeMap, ExtNecklaceMap, IntervalMap, Necklace, NecklaceError, NecklaceMap, classify_map,
    compose, compose_interval, cube_compose, cube_delta, cube_gamma, cube_hom, cube_identity,
    cube_sigma, dim_generator_table, dim_lift, dim_on_map, enumerate_necklaces, ext_compose,
    ext_decompose, ext_factor, ext_identity, ext_split_wedge, face, factor_active_inert,
    factor_minus_plus, fint, identity, injective_maps_into, interval_delta, interval_sigma,
    necklace_maps, nu, nu_co, sigma, spine_collapse_conditions, verify_minus_generation,
)

from strategies import composable, necklace_maps_st, necklaces

D = Necklace.simplex


def test_interval_compose_face_then_degeneracy_is_identity():
    assert compose_interval(interval_delta(2, 1), interval_sigma(1, 1)) == IntervalMap.identity(1)
    assert compose_interval(IntervalMap.identity(3), IntervalMap.identity(3)) == IntervalMap.identity(3)
    s0 = interval_sigma(0, 0)
    assert compose_interval(s0, IntervalMap.identity(0)) == s0


def test_interval_map_rejects_bad_values():
    with pytest.raises(NecklaceError):
        IntervalMap((1, 2))
    with pytest.raises(NecklaceError):
        IntervalMap((0, 2, 1))


@pytest.mark.parametrize("p,count", [(0, 1), (1, 1), (2, 2), (3, 4), (4, 8), (5, 16)])
def test_necklace_counts(p, count):
    assert len(enumerate_necklaces(p)) == count


def test_necklaces_of_rank_three():
    names = {t.name() for t in enumerate_necklaces(3)}
    assert names == {"D3", "D1vD2", "D2vD1", "D1vD1vD1"}


def test_fint_counts_are_binomial():
    from math import comb
    for p in range(1, 5):
        for q in range(4):
            assert len(fint(p, q)) == comb(q + p - 1, p - 1)


def test_classify_generators():
    s0 = classify_map(sigma(0, 0))
    assert s0["active"] and s0["surjective"] and s0["spine_collapsing"]
    v = classify_map(nu(1, 1))
    assert v["inert"] and v["injective"] and not v["active"]
    d = classify_map(face(2, 1))
    assert d["active"] and d["injective"] and not d["inert"]


def test_factor_active_inert_on_pure_maps():
    m = face(2, 1)
    a, i = factor_active_inert(m)
    assert a == m and i == identity(m.dst)
    a, i = factor_active_inert(nu(1, 1))
    assert a == identity(D(1).wedge(D(1))) and i == nu(1, 1)


def test_factor_minus_plus_examples():
    m = nu(1, 1)
    s, h = factor_minus_plus(m)
    assert s == identity(m.src) and h == m
    s, h = factor_minus_plus(sigma(0, 0))
    assert s == sigma(0, 0) and h == identity(D(0))
    left = sigma(1, 0).wedge(identity(D(1)))
    m = compose(left, nu(1, 1))
    s, h = factor_minus_plus(m)
    assert (s, h) == (left, nu(1, 1))


def test_coinert_after_face_lands_in_minus_class():
    m = ext_compose(face(2, 1), nu_co(1, 1))
    assert m == ExtNecklaceMap(D(1), D(1).wedge(D(1)), IntervalMap((0, 2)), frozenset({0, 1, 2}))
    assert m.in_minus
    assert ext_compose(ext_identity(D(2)), nu_co(1, 1)) == nu_co(1, 1)


def test_ext_factor_worked_example():
    u = Necklace.of(3, {2})
    m = ExtNecklaceMap(D(1), u, IntervalMap((0, 3)), frozenset({0, 2, 3}))
    minus, plus = ext_factor(m)
    assert minus.in_minus and plus.is_injective
    assert minus.dst == D(1).wedge(D(1))
    assert ext_compose(minus, plus) == m


def test_ext_factor_trivial_cases():
    m = nu_co(1, 1)
    minus, plus = ext_factor(m)
    assert minus == m and plus == identity(m.dst)
    g = face(3, 2)
    minus, plus = ext_factor(g)
    assert minus == ext_identity(g.src) and plus == g


def test_split_wedge_of_inert_map():
    m1, m2, link = ext_split_wedge(nu(1, 1), 1)
    assert m1 == identity(D(1)) and m2 == identity(D(1)) and link == nu(1, 1)
    with pytest.raises(NecklaceError):
        ext_split_wedge(nu_co(1, 1), 1)


def test_dim_of_generators():
    assert dim_on_map(face(2, 1)) == cube_delta(1, 1, 0)
    assert dim_on_map(nu(1, 1)) == cube_delta(1, 1, 1)
    assert dim_on_map(nu_co(1, 1)) == cube_sigma(1, 1)


def test_dim_generator_table_matches():
    rows = dim_generator_table(5)
    assert rows and all(a == b for _, a, b in rows)


def test_dim_lift_examples():
    assert dim_lift(D(2), cube_delta(1, 1, 0)) == face(2, 1)
    assert dim_lift(D(2), cube_delta(1, 1, 1)) == nu(1, 1)
    t = Necklace.of(4, {1})
    assert dim_lift(t, cube_identity(t.dim)) == identity(t)


# [1]^2 -> [1]: two constants, two projections, max; [1] -> [1]^2: vertices and edges, no diagonal
@pytest.mark.parametrize("m,n,count", [(0, 1, 2), (1, 1, 3), (0, 0, 1), (2, 1, 5), (1, 2, 8)])
def test_cube_hom_counts(m, n, count):
    assert len(cube_hom(m, n)[0]) == count


def test_cube_identities():
    # connection relations on [1]^2
    g = cube_gamma(2, 1)
    assert cube_compose(cube_delta(2, 1, 0), g) == cube_identity(1)
    assert cube_compose(cube_delta(2, 2, 1), g) == cube_compose(cube_sigma(1, 1), cube_delta(1, 1, 1))


def test_cube_json_round_trip():
    c = cube_gamma(3, 2)
    assert CubeMap.from_json(c.to_json()) == c


def test_minus_class_is_generated():
    ok, witness = verify_minus_generation(4)
    assert ok, witness


@given(necklace_maps_st(5))
def test_active_inert_factorization(m):
    a, i = factor_active_inert(m)
    assert a.is_active and i.is_inert and compose(a, i) == m


@given(necklace_maps_st(5))
def test_surjective_injective_factorization(m):
    s, h = factor_minus_plus(m)
    assert s.is_active and s.is_surjective and h.is_injective and compose(s, h) == m


@given(necklace_maps_st(4, ext=True))
def test_ext_factorizations(m):
    minus, plus = ext_factor(m)
    assert minus.in_minus and plus.is_injective and ext_compose(minus, plus) == m
    a, c, i = ext_decompose(m)
    assert a.is_active and c.is_coinert and i.is_inert
    assert ext_compose(ext_compose(a, c), i) == m


@given(composable(3, 4))
def test_composition_is_associative(ch):
    a, b, c = ch
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@given(composable(2, 4, ext=True))
def test_dim_is_functorial(ch):
    a, b = ch
    assert cube_compose(dim_on_map(a), dim_on_map(b)) == dim_on_map(ext_compose(a, b))


@given(necklace_maps_st(3), necklace_maps_st(3))
def test_dim_is_strong_monoidal(a, b):
    assert dim_on_map(a.wedge(b)) == dim_on_map(a).tensor(dim_on_map(b))


@given(necklaces(5))
def test_injective_maps_by_dimension(t):
    from math import comb
    counts = {}
    for g in injective_maps_into(t):
        counts[g.src.dim] = counts.get(g.src.dim, 0) + 1
    assert counts == {k: comb(t.dim, k) * 2 ** (t.dim - k) for k in range(t.dim + 1)}


@given(necklaces(5))
def test_spine_collapse_conditions_agree(t):
    for u in enumerate_necklaces(t.p):
        for m in necklace_maps(t, u):
            if m.is_active and m.is_surjective:
                a, b, c = spine_collapse_conditions(m)
                assert a == b == c


@given(necklace_maps_st(4))
def test_map_json_round_trip(m):
    assert NecklaceMap.from_json(m.to_json()) == m
    e = m.to_ext()
    assert ExtNecklaceMap.from_json(e.to_json()) == e
    assert Necklace.from_json(m.src.to_json()) == m.src


def test_necklace_rejects_bad_joints():
    with pytest.raises(NecklaceError):
        Necklace(3, (0, 2))
    with pytest.raises(NecklaceError):
        Necklace.from_beads([2, 0])
