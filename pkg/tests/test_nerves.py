import pytest
from hypothesis import given, settings, strategies as st

from necknerve.chainalg import F2, QF, Field
from necknerve.enrichedcats import (
    acyclic_algebra, arrow_category, cubical_phi, discrete_cubical, dg_corpus, dual_numbers,
    functor_set, idempotent_two_category, locally_discrete, ordinal, phi, poset_category,
    two_group_z2, unit_algebra, zero_category,
)
from necknerve.neckcomb import Necklace
from necknerve.nerves import (
    NerveError, PosetNerveFrobenius, SwappedPosetFrobenius, TruncatedSSet,
    appendix_bijection_check, beta_nerve_count, comparison_splitting_check, dg_horn_lift_check,
    dg_retraction_probe, frobenius_check, module_nerve_low, nerve_apply, nerve_counts,
    nerve_degeneracies, nerve_faces, nerve_simplices, nerve_sset, quasicat_check,
    simplex_from_functor, std_poset_frobenius,
)
from necknerve.simpset import horn, std_simplex

D = Necklace.simplex


def test_const_nerve_of_the_arrow():
    assert nerve_counts("const", ordinal(1), 4) == {n: n + 2 for n in range(5)}


def test_duskin_nerve_of_locally_discrete_poset():
    assert nerve_counts("Dusk", locally_discrete(ordinal(2)), 2) == {0: 3, 1: 6, 2: 10}


def test_duskin_nerves_of_one_object_examples():
    assert nerve_counts("Dusk", two_group_z2(), 3) == {0: 1, 1: 1, 2: 2, 3: 8}
    assert nerve_counts("Dusk", idempotent_two_category(), 3) == {0: 1, 1: 1, 2: 2, 3: 10}


def test_dg_nerve_of_the_field():
    # only the edges carry free data; degenerate edges are pinned to the unit
    assert nerve_counts("dg", unit_algebra(F2), 3) == {0: 1, 1: 2, 2: 4, 3: 8}
    assert nerve_counts("dg", zero_category(F2), 2) == {0: 1, 1: 1, 2: 1}


def test_other_tags():
    assert nerve_counts("cub", cubical_phi(1, 1), 2) == {0: 2, 1: 3, 2: 4}
    assert nerve_counts("hc", phi("hc", 2), 2) == {0: 3, 1: 7, 2: 15}
    with pytest.raises(NerveError):
        nerve_simplices("nope", ordinal(1), 1)


def test_dg_face_is_precomposition_with_delta():
    # alpha'_{0,1} is alpha_{0,2} evaluated on delta_1, i.e. the (0, 2) component
    c = arrow_category(F2)
    for x in nerve_simplices("dg", c, 2):
        y = nerve_faces("dg", c, x, 1)
        assert y.get((0, 1)) == x.get((0, 2))


def test_degenerate_vertex_is_the_unit():
    c = ordinal(2)
    for x in nerve_simplices("const", c, 0):
        s = nerve_degeneracies("const", c, x, 0)
        assert s.get((0, 1)) == c.ident[x.objects[0]]


def test_nerve_apply_rejects_non_monotone():
    c = ordinal(1)
    x = nerve_simplices("const", c, 1)[0]
    with pytest.raises(NerveError):
        nerve_apply("const", c, x, (1, 0))


@pytest.mark.parametrize("tag,c", [
    ("const", ordinal(2)), ("Dusk", two_group_z2()), ("dg", arrow_category(F2)),
    ("dg", dual_numbers(F2)), ("cub", discrete_cubical(ordinal(1), 1)), ("hc", phi("hc", 1)),
])
def test_truncated_nerves_are_simplicial(tag, c):
    k = nerve_sset(tag, c, 3)
    rep = k.validate()
    assert rep["valid"], rep["failures"]


def test_quasicat_of_a_category():
    k = nerve_sset("const", ordinal(2), 3)
    rep = quasicat_check(k, 3)
    assert rep["ok"]
    assert all(r["unique"] == r["horns"] for r in rep["rows"])


def test_horn_is_not_a_quasicategory():
    rep = quasicat_check(TruncatedSSet.from_finsset(horn(2, 1).base, 2), 2)
    assert not rep["ok"] and rep["failures"][0]["n"] == 2


def test_duskin_nerve_of_a_two_group():
    k = nerve_sset("Dusk", two_group_z2(), 4)
    rep = quasicat_check(k, 4)
    assert rep["ok"]
    assert all(r["unique"] == r["horns"] for r in rep["rows"] if r["n"] >= 3)


def test_quasicat_needs_enough_levels():
    with pytest.raises(NerveError):
        quasicat_check(nerve_sset("const", ordinal(1), 2), 3)


@pytest.mark.parametrize("n,j", [(2, 1), (3, 1), (3, 2)])
def test_dg_horn_lifts(n, j):
    for c in (unit_algebra(QF), acyclic_algebra(QF), arrow_category(QF)):
        rep = dg_horn_lift_check(c, n, j)
        assert rep["ok"] and rep["agree"]
    rep = dg_horn_lift_check(zero_category(QF), n, j)
    assert rep["ok"]


def test_retraction_in_dimension_two():
    rep = dg_retraction_probe(2, 1)
    assert rep["solver_is_retraction"] and rep["solution_space_dim"] == 0
    assert rep["solution"] == {"top": {}, "delta_j": {"NecklaceMap(D1vD1->D2, (0, 1, 2))": 1}}


@pytest.mark.parametrize("n,j", [(2, 1), (3, 1), (3, 2), (4, 2)])
def test_retraction_variants(n, j):
    rep = dg_retraction_probe(n, j)
    assert rep["solver_is_retraction"]
    v = rep["variants"]
    # the formula as printed is a retraction but misses the nu_{j,n-j} term
    assert v["printed"] == {"retraction": True, "chain_map": False}
    assert v["plus_nu"] == {"retraction": True, "chain_map": True}


def test_retraction_probe_range():
    with pytest.raises(NerveError):
        dg_retraction_probe(2, 2)


def test_module_nerve_low():
    unit = module_nerve_low(unit_algebra(QF), "*", "*")
    assert (unit["N1"], unit["N2"]) == (1, 1)
    acyc = module_nerve_low(acyclic_algebra(QF), "*", "*")
    assert (acyc["N1"], acyc["N2"]) == (1, 2)
    zero = module_nerve_low(zero_category(QF), "*", "*")
    assert (zero["N1"], zero["N2"]) == (0, 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_comparison_splitting(n):
    rep = comparison_splitting_check(n)
    assert rep["ok"] and rep["injective"] and rep["quotient_acyclic"]


def test_comparison_splitting_range():
    with pytest.raises(NerveError):
        comparison_splitting_check(5)


def test_frobenius_on_poset_nerves():
    assert frobenius_check(std_poset_frobenius(2), 4)["ok"]
    sq = PosetNerveFrobenius([(a, b) for a in (0, 1) for b in (0, 1)],
                             lambda x, y: x[0] <= y[0] and x[1] <= y[1])
    assert frobenius_check(sq, 3)["ok"]


def test_swapped_frobenius_fails():
    bad = SwappedPosetFrobenius(range(3), lambda a, b: a <= b)
    rep = frobenius_check(bad, 3)
    assert not rep["ok"] and rep["failures"]


def test_frobenius_on_free_output():
    from necknerve.ladjoint import FreeFrobenius
    from necknerve.simpset import circle
    assert frobenius_check(FreeFrobenius(circle(), 3), 3)["ok"]
    assert frobenius_check(FreeFrobenius(std_simplex(2), 3), 3)["ok"]


def test_appendix_on_the_edge():
    rep = appendix_bijection_check(std_poset_frobenius(1), unit_algebra(F2), {0: "*", 1: "*"})
    assert rep["ok"] and rep["S1"] == rep["S2"] == 8
    # families violating the differential equation are present and excluded on both sides
    assert rep["differential_count"] < rep["S1"]


def test_appendix_with_dual_numbers():
    rep = appendix_bijection_check(std_poset_frobenius(1), dual_numbers(F2), {0: "*", 1: "*"})
    assert rep["ok"] and rep["S1"] == 128


def test_appendix_on_the_triangle():
    rep = appendix_bijection_check(std_poset_frobenius(2), unit_algebra(F2),
                                   {i: "*" for i in range(3)})
    assert rep["ok"] and rep["S1"] == 64


def test_appendix_with_arrow_category():
    rep = appendix_bijection_check(std_poset_frobenius(2), arrow_category(F2),
                                   {0: "a", 1: "a", 2: "b"})
    assert rep["ok"] and rep["S1"] == 2048


@pytest.mark.slow
def test_appendix_dual_numbers_on_the_triangle():
    rep = appendix_bijection_check(std_poset_frobenius(2), dual_numbers(F2),
                                   {i: "*" for i in range(3)})
    assert rep["ok"] and rep["S1"] == rep["S2"] == 2 ** 16
    assert rep["both_count"] == 4


def test_appendix_caps():
    with pytest.raises(NerveError):
        appendix_bijection_check(std_poset_frobenius(3), unit_algebra(F2), {i: "*" for i in range(4)})


@pytest.mark.parametrize("name", ["unit", "dual_numbers", "dual_numbers_deg0", "acyclic",
                                  "arrow", "arrow_split", "zero"])
def test_beta_families_count_dg_simplices(name):
    c = dg_corpus(F2)[name]
    for n in (0, 1, 2):
        assert beta_nerve_count(c, n) == len(nerve_simplices("dg", c, n))


@pytest.mark.parametrize("tag,c", [
    ("const", ordinal(2)), ("const", poset_category([0, 1, 2], lambda a, b: a == b or a == 0)),
    ("Dusk", locally_discrete(ordinal(1))), ("Dusk", two_group_z2()),
    ("dg", unit_algebra(F2)), ("dg", arrow_category(F2)), ("dg", dual_numbers(Field(3))),
    ("cub", discrete_cubical(ordinal(1), 1)),
])
def test_nerve_matches_functor_set(tag, c):
    for n in range(3):
        src = phi(tag, n, c.field) if tag == "dg" else phi(tag, n, kmax=1)
        fs = functor_set(src, c)
        got = {simplex_from_functor(tag, n, f) for f in fs}
        assert got == set(nerve_simplices(tag, c, n))


@settings(max_examples=25)
@given(st.sampled_from([("const", ordinal(2)), ("Dusk", two_group_z2()),
                        ("dg", arrow_category(F2)), ("dg", acyclic_algebra(F2))]),
       st.integers(1, 3), st.data())
def test_face_identities_on_random_simplices(case, n, data):
    tag, c = case
    xs = nerve_simplices(tag, c, n)
    x = data.draw(st.sampled_from(xs))
    i = data.draw(st.integers(0, n - 1))
    j = data.draw(st.integers(i + 1, n))
    if n >= 2:
        lhs = nerve_faces(tag, c, nerve_faces(tag, c, x, j), i)
        rhs = nerve_faces(tag, c, nerve_faces(tag, c, x, i), j - 1)
        assert lhs == rhs
    s = nerve_degeneracies(tag, c, x, i)
    assert nerve_faces(tag, c, s, i) == x == nerve_faces(tag, c, s, i + 1)
