"""Bounded localization and hammock mapping spaces."""

import pytest

from loopspace.catalog import poset_category, relative_posets
from loopspace.cats import find_category_iso, one_object_category
from loopspace.errors import BudgetExceeded
from loopspace.localization import (Functor, Localization, RelativeCategory,
                                    dk_inverse_check, hammock_space,
                                    ho_localize)
from loopspace.groups import cyclic
from loopspace.simplicial import pi0_count


def interval():
    return poset_category(["0", "1"], [("0", "1")], name="interval")


def test_localizing_the_interval_at_its_arrow_gives_a_point_like_category():
    lc, stabilized = ho_localize(interval(), ["0<=1"], length_bound=4)
    assert stabilized
    for x in ("0", "1"):
        for y in ("0", "1"):
            assert len(lc.hom(x, y)) == 1


def test_interval_stabilizes_already_at_length_two():
    rc = RelativeCategory(interval(), ["0<=1"])
    loc = Localization(rc, 2)
    assert loc.stabilized


def test_localization_at_identities_is_isomorphic_to_the_category():
    chain = poset_category(["a", "b", "c"], [("a", "b"), ("b", "c")])
    lc, stabilized = ho_localize(chain, [], length_bound=4)
    assert stabilized
    assert find_category_iso(lc, chain) is not None


def test_localization_at_all_isomorphisms_changes_nothing():
    z2 = cyclic(2)
    cat = one_object_category(z2.elements, z2.op, z2.unit, name="BZ2")
    lc, stabilized = ho_localize(cat, list(cat.morphisms), length_bound=4)
    assert stabilized
    assert find_category_iso(lc, cat) is not None


def test_partial_marking_in_a_chain_collapses_only_the_marked_arrow():
    chain = poset_category(["0", "1", "2"], [("0", "1"), ("1", "2")])
    lc, stabilized = ho_localize(chain, ["0<=1"], length_bound=4)
    assert stabilized
    assert len(lc.hom("1", "0")) == 1       # the new inverse
    assert len(lc.hom("2", "0")) == 0       # still nothing backwards
    assert len(lc.hom("0", "2")) == 1


def test_hammock_pi0_matches_localized_hom_on_the_diamond():
    diamond = poset_category(list("abcd"),
                             [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
    weak = ["a<=b", "b<=d"]
    lc, stabilized = ho_localize(diamond, weak, length_bound=4)
    assert stabilized
    assert len(lc.hom("c", "c")) == 2       # a nontrivial localized loop
    for x in "abcd":
        for y in "abcd":
            hs = hammock_space(diamond, weak, x, y, length_bound=4,
                               dim_bound=2)
            assert pi0_count(hs) == len(lc.hom(x, y)), (x, y)


def test_hammock_spaces_are_valid_simplicial_sets():
    hs = hammock_space(interval(), ["0<=1"], "0", "0", length_bound=4,
                       dim_bound=2)
    hs.validate()
    hs.check_identities()
    assert pi0_count(hs) == 1


def test_empty_hom_gives_empty_hammock_space():
    pair = poset_category(["x", "y"], [])
    hs = hammock_space(pair, [], "x", "y", length_bound=4, dim_bound=1)
    assert all(len(lv) == 0 for lv in hs.levels)


def test_full_relative_poset_catalog_pi0_agrees_where_stabilized():
    seen_stable = 0
    for name, cat, weak in relative_posets():
        lc, stabilized = ho_localize(cat, weak, length_bound=4)
        if not stabilized:
            continue
        seen_stable += 1
        for x in cat.objects:
            for y in cat.objects:
                hs = hammock_space(cat, weak, x, y, length_bound=4,
                                   dim_bound=1)
                assert pi0_count(hs) == len(lc.hom(x, y)), (name, x, y)
    assert seen_stable >= 30    # nearly all stabilize at this bound


def test_word_enumeration_budget_is_enforced():
    diamond = poset_category(list("abcd"),
                             [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
    with pytest.raises(BudgetExceeded):
        ho_localize(diamond, ["a<=b", "b<=d"], length_bound=8, budget=2000)


def _interval_point_equivalence_data():
    c = interval()
    p = poset_category(["p"], [], name="pt")
    rc = RelativeCategory(c, ["0<=1"])
    rp = RelativeCategory(p, [])
    f = Functor(c, p, {"0": "p", "1": "p"},
                {m: "p<=p" for m in c.morphisms}, name="collapse")
    g = Functor(p, c, {"p": "0"}, {"p<=p": "0<=0"}, name="pick0")
    eta = {"0": "0<=0", "1": "0<=1"}
    eps = {"p": "p<=p"}
    return rc, rp, f, g, eta, eps


def test_dk_inverse_check_passes_on_the_interval_collapse():
    rc, rp, f, g, eta, eps = _interval_point_equivalence_data()
    verdict = dk_inverse_check(rc, rp, f, g, eta, eps, length_bound=4)
    assert verdict.ok and verdict.hypothesis_ok and verdict.stabilized
    assert verdict.failures == []


def test_dk_inverse_check_reports_unmarked_transformation_components():
    c = interval()
    rc = RelativeCategory(c, [])          # nothing marked now
    rp = RelativeCategory(poset_category(["p"], [], name="pt"), [])
    f = Functor(c, rp.cat, {"0": "p", "1": "p"},
                {m: "p<=p" for m in c.morphisms})
    g = Functor(rp.cat, c, {"p": "0"}, {"p<=p": "0<=0"})
    verdict = dk_inverse_check(rc, rp, f, g,
                               {"0": "0<=0", "1": "0<=1"}, {"p": "p<=p"},
                               length_bound=4)
    assert not verdict.ok and not verdict.hypothesis_ok
    assert any("not marked" in msg for msg in verdict.failures)


def test_dk_inverse_check_identity_equivalence_is_trivially_ok():
    c = interval()
    rc = RelativeCategory(c, ["0<=1"])
    ident = Functor(c, c, {o: o for o in c.objects},
                    {m: m for m in c.morphisms})
    eta = {o: c.identity[o] for o in c.objects}
    verdict = dk_inverse_check(rc, rc, ident, ident, eta, eta, length_bound=4)
    assert verdict.ok
