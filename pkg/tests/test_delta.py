"""Segal conditions, pi0 monoids, loop spaces, and the counit comparison."""

import pytest

from loopspace.catalog import non_segal_example, poset_category
from loopspace.cats import find_category_iso, one_object_category
from loopspace.delta import (counit_compare, enriched_to_precategory,
                             ho_category, loops, pi0_structure,
                             pi1_presentation, precategory_of_category,
                             segal_check)
from loopspace.errors import InputError
from loopspace.groups import cyclic, find_isomorphism, symmetric, trivial_group
from loopspace.sgroups import constant, eg_dg, j_embed
from loopspace.simplicial import circle

from oracles import abelianization, edge_path_presentation

GROUPS = [trivial_group(), cyclic(2), cyclic(3), cyclic(4), symmetric(3)]


@pytest.mark.parametrize("grp", GROUPS, ids=lambda g: g.name or "g")
def test_j_embedded_groups_satisfy_exact_segal_conditions(grp):
    j = j_embed(constant(grp, 4), 4, dim_bound=2)
    for m in range(1, 5):
        rep = segal_check(j, m)
        assert rep.verdict == "iso", (grp.name, m)
        assert rep.to_json()["verdict"] == "iso"


def test_segal_check_rejects_out_of_range_levels():
    j = j_embed(constant(cyclic(2), 2), 2, dim_bound=2)
    with pytest.raises(InputError):
        segal_check(j, 0)
    with pytest.raises(InputError):
        segal_check(j, 3)


def test_constructed_counterexample_fails_the_segal_check():
    ns = non_segal_example(3)
    ns.validate()
    rep = segal_check(ns, 2)
    assert rep.verdict == "failed"
    assert not rep.is_iso


def test_nerves_of_categories_are_segal():
    interval = poset_category(["0", "1"], [("0", "1")])
    pre = precategory_of_category(interval, 2)
    for m in (1, 2):
        assert segal_check(pre, m).verdict in ("iso", "equivalence")
    diamond = poset_category(list("abcd"),
                             [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
    pre2 = precategory_of_category(diamond, 2)
    assert segal_check(pre2, 2).verdict in ("iso", "equivalence")


def test_enriched_data_roundtrips_through_homotopy_category():
    z3 = cyclic(3)
    cat = one_object_category(z3.elements, z3.op, z3.unit, name="BZ3")
    pre = precategory_of_category(cat, 2)
    ho = ho_category(pre)
    witness = find_category_iso(ho, cat)
    assert witness is not None


def test_enriched_to_precategory_validates_composition():
    z2 = cyclic(2)
    cat = one_object_category(z2.elements, z2.op, z2.unit, name="BZ2")
    pre = precategory_of_category(cat, 2)
    again = enriched_to_precategory(pre.objects, pre.homs, pre.compose,
                                    pre.units, 2)
    assert segal_check(again, 2).verdict in ("iso", "equivalence")


@pytest.mark.parametrize("grp", [cyclic(2), symmetric(3)],
                         ids=lambda g: g.name or "g")
def test_pi0_of_loops_on_classifying_space_is_the_group(grp):
    x = eg_dg(constant(grp, 4), 4).dg.sset
    l = loops(x, x.levels[0][0], 2, 2)
    st = pi0_structure(l)
    assert st.is_group
    assert find_isomorphism(st.group, grp) is not None


def test_pi0_structure_refuses_unbounded_composition():
    l = loops(circle(), "v", 2, 2)
    with pytest.raises(InputError):
        pi0_structure(l)


@pytest.mark.parametrize("grp", [cyclic(2), symmetric(3)],
                         ids=lambda g: g.name or "g")
def test_counit_comparison_certificate(grp):
    x = eg_dg(constant(grp, 4), 4).dg.sset
    cert = counit_compare(x, x.levels[0][0], m_bound=2, homology_bound=2)
    assert cert.ok
    assert cert.pi0_bijective
    assert cert.pi1_iso
    assert cert.homology_through >= 1 and cert.homology_ok


def test_pi1_presentation_of_torus_abelianizes_to_rank_two():
    from loopspace.catalog import torus
    t = torus(3).presented.sset
    pres = pi1_presentation(t)
    got = abelianization(len(pres.generators), pres.relators)
    gens, rels = edge_path_presentation(t)
    assert got == abelianization(len(gens), rels) == (2, ())


def test_pi1_presentation_of_classifying_space_matches_group_order():
    pres = pi1_presentation(eg_dg(constant(cyclic(4), 2), 2).dg.sset)
    assert pres.order == 4
