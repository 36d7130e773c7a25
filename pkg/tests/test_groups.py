"""Finite groups, presentations with certified orders, subgroup lattices."""

import pytest
from hypothesis import given, settings, strategies as st

from loopspace.errors import BudgetExceeded, InputError
from loopspace.groups import (FiniteGroup, GroupPresentation,
                              conjugacy_classes_of_subgroups, cyclic,
                              find_isomorphism, subgroups, symmetric,
                              trivial_group)

GROUPS = [("trivial", trivial_group()), ("z2", cyclic(2)), ("z3", cyclic(3)),
          ("z4", cyclic(4)), ("s3", symmetric(3))]


@pytest.mark.parametrize("name,g", GROUPS)
def test_group_axioms_validate(name, g):
    g.validate()


@given(st.sampled_from([g for _, g in GROUPS]), st.data())
@settings(max_examples=60, deadline=None)
def test_associativity_unit_inverse_sampled(g, data):
    a = data.draw(st.sampled_from(list(g.elements)))
    b = data.draw(st.sampled_from(list(g.elements)))
    c = data.draw(st.sampled_from(list(g.elements)))
    assert g.op(g.op(a, b), c) == g.op(a, g.op(b, c))
    assert g.op(g.unit, a) == a == g.op(a, g.unit)
    assert g.op(g.inv[a], a) == g.unit


def test_constructor_rejects_non_groups():
    with pytest.raises(InputError):
        FiniteGroup(["e", "x"], {("e", "e"): "e", ("e", "x"): "x",
                                 ("x", "e"): "x", ("x", "x"): "x"}, "e")


def test_certified_orders_of_standard_presentations():
    z = GroupPresentation(("a",), ())
    with pytest.raises(BudgetExceeded):
        z.certify_order(max_cosets=200)
    z2 = GroupPresentation(("a",), ((1, 1),))
    assert z2.certify_order() == 2
    s3 = GroupPresentation(("s", "t"),
                           ((1, 1), (2, 2), (1, 2, 1, 2, 1, 2)))
    assert s3.certify_order() == 6
    assert find_isomorphism(s3.permutation_group(), symmetric(3)) is not None


def test_witness_verification_certifies_isomorphism():
    z4 = GroupPresentation(("a",), ((1, 1, 1, 1),))
    target = cyclic(4)
    order4 = [x for x in target.elements
              if target.op(x, x) != target.unit and x != target.unit]
    w = z4.verify_witness(target, [order4[0]])
    assert w


def test_find_isomorphism_respects_structure_not_just_order():
    z4 = cyclic(4)
    klein_mult = {}
    els = ["e", "a", "b", "c"]
    table = {"e": {"e": "e", "a": "a", "b": "b", "c": "c"},
             "a": {"e": "a", "a": "e", "b": "c", "c": "b"},
             "b": {"e": "b", "a": "c", "b": "e", "c": "a"},
             "c": {"e": "c", "a": "b", "b": "a", "c": "e"}}
    for x in els:
        for y in els:
            klein_mult[(x, y)] = table[x][y]
    klein = FiniteGroup(els, klein_mult, "e", name="V4")
    assert find_isomorphism(z4, klein) is None
    assert find_isomorphism(z4, cyclic(4)) is not None
    iso = find_isomorphism(symmetric(3), symmetric(3))
    assert iso is not None and iso[symmetric(3).unit] == symmetric(3).unit


def test_subgroup_lattices_have_textbook_sizes():
    assert sorted(len(h) for h in subgroups(symmetric(3))) == [1, 2, 2, 2, 3, 6]
    assert sorted(len(h) for h in subgroups(cyclic(4))) == [1, 2, 4]
    assert [len(h) for h in conjugacy_classes_of_subgroups(symmetric(3))] == \
        [1, 2, 3, 6]


@pytest.mark.parametrize("name,g", GROUPS)
def test_subgroups_are_closed_under_the_operation(name, g):
    for h in subgroups(g):
        assert g.unit in h
        for a in h:
            assert g.inv[a] in h
            for b in h:
                assert g.op(a, b) in h
