"""Constant simplicial groups, the EG construction, loop groups, Moore
homotopy."""

import pytest

from loopspace.errors import InputError
from loopspace.groups import cyclic, find_isomorphism, symmetric, trivial_group
from loopspace.homology import homology, reduced_homology_vanishes
from loopspace.sgroups import (constant, eg_dg, j_embed, loop_group,
                               moore_homotopy, pi0, underlying_sset)
from loopspace.simplicial import circle, point, standard

from oracles import (abelianization, edge_path_presentation,
                     one_vertex_edge_group, sset_homology)


@pytest.mark.parametrize("grp", [trivial_group(), cyclic(2), cyclic(3),
                                 symmetric(3)], ids=lambda g: g.name or "g")
def test_constant_simplicial_group_validates(grp):
    sg = constant(grp, 3)
    for n in range(4):
        assert len(sg.levels[n].elements) == len(grp.elements)


@pytest.mark.parametrize("grp", [cyclic(2), cyclic(3)],
                         ids=lambda g: g.name or "g")
def test_eg_quotient_is_the_classifying_space(grp):
    data = eg_dg(constant(grp, 4), 4)
    assert data.witness.is_iso()
    data.dg.sset.validate()
    data.eg.sset.validate()


@pytest.mark.parametrize("grp", [cyclic(2), cyclic(3)],
                         ids=lambda g: g.name or "g")
def test_eg_is_acyclic_through_the_bound(grp):
    data = eg_dg(constant(grp, 4), 4)
    assert reduced_homology_vanishes(data.eg.sset, through=3)
    # independently
    for k in (1, 2, 3):
        assert sset_homology(data.eg.sset, k) == (0, ())


def test_dg_sizes_are_group_powers():
    g = cyclic(3)
    data = eg_dg(constant(g, 3), 3)
    x = data.dg.sset
    for n in range(4):
        assert x.count(n) == 3 ** n


def test_loop_group_of_circle_is_free_of_rank_one():
    pres = pi0(loop_group(circle(), 1))
    assert len(pres.generators) == 1
    assert pres.relators == () or all(not r for r in pres.relators)
    gens, rels = edge_path_presentation(circle())
    assert abelianization(len(gens), rels) == (1, ())


@pytest.mark.parametrize("grp", [cyclic(2), symmetric(3)],
                         ids=lambda g: g.name or "g")
def test_loop_group_of_classifying_space_recovers_the_group(grp):
    x = eg_dg(constant(grp, 3), 3).dg.sset
    pres = pi0(loop_group(x, 1))
    assert pres.order == len(grp.elements)
    assert find_isomorphism(pres.permutation_group(), grp) is not None
    # one-vertex edge-path oracle agrees on the order
    table = one_vertex_edge_group(x)
    assert table is not None
    assert len(table["elements"]) == len(grp.elements)


def test_loop_group_needs_a_reduced_complex():
    with pytest.raises(InputError):
        loop_group(standard(1), 1)


def test_moore_homotopy_of_constant_group_is_concentrated_in_degree_zero():
    g = symmetric(3)
    homs = moore_homotopy(constant(g, 3), 2)
    assert find_isomorphism(homs[0], g) is not None
    for h in homs[1:]:
        assert len(h.elements) == 1


def test_underlying_complex_of_constant_group_validates():
    u = underlying_sset(constant(symmetric(3), 2), 2)
    u.sset.validate()
    u.sset.check_identities()
    assert u.sset.count(0) == 6


def test_underlying_complex_refuses_free_levels():
    # loop groups have levelwise-free (infinite) levels
    with pytest.raises(InputError):
        underlying_sset(loop_group(circle(), 2), 2)


def test_j_embedding_levels_are_group_powers():
    g = cyclic(2)
    j = j_embed(constant(g, 4), 3, dim_bound=3)
    assert j.levels[0].nondeg_counts() == (1,)
    for m in range(len(j.levels)):
        assert j.levels[m].count(0) == 2 ** m
