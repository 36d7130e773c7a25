"""Products, coskeleta, mapping spaces: counts, universal property, Kan."""

import pytest

from loopspace.catalog import nerve_of_group, torus
from loopspace.groups import cyclic
from loopspace.levelwise import coskeleton, nary_product, product
from loopspace.fast import simplicial_maps
from loopspace.mapping import iso_search, kan_check, mapping_space
from loopspace.simplicial import (Ref, SimplicialSet, circle, point, standard,
                                  identity_map)

from oracles import product_nondeg_count, sset_homology


@pytest.mark.parametrize("a,b", [
    (circle(), circle()),
    (circle(), standard(2)),
    (nerve_of_group(cyclic(2), 3).sset, circle()),
])
def test_product_counts_match_shuffle_combinatorics(a, b):
    p = product(a, b, 3)
    s = p.presented.sset
    s.validate()
    s.check_identities()
    ca, cb = a.nondeg_counts(), b.nondeg_counts()
    for n in range(len(s.levels)):
        assert len(s.nondegenerate(n)) == product_nondeg_count(ca, cb, n)


def test_projections_are_simplicial_and_jointly_injective():
    a, b = circle(), standard(2)
    p = product(a, b, 3)
    p0, p1 = p.projection(0), p.projection(1)
    p0.validate()
    p1.validate()
    s = p.presented.sset
    for n in range(len(s.levels)):
        seen = set()
        for r in s.refs(n):
            key = (p0(r), p1(r))
            assert key not in seen
            seen.add(key)


def test_product_universal_property_pairing_exists_uniquely():
    a, b = circle(), circle()
    p = product(a, b, 2)
    t = circle()
    ident = identity_map(t)
    const = None
    # pairing of (id, id) is the diagonal; projections recover the inputs
    diag = p.pairing([ident, ident])
    assert diag.compose(p.projection(0)) == ident
    assert diag.compose(p.projection(1)) == ident
    # uniqueness: among all simplicial maps t -> product, exactly one has
    # these projections
    matches = [f for f in simplicial_maps(t, p.presented.sset)
               if f.compose(p.projection(0)) == ident
               and f.compose(p.projection(1)) == ident]
    assert len(matches) == 1


def test_nary_product_associates_count_wise():
    c = circle()
    triple = nary_product([c, c, c], 2)
    s = triple.presented.sset
    pair = product(c, c, 2).presented.sset
    again = product(pair, c, 2).presented.sset
    assert s.nondeg_counts() == again.nondeg_counts()


def test_coskeleton_zero_of_two_points_is_codiscrete():
    two = SimplicialSet([["a", "b"]], {}, name="2pts")
    cs = coskeleton(two, 0, 3).sset
    cs.validate()
    cs.check_identities()
    assert cs.nondeg_counts() == (2, 2, 2, 2)
    rep = kan_check(cs, 2)
    assert rep.is_kan
    # contractible: reduced homology vanishes in low degrees
    assert sset_homology(cs, 1) == (0, ())
    assert sset_homology(cs, 2) == (0, ())


def test_coskeleton_top_levels_add_nothing_new_below_the_bound():
    c = circle()
    cs = coskeleton(c, 2, 3).sset
    assert cs.nondeg_counts()[:2] == c.nondeg_counts()[:2]


def test_mapping_space_out_of_the_point_recovers_the_target():
    for y in (circle(), standard(2), torus(2).presented.sset):
        ms = mapping_space(point(), y, 2)
        f = iso_search(ms.sset, y)
        assert f is not None and f.is_iso()


def test_mapping_space_into_point_is_a_point():
    # source must be fully presented, so use finite-dimensional circle
    ms = mapping_space(circle(), point(), 2)
    assert ms.sset.nondeg_counts() == (1,)


def test_kan_check_flags_the_circle_at_dimension_two():
    rep = kan_check(circle(), 2)
    assert not rep.is_kan
    assert rep.unfillable
    d = rep.to_json()
    assert d["is_kan"] is False
