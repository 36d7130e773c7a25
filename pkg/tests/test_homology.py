"""Integral homology cross-checked against an independent Smith normal form
pipeline, plus frozen classifying-space values."""

import pytest

from loopspace.catalog import nerve_of_group, torus
from loopspace.groups import cyclic, symmetric, trivial_group
from loopspace.homology import (homology, homology_group, homology_map_is_iso,
                                reduced_homology_vanishes)
from loopspace.simplicial import (boundary, circle, collapse, disjoint_union,
                                  face_closure, identity_map, point, standard)

from oracles import bar_homology, sset_homology


def spaces():
    return [
        ("point", point(), 2),
        ("circle", circle(), 2),
        ("delta3", standard(3), 3),
        ("sphere2", boundary(3), 2),
        ("torus", torus(3).presented.sset, 2),
        ("bz2", nerve_of_group(cyclic(2), 4).sset, 3),
        ("bz3", nerve_of_group(cyclic(3), 4).sset, 3),
        ("bs3", nerve_of_group(symmetric(3), 3).sset, 2),
    ]


@pytest.mark.parametrize("name,x,nmax", spaces(), ids=lambda v: v if isinstance(v, str) else "")
def test_homology_agrees_with_independent_snf(name, x, nmax):
    rep = homology(x, nmax)
    for k in range(nmax + 1):
        assert rep.groups[k] == sset_homology(x, k), f"{name} degree {k}"


def test_frozen_values_for_known_spaces():
    assert homology(circle(), 1).groups == ((1, ()), (1, ()))
    assert homology(boundary(3), 2).groups == ((1, ()), (0, ()), (1, ()))
    assert homology(torus(3).presented.sset, 2).groups == \
        ((1, ()), (2, ()), (1, ()))


def test_classifying_space_homology_matches_bar_resolution():
    for grp, nmax in ((cyclic(2), 3), (cyclic(3), 3), (symmetric(3), 2)):
        table = {(a, b): grp.op(a, b) for a in grp.elements
                 for b in grp.elements}
        x = nerve_of_group(grp, nmax + 1).sset
        rep = homology(x, nmax)
        for k in range(nmax + 1):
            assert rep.groups[k] == bar_homology(grp.elements, table,
                                                 grp.unit, k)


def test_reduced_homology_vanishing_detector():
    assert reduced_homology_vanishes(standard(3), through=2)
    assert not reduced_homology_vanishes(circle(), through=1)
    assert reduced_homology_vanishes(point(), through=1)


def test_homology_of_disjoint_union_adds_ranks():
    u, _, _ = disjoint_union(circle(), circle())
    rep = homology(u, 1)
    assert rep.groups[0] == (2, ())
    assert rep.groups[1] == (2, ())


def test_quotient_of_disk_boundary_is_a_two_sphere():
    x = standard(2)
    q, _ = collapse(x, face_closure(x, list(x.levels[1])))
    rep = homology(q, 2)
    assert rep.groups == ((1, ()), (0, ()), (1, ()))


def test_homology_group_accessor_matches_report():
    t = torus(3).presented.sset
    assert homology_group(t, 1) == (2, ())


def test_identity_induces_homology_isomorphisms():
    t = torus(3).presented.sset
    v = homology_map_is_iso(identity_map(t), 1)
    assert bool(v)


def test_collapse_of_contractible_subcomplex_preserves_homology():
    # collapsing one edge of the 2-sphere model changes nothing in H_*
    s2 = boundary(3)
    e = s2.levels[1][0]
    q, qmap = collapse(s2, face_closure(s2, [e]))
    assert homology(q, 2).groups == homology(s2, 2).groups
    for k in (0, 1, 2):
        assert bool(homology_map_is_iso(qmap, k))
