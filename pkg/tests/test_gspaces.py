"""Group actions on complexes: free/forget, Borel fibrations, monodromy,
change of group, ends of fiber functors."""

import pytest

from loopspace.fast import simplicial_maps
from loopspace.groups import (Homomorphism, cyclic, find_isomorphism,
                              symmetric, trivial_group)
from loopspace.gspaces import (GSet, SliceObject, borel, coset_gset,
                               covering_check, covering_monodromy,
                               discrete_gspace, end_of_regular,
                               equivariant_maps, forget, free, gset_iso,
                               induce, monodromy_M, monodromy_as_group_action,
                               natural_end, postcompose, pullback, restrict,
                               slice_maps, transitive_gsets, trivial_gspace)
from loopspace.mapping import iso_search
from loopspace.sgroups import constant, eg_dg
from loopspace.simplicial import Ref, point


@pytest.fixture(scope="module")
def s3():
    return symmetric(3)


@pytest.fixture(scope="module")
def z2():
    return cyclic(2)


def test_transitive_gsets_follow_the_subgroup_lattice(s3, z2):
    assert sorted(len(t.elements) for t in transitive_gsets(s3)) == [1, 2, 3, 6]
    assert sorted(len(t.elements) for t in transitive_gsets(z2)) == [1, 2]
    assert all(t.is_transitive() for t in transitive_gsets(s3))


def test_gset_iso_separates_non_isomorphic_actions(s3):
    ts = sorted(transitive_gsets(s3), key=lambda t: -len(t.elements))
    assert gset_iso(ts[0], ts[0]) is not None
    assert gset_iso(ts[1], ts[2]) is None
    w = gset_iso(ts[1], ts[1])
    assert w is not None and len(w) == len(ts[1].elements)


def test_coset_gset_of_whole_group_is_a_point(z2):
    t = coset_gset(z2, frozenset(z2.elements))
    assert len(t.elements) == 1


def test_free_forget_adjunction_bijection(z2):
    sgz2 = constant(z2, 2)
    pt = point()
    fr = free(pt, sgz2, 2)
    assert fr.t.nondeg_counts() == (2,)
    x2 = discrete_gspace(sgz2, ["a", "b"],
                         lambda g, x: x if g == z2.unit else
                         ("b" if x == "a" else "a"), 2, name="swap2")
    lhs = equivariant_maps(fr, x2)
    rhs = simplicial_maps(pt, forget(x2))
    assert len(lhs) == len(rhs) == 2


def test_change_of_group_adjunction_bijection(z2):
    sgz2 = constant(z2, 2)
    triv = constant(trivial_group(), 2)
    emb = [Homomorphism(triv.levels[n], sgz2.levels[n],
                        table={triv.levels[n].unit: z2.unit})
           for n in range(3)]
    pt_triv = trivial_gspace(triv, point(), 2)
    ind = induce(emb, pt_triv, sgz2)
    assert ind.t.nondeg_counts() == (2,)
    x2 = discrete_gspace(sgz2, ["a", "b"],
                         lambda g, x: x if g == z2.unit else
                         ("b" if x == "a" else "a"), 2)
    resx = restrict(emb, triv, x2)
    assert len(equivariant_maps(ind, x2)) == \
        len(equivariant_maps(pt_triv, resx)) == 2


def _roundtrip(grp, t, dim=2):
    sg = constant(grp, dim)
    egd = eg_dg(sg, dim)
    gt = discrete_gspace(sg, t.elements, t.act, dim, name=t.name)
    b = borel(gt, egd)
    cov = covering_check(b, dim)
    mono = monodromy_M(b, egd, covering=cov)
    mg = mono.gspace
    points = list(mg.t.levels[0])
    action = {g: {v: mg.act(0, g, Ref(v, ())).base for v in points}
              for g in grp.elements}
    mset = GSet(points, grp, action, name=f"M({t.name})")
    return b, mono, mset


def test_monodromy_of_borel_recovers_the_gset(s3):
    for t in transitive_gsets(s3):
        b, mono, mset = _roundtrip(s3, t)
        assert gset_iso(mset, t) is not None, t.name


def test_borel_of_monodromy_is_the_same_fibration(z2):
    for t in transitive_gsets(z2):
        b, mono, _ = _roundtrip(z2, t)
        egd = eg_dg(constant(z2, 2), 2)
        b2 = borel(mono.gspace, egd)
        f = iso_search(b2.total, b.total, over=(b2.p, b.p))
        assert f is not None and f.is_iso()


def test_covering_monodromy_presents_the_coset_action(s3):
    ts = [t for t in transitive_gsets(s3) if len(t.elements) == 3]
    t = ts[0]
    sg = constant(s3, 2)
    egd = eg_dg(sg, 2)
    gt = discrete_gspace(sg, t.elements, t.act, 2)
    b = borel(gt, egd)
    cov = covering_check(b, 2)
    assert cov.lifts_checked > 0
    cm = covering_monodromy(cov)
    assert len(cm.fiber) == 3
    ga = monodromy_as_group_action(cm, s3, lambda r: r.base[1][0])
    assert gset_iso(ga, t) is not None


def test_vertex_fibers_and_slice_self_maps(s3):
    t = [t for t in transitive_gsets(s3) if len(t.elements) == 3][0]
    sg = constant(s3, 2)
    egd = eg_dg(sg, 2)
    b = borel(discrete_gspace(sg, t.elements, t.act, 2), egd)
    fib = b.fiber(b.base.levels[0][0])
    assert fib.nondeg_counts() == (3,)
    assert len(slice_maps(b, b)) >= 1


def test_pullback_multiplies_fibers(s3):
    t = [t for t in transitive_gsets(s3) if len(t.elements) == 3][0]
    sg = constant(s3, 2)
    egd = eg_dg(sg, 2)
    b = borel(discrete_gspace(sg, t.elements, t.act, 2), egd)
    pb = pullback(b, b.p, 2)
    assert len(pb.fiber(pb.base.levels[0][0]).levels[0]) == 3
    over_y = postcompose(SliceObject(pb.to_total, name="pb"), b.p)
    assert len(over_y.fiber(b.base.levels[0][0]).levels[0]) == 9


@pytest.mark.parametrize("grp", [cyclic(2), cyclic(3), symmetric(3)],
                         ids=lambda g: g.name or "g")
def test_natural_end_recovers_the_group(grp):
    ne = natural_end(grp)
    assert ne.is_group
    assert ne.monoid_order == len(grp.elements)
    assert ne.comparison_iso


def test_natural_end_without_the_regular_object_differs(s3):
    ts = sorted(transitive_gsets(s3), key=lambda t: -len(t.elements))
    assert len(ts[0].elements) == 6
    ne = natural_end(s3, objects=ts[1:])
    assert not (ne.is_group and ne.monoid_order == 6 and ne.comparison_iso)


@pytest.mark.parametrize("grp", [cyclic(2), symmetric(3)],
                         ids=lambda g: g.name or "g")
def test_end_of_regular_comparison_is_levelwise_bijective(grp):
    rep = end_of_regular(constant(grp, 2), 2)
    assert rep.levelwise_iso
    assert [len(g) for g in rep.monoid.levels] == \
        [len(grp.elements)] * 3
