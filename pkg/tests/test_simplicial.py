"""Normal forms, simplicial identities, quotients, unions, pi0."""

import math

import pytest
from hypothesis import given, settings, strategies as st

from loopspace.catalog import nerve_of_group, torus
from loopspace.errors import InputError
from loopspace.groups import cyclic, symmetric
from loopspace.simplicial import (Ref, SimplicialMap, SimplicialSet, boundary,
                                  circle, collapse, delta_ref, disjoint_union,
                                  face_closure, horn, identity_map,
                                  is_subcomplex, pi0_components, pi0_count,
                                  point, standard, valid_words)


def catalog():
    return [point(), circle(), standard(2), standard(3), boundary(3),
            horn(2, 1), nerve_of_group(cyclic(2), 4).sset,
            nerve_of_group(symmetric(3), 3).sset, torus(3).presented.sset]


@pytest.mark.parametrize("x", catalog(), ids=lambda x: x.name or "x")
def test_simplicial_identities_hold_exhaustively(x):
    x.validate()
    x.check_identities()


@pytest.mark.parametrize("x", catalog(), ids=lambda x: x.name or "x")
def test_level_counts_match_degeneracy_word_combinatorics(x):
    # every n-simplex is s_U applied to a unique nondegenerate p-simplex,
    # U ranging over (n-p)-subsets of {0..n-1}
    counts = x.nondeg_counts()
    for n in range(len(x.levels)):
        expected = sum(c * math.comb(n, n - p) for p, c in enumerate(counts)
                       if p <= n)
        assert x.count(n) == expected
        assert len(x.refs(n)) == expected


@given(st.data())
@settings(max_examples=80, deadline=None)
def test_faces_and_degeneracies_of_standard_refs_edit_vertex_lists(data):
    m = data.draw(st.integers(0, 4))
    n = data.draw(st.integers(0, 4))
    vs = tuple(sorted(data.draw(
        st.lists(st.integers(0, m), min_size=n + 1, max_size=n + 1))))
    x = standard(m)
    r = delta_ref(vs)
    assert x.dim_of(r) == n
    for i in range(n + 1):
        s = x.degeneracy(r, i)
        assert s == delta_ref(vs[:i + 1] + vs[i:])
    if n >= 1:
        for i in range(n + 1):
            f = x.face(r, i)
            assert f == delta_ref(vs[:i] + vs[i + 1:])
    for i in range(n + 1):
        assert x.vertex(r, i) == delta_ref((vs[i],))


@given(st.integers(0, 3), st.integers(0, 3))
@settings(max_examples=40, deadline=None)
def test_valid_words_are_strictly_decreasing_and_counted(base_dim, length):
    words = list(valid_words(base_dim, length))
    for w in words:
        assert all(a > b for a, b in zip(w, w[1:]))
        assert all(0 <= i <= base_dim + k for k, i in
                   enumerate(reversed(w)))
    assert len(words) == math.comb(base_dim + length, length)


def test_apply_word_agrees_with_iterated_degeneracy():
    x = circle()
    r = Ref("e", ())
    assert x.apply_word(r, (1, 0)) == x.degeneracy(x.degeneracy(r, 0), 1)


def test_collapsing_everything_gives_a_point():
    x = standard(2)
    q, qmap = collapse(x, face_closure(x, [(0, 1, 2)]))
    assert q.nondeg_counts() == (1,)
    qmap.validate()
    c = circle()
    q2, _ = collapse(c, face_closure(c, c.levels[1]))
    assert pi0_count(q2) == 1
    assert q2.nondeg_counts()[0] == 1


def test_collapse_boundary_of_triangle_makes_a_sphere_like_quotient():
    x = standard(2)
    q, qmap = collapse(x, face_closure(x, list(x.levels[1])))
    q.validate()
    q.check_identities()
    assert q.nondeg_counts()[0] == 1


def test_disjoint_union_adds_components_and_keeps_inclusions_valid():
    u, inx, iny = disjoint_union(circle(), point())
    u.validate()
    inx.validate()
    iny.validate()
    assert pi0_count(u) == 2
    comp = pi0_components(u)
    assert len(set(comp.values())) == 2


def test_face_closure_yields_subcomplexes():
    t = torus(3).presented.sset
    seed = t.levels[2][0]
    closed = face_closure(t, [seed])
    assert is_subcomplex(t, closed)
    assert not is_subcomplex(t, {seed})


def test_simplicial_map_validation_rejects_non_simplicial_assignments():
    c = circle()
    p = point()
    with pytest.raises((InputError, Exception)):
        SimplicialMap(c, p, {"v": Ref("pt", ()),
                             "e": Ref("nonsense", ())}, check=True)


def test_identity_map_and_iso_roundtrip():
    t = torus(2).presented.sset
    ident = identity_map(t)
    assert ident.is_iso()
    inv = ident.inverse()
    assert inv(Ref(t.levels[0][0], ())) == Ref(t.levels[0][0], ())


def test_constructor_rejects_wrong_face_dimensions():
    with pytest.raises(InputError):
        SimplicialSet([["v"], ["e"]],
                      {"e": (Ref("v", ()),)})  # needs two faces
