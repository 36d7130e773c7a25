"""The oracles themselves are checked against frozen textbook values before
anything else trusts them."""

import pytest

from loopspace.groups import cyclic, symmetric, trivial_group
from loopspace.simplicial import circle, point, standard

from oracles import (abelianization, bar_homology, edge_path_presentation,
                     one_vertex_edge_group, product_nondeg_count,
                     sset_homology)


def mult_table(g):
    return {(a, b): g.op(a, b) for a in g.elements for b in g.elements}


# frozen: H_*(Z/p) = Z, Z/p, 0, Z/p, 0, ... and H_*(1) = Z, 0, 0, ...
FROZEN_BAR = {
    "trivial": [(1, ()), (0, ()), (0, ()), (0, ())],
    "z2": [(1, ()), (0, (2,)), (0, ()), (0, (2,))],
    "z3": [(1, ()), (0, (3,)), (0, ()), (0, (3,))],
    "z4": [(1, ()), (0, (4,)), (0, ()), (0, (4,))],
}


@pytest.mark.parametrize("name,grp", [
    ("trivial", trivial_group()), ("z2", cyclic(2)),
    ("z3", cyclic(3)), ("z4", cyclic(4))])
def test_bar_homology_matches_frozen_values(name, grp):
    table = mult_table(grp)
    got = [bar_homology(grp.elements, table, grp.unit, n) for n in range(4)]
    assert got == FROZEN_BAR[name]


def test_bar_homology_s3_low_degrees():
    # frozen: H_1(S3) = Z/2 (abelianization), H_2(S3) = 0
    s3 = symmetric(3)
    table = mult_table(s3)
    assert bar_homology(s3.elements, table, s3.unit, 0) == (1, ())
    assert bar_homology(s3.elements, table, s3.unit, 1) == (0, (2,))
    assert bar_homology(s3.elements, table, s3.unit, 2) == (0, ())


def test_sset_homology_of_standard_simplices_is_trivial():
    for m in range(4):
        x = standard(m)
        assert sset_homology(x, 0) == (1, ())
        for n in range(1, m + 1):
            assert sset_homology(x, n) == (0, ())


def test_sset_homology_of_circle():
    c = circle()
    assert sset_homology(c, 0) == (1, ())
    assert sset_homology(c, 1) == (1, ())


def test_product_count_formula_on_known_shapes():
    # circle x circle: 1 vertex, 3 edges, 2 squares-worth of triangles
    assert product_nondeg_count((1, 1), (1, 1), 0) == 1
    assert product_nondeg_count((1, 1), (1, 1), 1) == 3
    assert product_nondeg_count((1, 1), (1, 1), 2) == 2
    assert product_nondeg_count((1, 1), (1, 1), 3) == 0
    # point x anything is anything
    for n, expected in enumerate((5, 4, 3)):
        assert product_nondeg_count((1,), (5, 4, 3), n) == expected


def test_edge_path_presentation_of_circle_is_free_rank_one():
    gens, rels = edge_path_presentation(circle())
    assert len(gens) == 1 and rels == []
    assert abelianization(len(gens), rels) == (1, ())


def test_edge_path_presentation_of_point_and_simplex_trivial():
    for x in (point(), standard(2)):
        gens, rels = edge_path_presentation(x)
        assert abelianization(len(gens), rels) == (0, ())


def test_one_vertex_edge_group_rejects_circle():
    # no 2-simplices, so no complete table
    assert one_vertex_edge_group(circle()) is None
