"""Shared desk-scale examples.

Groups, small spaces, a nerve built straight from the one-object category
(independent of the simplicial-group machinery), a non-Segal counterexample
(the wedge of two circles sitting inside the torus), finite posets as
categories, and the relative-poset catalog used by the localization checks.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Sequence, Tuple

from .cats import FiniteCategory, nerve_of_category, one_object_category
from .delta import PreDeltaSpace
from .errors import InputError
from .groups import FiniteGroup, cyclic, symmetric, trivial_group
from .levelwise import Presented, ProductData, product
from .simplicial import Ref, SimplicialMap, SimplicialSet, circle, point


def groups() -> Dict[str, FiniteGroup]:
    return {"trivial": trivial_group(), "z2": cyclic(2), "z3": cyclic(3),
            "z4": cyclic(4), "s3": symmetric(3)}


def nerve_of_group(g: FiniteGroup, dim_bound: int) -> Presented:
    """Nerve of the one-object category on g; independent of EG/dG."""
    cat = one_object_category(g.elements, g.op, g.unit,
                              name=f"B{g.name or 'G'}")
    return nerve_of_category(cat, dim_bound)


def torus(dim_bound: int = 3) -> ProductData:
    return product(circle(), circle(), dim_bound)


def subcomplex(x: SimplicialSet, keep: Iterable,
               name: str = "") -> Tuple[SimplicialSet, SimplicialMap]:
    """The subcomplex on the given nondegenerate simplices, with inclusion."""
    keep = set(keep)
    for s in keep:
        if s not in x._dim_of:
            raise InputError(f"{s!r} is not a simplex of {x.name or 'x'}")
        if x._dim_of[s] > 0:
            for ref in x.faces[s]:
                if ref.base not in keep:
                    raise InputError(f"{s!r} has a face outside the subcomplex")
    levels = [[s for s in level if s in keep] for level in x.levels]
    faces = {s: x.faces[s] for s in keep if x._dim_of[s] > 0}
    basepoint = x.basepoint if x.basepoint in keep else None
    sub = SimplicialSet(levels, faces, complete_through=x.complete_through,
                        name=name or f"sub({x.name})", basepoint=basepoint)
    inc = SimplicialMap(sub, x, {s: Ref(s, ()) for s in keep})
    return sub, inc


def wedge_in_torus(dim_bound: int = 3):
    """The wedge of the two coordinate circles inside the torus.

    Returns (wedge, inclusion, torus product data); the wedge keeps the
    product's simplex ids, so the product's projections restrict to it."""
    prod = torus(dim_bound)
    c = prod.factors[0]
    keep = []
    for level in prod.presented.sset.levels:
        for sid in level:
            rt, rg = sid[1]
            if c._dim_of[rt.base] == 0 or c._dim_of[rg.base] == 0:
                keep.append(sid)
    return subcomplex(prod.presented.sset, keep, name="wedge") + (prod,)


def non_segal_example(dim_bound: int = 3) -> PreDeltaSpace:
    """A lawful pre-delta space whose level 2 is the wedge instead of the
    torus: the level-2 comparison map is injective but not surjective, so
    every Segal check at m = 2 must fail."""
    wedge, inc, prod = wedge_in_torus(dim_bound)
    x0 = point()
    x1 = prod.factors[0]

    def to_point(src: SimplicialSet) -> SimplicialMap:
        return SimplicialMap(src, x0,
                             {s: Ref("*", tuple(range(n - 1, -1, -1)))
                              for n, level in enumerate(src.levels)
                              for s in level})

    proj = [prod.projection(0), prod.projection(1)]

    def restricted(k: int) -> SimplicialMap:
        return SimplicialMap(wedge, x1,
                             {s: proj[k](Ref(s, ())) for level in wedge.levels
                              for s in level})

    def fold() -> SimplicialMap:
        assignment = {}
        for level in wedge.levels:
            for s in level:
                rt, rg = s[1]
                assignment[s] = rt if x1._dim_of[rt.base] > 0 else rg
        return SimplicialMap(wedge, x1, assignment)

    def insert(k: int) -> SimplicialMap:
        # s_k: the circle onto the k-th coordinate circle of the wedge
        assignment = {}
        for n, level in enumerate(x1.levels):
            for s in level:
                own = Ref(s, ())
                degenerate = Ref("v", tuple(range(n - 1, -1, -1)))
                pair = (degenerate, own) if k == 0 else (own, degenerate)
                assignment[s] = prod.presented.ref_of(n, pair)
        return SimplicialMap(x1, wedge, assignment)

    d_wedge = [restricted(1), fold(), restricted(0)]
    s_wedge = [insert(0), insert(1)]
    s_point = SimplicialMap(x0, x1, {"*": Ref("v", ())})
    return PreDeltaSpace([x0, x1, wedge],
                         [[], [to_point(x1), to_point(x1)], d_wedge],
                         [[s_point], s_wedge],
                         name="wedge-in-torus")


# ---------------------------------------------------------------------------
# posets as categories

def poset_category(objects: Sequence[str], covers: Sequence[Tuple[str, str]],
                   name: str = "") -> FiniteCategory:
    """The category of a finite poset given by covering relations; morphism
    ids read like "a<=b"."""
    le = {(x, x) for x in objects}
    for a, b in covers:
        if a not in set(objects) or b not in set(objects):
            raise InputError(f"cover ({a!r}, {b!r}) uses unknown objects")
        le.add((a, b))
    changed = True
    while changed:
        changed = False
        for (a, b) in list(le):
            for (c, d) in list(le):
                if b == c and (a, d) not in le:
                    le.add((a, d))
                    changed = True
    for (a, b) in le:
        if a != b and (b, a) in le:
            raise InputError(f"covers create a cycle through {a!r} and {b!r}")
    mid = {(a, b): f"{a}<={b}" for (a, b) in le}
    mors = sorted(mid.values())
    src = {mid[(a, b)]: a for (a, b) in le}
    tgt = {mid[(a, b)]: b for (a, b) in le}
    compose = {(mid[(a, b)], mid[(c, d)]): mid[(a, d)]
               for (a, b) in le for (c, d) in le if b == c}
    identity = {x: mid[(x, x)] for x in objects}
    return FiniteCategory(list(objects), mors, src, tgt, compose, identity,
                          name=name)


_POSET_SHAPES: List[Tuple[str, List[str], List[Tuple[str, str]]]] = [
    ("pt", ["a"], []),
    ("pair", ["a", "b"], []),
    ("arrow", ["a", "b"], [("a", "b")]),
    ("chain3", ["a", "b", "c"], [("a", "b"), ("b", "c")]),
    ("fork", ["a", "b", "c"], [("a", "b"), ("a", "c")]),
    ("cofork", ["a", "b", "c"], [("a", "c"), ("b", "c")]),
    ("arrow+pt", ["a", "b", "c"], [("a", "b")]),
    ("diamond", ["a", "b", "c", "d"],
     [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]),
    ("chain4", ["a", "b", "c", "d"],
     [("a", "b"), ("b", "c"), ("c", "d")]),
]


def relative_posets() -> List[Tuple[str, FiniteCategory, List[str]]]:
    """Every poset shape with every marking in the catalog: no marking, each
    single non-identity arrow, and all non-identity arrows."""
    out = []
    for name, objs, covers in _POSET_SHAPES:
        cat = poset_category(objs, covers, name=name)
        ids = set(cat.identity.values())
        nonid = [f for f in cat.morphisms if f not in ids]
        markings = [("ids", [])]
        markings += [(f"w[{f}]", [f]) for f in nonid]
        if nonid:
            markings.append(("all", nonid))
        for mname, weak in markings:
            out.append((f"{name}:{mname}", cat, list(weak)))
    return out
