"""Group actions on simplicial sets and the covering/monodromy round trips.

GSimplicialSet stores a levelwise action of a simplicial group, validated
exhaustively.  On top of it:

  free / forget          T x G with left translation; the underlying set
  equivariant_maps       exhaustive Hom_G, used for the adjunction checks
  borel                  (T x EG)/G with its map to dG = EG/G, by g_0 = e
                         orbit representatives
  covering_check         unique-lifting certificate for a slice object
  monodromy_M            sections over dG out of EG (covering mode), with
                         the translation action; canonically the vertex
                         fiber with its monodromy
  change_of_group        restriction along a levelwise homomorphism and its
                         left adjoint (T x H)/G
  pullback/postcompose   base change in the slice, plus vertex fibers
  covering_monodromy     the fiber as a pi1-presentation set, relators
                         verified to act trivially
  natural_end            endomorphisms of the forgetful functor on a finite
                         list of G-sets, with the comparison to G
  end_of_regular         levelwise equivariant self-maps of the regular
                         object, opposite composition, comparison from G
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InputError, VerificationError
from .fast import simplicial_maps
from .groups import (FiniteGroup, GroupPresentation, Homomorphism,
                     conjugacy_classes_of_subgroups)
from .levelwise import Levelwise, Presented, ProductData, present, product
from .sgroups import EGData, SimplicialGroup, eg_dg, loop_group, pi0, underlying_sset
from .simplicial import Ref, SimplicialMap, SimplicialSet, disjoint_union


class GSimplicialSet:
    """A simplicial set with a levelwise action of a simplicial group.

    tables[n] maps (g, ref) to a ref for every g in G_n and every n-simplex;
    validation checks the unit and associativity laws and that the action
    commutes with faces and degeneracies."""

    def __init__(self, sg: SimplicialGroup, t: SimplicialSet,
                 tables: Sequence[Dict], dim_bound: int, name: str = "",
                 check: bool = True):
        self.sg = sg
        self.t = t
        self.tables = list(tables)
        self.dim_bound = dim_bound
        self.name = name
        if check:
            self.validate()

    def act(self, n: int, g, r: Ref) -> Ref:
        return self.tables[n][(g, r)]

    def validate(self):
        if self.dim_bound > self.sg.level_bound:
            raise InputError("action bound beyond the group's levels")
        self.t.require_levels(self.dim_bound, "group action")
        for n in range(self.dim_bound + 1):
            grp = self.sg.levels[n]
            if not isinstance(grp, FiniteGroup):
                raise InputError("actions need finite group levels")
            refs = self.t.refs(n)
            want = {(g, r) for g in grp.elements for r in refs}
            if set(self.tables[n]) != want:
                raise InputError(f"action table at level {n} has wrong domain")
            for r in refs:
                if self.act(n, grp.unit, r) != r:
                    raise InputError(f"unit acts nontrivially at level {n}")
            for g in grp.elements:
                for h in grp.elements:
                    gh = grp.op(g, h)
                    for r in refs:
                        if self.act(n, g, self.act(n, h, r)) != self.act(n, gh, r):
                            raise InputError(f"action not associative at level {n}")
        for n in range(1, self.dim_bound + 1):
            grp = self.sg.levels[n]
            for g in grp.elements:
                for r in self.t.refs(n):
                    gr = self.act(n, g, r)
                    for i in range(n + 1):
                        lhs = self.t.face(gr, i)
                        rhs = self.act(n - 1, self.sg.face(n, i, g), self.t.face(r, i))
                        if lhs != rhs:
                            raise InputError(f"action does not commute with d_{i} "
                                             f"at level {n}")
        for n in range(self.dim_bound):
            grp = self.sg.levels[n]
            for g in grp.elements:
                for r in self.t.refs(n):
                    gr = self.act(n, g, r)
                    for i in range(n + 1):
                        lhs = self.t.degeneracy(gr, i)
                        rhs = self.act(n + 1, self.sg.degeneracy(n, i, g),
                                       self.t.degeneracy(r, i))
                        if lhs != rhs:
                            raise InputError(f"action does not commute with s_{i} "
                                             f"at level {n}")

    def __repr__(self):
        return f"GSimplicialSet({self.name or 'anon'}, through {self.dim_bound})"


def action_tables(sg: SimplicialGroup, t: SimplicialSet, fn, dim_bound: int):
    """Tables from a function (n, g, ref) -> ref."""
    tables = []
    for n in range(dim_bound + 1):
        grp = sg.levels[n]
        tables.append({(g, r): fn(n, g, r)
                       for g in grp.elements for r in t.refs(n)})
    return tables


def trivial_gspace(sg: SimplicialGroup, t: SimplicialSet, dim_bound: int,
                   name: str = "") -> GSimplicialSet:
    return GSimplicialSet(sg, t, action_tables(sg, t, lambda n, g, r: r, dim_bound),
                          dim_bound, name=name or f"triv({t.name})")


def discrete_gspace(sg: SimplicialGroup, points: Sequence, act0,
                    dim_bound: int, name: str = "") -> GSimplicialSet:
    """Constant action: a plain set with a G_0 action, extended by letting
    g act through its 0th vertex on total degeneracies."""
    t = SimplicialSet([list(points)], {}, name=name or "discrete")

    def vertex0(n, g):
        for k in range(n, 0, -1):
            g = sg.face(k, k, g)
        return g

    def fn(n, g, r):
        return Ref(act0(vertex0(n, g), r.base), r.word)

    return GSimplicialSet(sg, t, action_tables(sg, t, fn, dim_bound), dim_bound,
                          name=name or "discrete")


# ---------------------------------------------------------------------------
# free/forget

class FreeGSpace(GSimplicialSet):
    def __init__(self, sg, prod: ProductData, ug: Presented, dim_bound, name="",
                 check=True):
        self.prod = prod
        self.ug = ug

        def fn(n, g, r):
            rt, rg = prod.presented.elem_of(r)
            x = ug.elem_of(rg)
            shifted = ug.ref_of(n, sg.levels[n].op(g, x))
            return prod.presented.ref_of(n, (rt, shifted))

        tables = action_tables(sg, prod.sset, fn, dim_bound)
        super().__init__(sg, prod.sset, tables, dim_bound, name=name, check=check)

    def unit_section(self) -> SimplicialMap:
        """T -> T x G, t |-> (t, e); the adjunction unit."""
        base = self.prod.factors[0]
        unit = self.ug.ref_of(0, self.sg.levels[0].unit)
        assignment = {}
        for n, level in enumerate(base.levels):
            for s in level:
                ge = Ref(unit.base, tuple(range(n - 1, -1, -1)))
                assignment[s] = self.prod.presented.ref_of(n, (Ref(s, ()), ge))
        return SimplicialMap(base, self.t, assignment, check=True)


def free(t: SimplicialSet, sg: SimplicialGroup, dim_bound: int,
         name: str = "") -> FreeGSpace:
    """T x G with G acting by left translation on the right factor."""
    ug = underlying_sset(sg, dim_bound)
    prod = product(t, ug.sset, dim_bound)
    return FreeGSpace(sg, prod, ug, dim_bound,
                      name=name or f"free({t.name or '?'})")


def forget(gt: GSimplicialSet) -> SimplicialSet:
    return gt.t


def equivariant_maps(a: GSimplicialSet, b: GSimplicialSet,
                     budget: Optional[int] = None) -> List[SimplicialMap]:
    """All simplicial maps commuting with the actions, by filtering the
    exhaustive map enumeration."""
    bound = min(a.dim_bound, b.dim_bound)
    out = []
    for f in simplicial_maps(a.t, b.t, budget=budget):
        ok = True
        for n in range(bound + 1):
            grp = a.sg.levels[n]
            for g in grp.elements:
                for r in a.t.refs(n):
                    if f(a.act(n, g, r)) != b.act(n, g, f(r)):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            out.append(f)
    return out


# ---------------------------------------------------------------------------
# slices, coverings

class SliceObject:
    """A simplicial map regarded as an object over its target."""

    def __init__(self, p: SimplicialMap, name: str = ""):
        self.p = p
        self.name = name

    @property
    def total(self) -> SimplicialSet:
        return self.p.source

    @property
    def base(self) -> SimplicialSet:
        return self.p.target

    def fiber(self, vertex) -> SimplicialSet:
        """The subcomplex over the total degeneracies of a base vertex."""
        vertex = vertex.base if isinstance(vertex, Ref) else vertex
        levels = []
        keep = set()
        for n, level in enumerate(self.total.levels):
            sel = []
            for s in level:
                img = self.p(Ref(s, ()))
                if img.base == vertex and len(img.word) == n:
                    sel.append(s)
                    keep.add(s)
            levels.append(sel)
        faces = {s: self.total.faces[s] for s in keep if s in self.total.faces}
        return SimplicialSet(levels, faces, complete_through=self.total.complete_through,
                             name=f"fiber({self.name or '?'}|{vertex!r})")

    def __repr__(self):
        return (f"SliceObject({self.total.name or '?'} -> "
                f"{self.base.name or '?'})")


def slice_maps(a: SliceObject, b: SliceObject,
               budget: Optional[int] = None) -> List[SimplicialMap]:
    """All maps of totals strictly over the common base."""
    if a.base is not b.base:
        raise InputError("slice maps need a shared base object")
    out = []
    for f in simplicial_maps(a.total, b.total, budget=budget):
        if f.compose(b.p) == a.p:
            out.append(f)
    return out


def slice_disjoint_union(a: SliceObject, b: SliceObject) -> SliceObject:
    if a.base is not b.base:
        raise InputError("disjoint union needs a shared base object")
    du, inl, inr = disjoint_union(a.total, b.total)
    assignment = {}
    for s, img in a.p.assignment.items():
        assignment[inl(Ref(s, ())).base] = img
    for s, img in b.p.assignment.items():
        assignment[inr(Ref(s, ())).base] = img
    p = SimplicialMap(du, a.base, assignment, check=True)
    return SliceObject(p, name=f"{a.name or '?'}+{b.name or '?'}")


@dataclass
class CoveringData:
    """A slice object together with a verified unique-lifting certificate."""
    slice: SliceObject
    dim: int
    lifts_checked: int

    @property
    def p(self) -> SimplicialMap:
        return self.slice.p


def covering_check(y: SliceObject, dim: int) -> CoveringData:
    """Verify unique lifting: every simplex of the base, any lift of any one
    of its vertices, exactly one compatible lift of the simplex."""
    s = y.base
    s.require_levels(dim, "covering check")
    y.total.require_levels(dim, "covering check")
    fibers: Dict[object, List] = {}
    for v in y.total.nondegenerate(0):
        fibers.setdefault(y.p(Ref(v, ())).base, []).append(v)
    checked = 0
    for n in range(1, dim + 1):
        by_image: Dict[Ref, List[Ref]] = {}
        for r in y.total.refs(n):
            by_image.setdefault(y.p(r), []).append(r)
        for sigma in s.refs(n):
            lifts = by_image.get(sigma, [])
            for i in range(n + 1):
                base_v = s.vertex(sigma, i).base
                for v in fibers.get(base_v, []):
                    count = sum(1 for r in lifts
                                if y.total.vertex(r, i).base == v)
                    checked += 1
                    if count != 1:
                        raise VerificationError(
                            f"lifting fails over {sigma} at vertex {i}: "
                            f"{count} lifts through {v!r}")
    return CoveringData(y, dim, checked)


# ---------------------------------------------------------------------------
# Borel construction

class BorelLevelwise(Levelwise):
    """(T x EG)/G by representatives whose EG component starts at the unit."""

    def __init__(self, gt: GSimplicialSet):
        self.gt = gt
        self.sg = gt.sg

    def elements(self, n: int):
        grp = self.sg.levels[n]
        for r in self.gt.t.refs(n):
            for tail in itertools.product(grp.elements, repeat=n):
                yield (r, (grp.unit,) + tail)

    def _norm(self, n: int, r: Ref, y: Tuple) -> Tuple:
        grp = self.sg.levels[n]
        lead = grp.inverse(y[0])
        return (self.gt.act(n, lead, r), tuple(grp.op(lead, g) for g in y))

    def face(self, n: int, x, i: int):
        r, y = x
        hom = self.sg.face_homs[n][i]
        z = tuple(hom(g) for g in y)
        z = z[:i] + z[i + 1:]
        return self._norm(n - 1, self.gt.t.face(r, i), z)

    def degeneracy(self, n: int, x, i: int):
        r, y = x
        hom = self.sg.deg_homs[n][i]
        z = tuple(hom(g) for g in y)
        z = z[:i] + (z[i],) + z[i:]
        return self._norm(n + 1, self.gt.t.degeneracy(r, i), z)


class BorelSlice(SliceObject):
    def __init__(self, gt: GSimplicialSet, egdata: EGData,
                 presented: Presented, p: SimplicialMap):
        self.gt = gt
        self.egdata = egdata
        self.presented = presented
        super().__init__(p, name=f"D({gt.name or '?'})")


def borel(gt: GSimplicialSet, egdata: Optional[EGData] = None) -> BorelSlice:
    """(T x EG)/G with the induced map to dG."""
    if egdata is None:
        egdata = eg_dg(gt.sg, gt.dim_bound)
    bound = min(gt.dim_bound, egdata.dim_bound)
    grp0 = gt.sg.levels[0]
    bp = None
    if gt.t.basepoint is not None:
        bp = (Ref(gt.t.basepoint, ()), (grp0.unit,))
    pres = present(BorelLevelwise(gt), bound, name=f"D({gt.name or '?'})",
                   basepoint_elem=bp)

    def to_base(n, x):
        _, y = x
        grp = gt.sg.levels[n]
        return tuple(grp.op(grp.inverse(y[k]), y[k + 1]) for k in range(n))

    p = pres.map_by_elements(egdata.dg, to_base, check=True)
    return BorelSlice(gt, egdata, pres, p)


# ---------------------------------------------------------------------------
# monodromy via sections of EG

class MonodromyData:
    """Sections over dG out of EG, for a covering slice; levelwise constant
    with G acting by translation of the source."""

    def __init__(self, gspace: GSimplicialSet, sections: Dict,
                 covering: CoveringData):
        self.gspace = gspace
        self.sections = sections      # fiber vertex -> {EG sid -> total ref}
        self.covering = covering


def monodromy_M(y: SliceObject, egdata: EGData,
                covering: Optional[CoveringData] = None) -> MonodromyData:
    """Hom_over-dG(EG, Y) with its translation action.  Exact only when Y is
    a covering, where unique lifting determines each section from its value
    on one vertex; refuses otherwise."""
    bound = egdata.dim_bound
    if covering is None:
        covering = covering_check(y, bound)
    if y.base is not egdata.dg.sset:
        raise InputError("monodromy needs a slice over this dG model")
    eg = egdata.eg
    sg = egdata.sg
    base_vertex = egdata.dg.sset.levels[0][0]
    fiber = [v for v in y.total.nondegenerate(0)
             if y.p(Ref(v, ())).base == base_vertex]
    by_image: Dict[int, Dict[Ref, List[Ref]]] = {}
    for n in range(1, bound + 1):
        d: Dict[Ref, List[Ref]] = {}
        for r in y.total.refs(n):
            d.setdefault(y.p(r), []).append(r)
        by_image[n] = d

    unit_vertex = eg.ref_of(0, (sg.levels[0].unit,))
    sections: Dict[object, Dict] = {}
    for v in fiber:
        sec: Dict[Ref, Ref] = {unit_vertex: Ref(v, ())}
        # vertices of EG: transport along the edge from the unit vertex
        for g in sg.levels[0].elements:
            if g == sg.levels[0].unit:
                continue
            e_ref = eg.ref_of(1, (sg.levels[1].unit, sg.degeneracy(0, 0, g)))
            img = egdata.q(e_ref)
            lifts = [r for r in by_image[1].get(img, [])
                     if y.total.face(r, 1) == Ref(v, ())]
            if len(lifts) != 1:
                raise VerificationError("covering certificate broken: vertex "
                                        "transport is not unique")
            sec[eg.ref_of(0, (g,))] = y.total.face(lifts[0], 0)
        # higher simplices: lift from the 0th vertex, then check every face
        for n in range(1, bound + 1):
            for sid in eg.sset.levels[n]:
                r = Ref(sid, ())
                v0 = sec[eg.sset.vertex(r, 0)]
                sigma = egdata.q(r)
                lifts = [c for c in by_image[n].get(sigma, [])
                         if y.total.vertex(c, 0) == v0]
                if len(lifts) != 1:
                    raise VerificationError("covering certificate broken: "
                                            f"simplex lift not unique at level {n}")
                sec[r] = lifts[0]
            for sid in eg.sset.levels[n]:
                r = Ref(sid, ())
                for i in range(n + 1):
                    want = eg.sset.face(r, i)
                    img = sec[want] if not want.word else \
                        y.total.apply_word(sec[Ref(want.base, ())], want.word)
                    if y.total.face(sec[r], i) != img:
                        raise VerificationError("section is inconsistent; input "
                                                "is not a covering")
        sections[v] = sec

    def act0(g, v):
        target = eg.ref_of(0, (sg.levels[0].inverse(g),))
        out = sections[v][target] if not target.word else None
        return out.base

    gs = discrete_gspace(sg, sorted(fiber, key=str), act0, bound,
                         name=f"M({y.name or '?'})")
    return MonodromyData(gs, sections, covering)


# ---------------------------------------------------------------------------
# change of group

def check_levelwise_hom(f: Sequence[Homomorphism], g: SimplicialGroup,
                        h: SimplicialGroup, bound: int):
    for n in range(bound + 1):
        if f[n].source is not g.levels[n] or f[n].target is not h.levels[n]:
            raise InputError(f"level {n} map connects wrong groups")
        grp = g.levels[n]
        for a in grp.elements:
            for b in grp.elements:
                if f[n](grp.op(a, b)) != h.levels[n].op(f[n](a), f[n](b)):
                    raise InputError(f"level {n} map is not a homomorphism")
    for n in range(1, bound + 1):
        for i in range(n + 1):
            for a in g.levels[n].elements:
                if f[n - 1](g.face(n, i, a)) != h.face(n, i, f[n](a)):
                    raise InputError("homomorphism does not commute with faces")
    for n in range(bound):
        for i in range(n + 1):
            for a in g.levels[n].elements:
                if f[n + 1](g.degeneracy(n, i, a)) != h.degeneracy(n, i, f[n](a)):
                    raise InputError("homomorphism does not commute with degeneracies")


def restrict(f: Sequence[Homomorphism], g: SimplicialGroup,
             t: GSimplicialSet, check: bool = True) -> GSimplicialSet:
    """The H-object t seen as a G-object through f: G -> H."""
    bound = t.dim_bound
    if check:
        check_levelwise_hom(f, g, t.sg, bound)
    tables = action_tables(g, t.t, lambda n, a, r: t.act(n, f[n](a), r), bound)
    return GSimplicialSet(g, t.t, tables, bound,
                          name=f"res({t.name or '?'})", check=check)


class InduceLevelwise(Levelwise):
    """(T x H)/G along f: G -> H, diagonal G on T x H, by orbit
    representatives (minimal under the element order)."""

    def __init__(self, f, t: GSimplicialSet, h: SimplicialGroup):
        self.f = f
        self.t = t
        self.h = h
        self._reps: Dict[int, Dict] = {}

    def _orbit_rep(self, n: int, r: Ref, k):
        cache = self._reps.setdefault(n, {})
        key = (r, k)
        if key not in cache:
            grp = self.t.sg.levels[n]
            hn = self.h.levels[n]
            orbit = sorted(((self.t.act(n, g, r), hn.op(self.f[n](g), k))
                            for g in grp.elements), key=str)
            rep = orbit[0]
            for member in orbit:
                cache[member] = rep
        return cache[key]

    def elements(self, n: int):
        hn = self.h.levels[n]
        seen = []
        out = set()
        for r in self.t.t.refs(n):
            for k in hn.elements:
                rep = self._orbit_rep(n, r, k)
                if rep not in out:
                    out.add(rep)
                    seen.append(rep)
        return seen

    def face(self, n: int, x, i: int):
        r, k = x
        return self._orbit_rep(n - 1, self.t.t.face(r, i),
                               self.h.face(n, i, k))

    def degeneracy(self, n: int, x, i: int):
        r, k = x
        return self._orbit_rep(n + 1, self.t.t.degeneracy(r, i),
                               self.h.degeneracy(n, i, k))


def induce(f: Sequence[Homomorphism], t: GSimplicialSet, h: SimplicialGroup,
           check: bool = True) -> GSimplicialSet:
    """(T x H)/G as an H-object; h' sends [t, k] to [t, k h'^{-1}]."""
    bound = min(t.dim_bound, h.level_bound)
    if check:
        check_levelwise_hom(f, t.sg, h, bound)
    lw = InduceLevelwise(f, t, h)
    pres = present(lw, bound, name=f"ind({t.name or '?'})")

    def fn(n, a, r):
        x, k = pres.elem_of(r)
        moved = lw._orbit_rep(n, x, h.levels[n].op(k, h.levels[n].inverse(a)))
        return pres.ref_of(n, moved)

    tables = action_tables(h, pres.sset, fn, bound)
    out = GSimplicialSet(h, pres.sset, tables, bound,
                         name=f"ind({t.name or '?'})", check=check)
    out.presented = pres
    return out


# ---------------------------------------------------------------------------
# base change in the slice

class PullbackLevelwise(Levelwise):
    def __init__(self, y: SliceObject, g: SimplicialMap):
        self.y = y
        self.g = g

    def elements(self, n: int):
        by_image: Dict[Ref, List[Ref]] = {}
        for r in self.y.total.refs(n):
            by_image.setdefault(self.y.p(r), []).append(r)
        for rs in self.g.source.refs(n):
            for ry in by_image.get(self.g(rs), []):
                yield (ry, rs)

    def face(self, n: int, x, i: int):
        ry, rs = x
        return (self.y.total.face(ry, i), self.g.source.face(rs, i))

    def degeneracy(self, n: int, x, i: int):
        ry, rs = x
        return (self.y.total.degeneracy(ry, i), self.g.source.degeneracy(rs, i))


class PullbackData(SliceObject):
    def __init__(self, presented: Presented, p: SimplicialMap,
                 to_total: SimplicialMap):
        self.presented = presented
        self.to_total = to_total
        super().__init__(p)


def pullback(y: SliceObject, g: SimplicialMap, dim_bound: int) -> PullbackData:
    """Y x_S S' -> S' for g: S' -> S, with the projection to Y."""
    if g.target is not y.base:
        raise InputError("pullback needs a map into the base")
    y.total.require_levels(dim_bound, "pullback")
    g.source.require_levels(dim_bound, "pullback")
    pres = present(PullbackLevelwise(y, g), dim_bound,
                   name=f"{y.total.name or '?'}x{g.source.name or '?'}")
    assignment_p = {}
    assignment_t = {}
    for n, level in enumerate(pres.sset.levels):
        for s in level:
            ry, rs = s[1]
            assignment_p[s] = rs
            assignment_t[s] = ry
    p = SimplicialMap(pres.sset, g.source, assignment_p, check=True)
    to_total = SimplicialMap(pres.sset, y.total, assignment_t, check=True)
    return PullbackData(pres, p, to_total)


def postcompose(z: SliceObject, g: SimplicialMap) -> SliceObject:
    """Z -> S' -> S."""
    if g.source is not z.base:
        raise InputError("postcompose needs a map out of the base")
    return SliceObject(z.p.compose(g), name=z.name)


def vertex_fiber(y: SliceObject, s) -> SimplicialSet:
    return y.fiber(s)


# ---------------------------------------------------------------------------
# plain G-sets and covering monodromy

class GSet:
    """A finite set with a left action: of a finite group (full table) or of
    a presentation (generator permutations; relators must act as identity)."""

    def __init__(self, elements: Sequence, group, action, name: str = "",
                 check: bool = True):
        self.elements = list(elements)
        self.group = group
        self.action = action
        self.name = name
        if check:
            self.validate()

    @property
    def presented(self) -> bool:
        return isinstance(self.group, GroupPresentation)

    def act(self, g, x):
        return self.action[g][x]

    def act_gen(self, k: int, x):
        return self.action[k][x]

    def act_word(self, word, x):
        # left action: the last letter acts first
        inv = [{v: u for u, v in self.action[k].items()}
               for k in range(len(self.action))] if self.presented else None
        for letter in reversed(word):
            if letter > 0:
                x = self.action[letter - 1][x]
            else:
                x = inv[-letter - 1][x]
        return x

    def validate(self):
        if self.presented:
            if len(self.action) != len(self.group.generators):
                raise InputError("one permutation per generator required")
            for perm in self.action:
                if set(perm) != set(self.elements) or \
                        set(perm.values()) != set(self.elements):
                    raise InputError("generator action is not a permutation")
            for rel in self.group.relators:
                for x in self.elements:
                    if self.act_word(rel, x) != x:
                        raise VerificationError(
                            f"relator {rel} acts nontrivially: broken certificate")
        else:
            grp: FiniteGroup = self.group
            for g in grp.elements:
                if set(self.action[g]) != set(self.elements):
                    raise InputError("action table has wrong domain")
            for x in self.elements:
                if self.act(grp.unit, x) != x:
                    raise InputError("unit acts nontrivially")
            for g in grp.elements:
                for h in grp.elements:
                    gh = grp.op(g, h)
                    for x in self.elements:
                        if self.act(g, self.act(h, x)) != self.act(gh, x):
                            raise InputError("action is not associative")

    def orbits(self) -> List[List]:
        if self.presented:
            gens = list(self.action) + [{v: u for u, v in p.items()}
                                        for p in self.action]
        else:
            gens = [self.action[g] for g in self.group.elements]
        seen = set()
        out = []
        for x in self.elements:
            if x in seen:
                continue
            orb = [x]
            seen.add(x)
            frontier = [x]
            while frontier:
                y = frontier.pop()
                for p in gens:
                    z = p[y]
                    if z not in seen:
                        seen.add(z)
                        orb.append(z)
                        frontier.append(z)
            out.append(sorted(orb, key=str))
        return out

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def __repr__(self):
        return f"GSet({self.name or 'anon'}, {len(self.elements)} points)"


def gset_iso(a: GSet, b: GSet) -> Optional[Dict]:
    """An equivariant bijection, or None.  Both must carry the same group
    (same object or equal generator lists for presentations)."""
    if len(a.elements) != len(b.elements):
        return None
    if a.presented != b.presented:
        raise InputError("cannot compare the two action flavors directly")
    if a.presented:
        gens = list(range(len(a.action)))
        act_a = lambda k, x: a.action[k][x]
        act_b = lambda k, x: b.action[k][x]
    else:
        if a.group is not b.group and a.group.elements != b.group.elements:
            raise InputError("G-set comparison needs a common group")
        gens = list(a.group.elements)
        act_a = lambda g, x: a.action[g][x]
        act_b = lambda g, x: b.action[g][x]

    sigma: Dict = {}
    used = set()

    def extend(i) -> bool:
        if i == len(a.elements):
            return True
        x = a.elements[i]
        if x in sigma:
            return extend(i + 1)
        for y in b.elements:
            if y in used:
                continue
            stack = [(x, y)]
            added = []
            ok = True
            while stack and ok:
                u, v = stack.pop()
                if u in sigma:
                    if sigma[u] != v:
                        ok = False
                    continue
                if v in used:
                    ok = False
                    continue
                sigma[u] = v
                used.add(v)
                added.append(u)
                for g in gens:
                    stack.append((act_a(g, u), act_b(g, v)))
            if ok and extend(i + 1):
                return True
            for u in added:
                used.discard(sigma.pop(u))
        return False

    return dict(sigma) if extend(0) else None


def coset_gset(grp: FiniteGroup, subgroup: frozenset, name: str = "") -> GSet:
    """Left cosets of a subgroup with left translation."""
    seen = set()
    elems = []
    for g in grp.elements:
        c = frozenset(grp.op(g, h) for h in subgroup)
        if c not in seen:
            seen.add(c)
            elems.append(c)
    action = {g: {c: frozenset(grp.op(g, x) for x in c) for c in elems}
              for g in grp.elements}
    return GSet(elems, grp, action, name=name or f"{grp.name}/H{len(subgroup)}")


def transitive_gsets(grp: FiniteGroup) -> List[GSet]:
    """One transitive G-set per conjugacy class of subgroups, regular first."""
    reps = conjugacy_classes_of_subgroups(grp)
    return [coset_gset(grp, h, name=f"{grp.name}/|{len(h)}|") for h in reps]


class CoveringMonodromy:
    """The fiber with the action of the loop presentation of the base."""

    def __init__(self, gset: GSet, presentation: GroupPresentation,
                 generators: List[Ref], fiber: List):
        self.gset = gset
        self.presentation = presentation
        self.generators = generators
        self.fiber = fiber


def covering_monodromy(cov: CoveringData,
                       max_cosets: int = 20000) -> CoveringMonodromy:
    """Edge transport on the vertex fiber of a covering of a reduced base:
    each presentation generator lifts with its d_0 vertex at the given point
    and lands on the d_1 vertex; relators are verified to act trivially."""
    y = cov.slice
    s = y.base
    if len(s.nondegenerate(0)) != 1:
        raise InputError("covering monodromy needs a reduced base")
    if cov.dim < 2:
        raise InputError("covering certificate must reach dimension 2")
    pres = pi0(loop_group(s, 1), max_cosets=max_cosets)
    gens = [r for r in s.refs(1) if not r.word or r.word[-1] != 0]
    base_vertex = s.levels[0][0]
    fiber = sorted((v for v in y.total.nondegenerate(0)
                    if y.p(Ref(v, ())).base == base_vertex), key=str)
    edges_by_image: Dict[Ref, List] = {}
    for e in y.total.nondegenerate(1):
        edges_by_image.setdefault(y.p(Ref(e, ())), []).append(e)
    action = []
    for r in gens:
        perm = {}
        for v in fiber:
            lifts = [e for e in edges_by_image.get(r, [])
                     if y.total.faces[e][0].base == v]
            if len(lifts) != 1:
                raise VerificationError("broken covering certificate: edge "
                                        "lift not unique")
            perm[v] = y.total.faces[lifts[0]][1].base
        action.append(perm)
    gset = GSet(fiber, pres, action, name=f"mono({y.name or '?'})", check=True)
    return CoveringMonodromy(gset, pres, gens, fiber)


def monodromy_as_group_action(cm: CoveringMonodromy, grp: FiniteGroup,
                              label) -> GSet:
    """Convert a presentation action to a finite-group action when the
    generators are labeled by nonunit group elements via label(ref)."""
    perms = {grp.unit: {x: x for x in cm.gset.elements}}
    for k, r in enumerate(cm.generators):
        perms[label(r)] = dict(cm.gset.action[k])
    if set(perms) != set(grp.elements):
        raise InputError("generator labels do not cover the group")
    return GSet(cm.gset.elements, grp, perms, name=cm.gset.name, check=True)


# ---------------------------------------------------------------------------
# endomorphisms of the fiber functor

class NaturalEndReport:
    """All families phi_T: T -> T commuting with every equivariant map
    between the listed objects; a monoid under diagrammatic composition."""

    def __init__(self, objects: List[GSet], families: List[Tuple],
                 table: Dict, unit, is_group: bool,
                 comparison: Optional[Dict], comparison_iso: Optional[bool]):
        self.objects = objects
        self.families = families
        self.table = table
        self.unit = unit
        self.is_group = is_group
        self.comparison = comparison
        self.comparison_iso = comparison_iso

    @property
    def monoid_order(self) -> int:
        return len(self.families)


def _equivariant_set_maps(a: GSet, b: GSet) -> List[Dict]:
    grp: FiniteGroup = a.group
    stab_b = {y: {g for g in grp.elements if b.act(g, y) == y}
              for y in b.elements}
    orbit_data = []
    for orb in a.orbits():
        r = orb[0]
        stab_r = {g for g in grp.elements if a.act(g, r) == r}
        cands = [y for y in b.elements if stab_r <= stab_b[y]]
        orbit_data.append((r, orb, cands))
    out = []

    def build(i, partial):
        if i == len(orbit_data):
            out.append(dict(partial))
            return
        r, orb, cands = orbit_data[i]
        for y in cands:
            ext = dict(partial)
            ok = True
            for g in grp.elements:
                u, v = a.act(g, r), b.act(g, y)
                if ext.setdefault(u, v) != v:
                    ok = False
                    break
            if ok:
                build(i + 1, ext)

    build(0, {})
    return out


def natural_end(grp: FiniteGroup, objects: Optional[List[GSet]] = None,
                regular_index: Optional[int] = None) -> NaturalEndReport:
    """Brute-force search for endomorphisms of the forgetful functor on the
    listed objects (default: one transitive G-set per subgroup class, the
    regular one first); comparison phi -> phi_E(e)^{-1} when E is present."""
    if objects is None:
        objects = transitive_gsets(grp)
        for i, t in enumerate(objects):
            if len(t.elements) == len(grp.elements):
                regular_index = i
                break
    for t in objects:
        if t.presented:
            raise InputError("natural_end needs finite-group actions")
    maps = {}
    for i, a in enumerate(objects):
        for j, b in enumerate(objects):
            maps[(i, j)] = _equivariant_set_maps(a, b)

    families: List[Tuple] = []
    assignment: List[Dict] = [None] * len(objects)

    def candidates(i: int) -> List[Dict]:
        t = objects[i]
        forced = {}
        for j in range(i):
            for u in maps[(j, i)]:
                for x, v in assignment[j].items():
                    key, val = u[x], u[v]
                    if forced.setdefault(key, val) != val:
                        return []
        outs = []

        def extend(points, phi):
            if not points:
                outs.append(dict(phi))
                return
            x, rest = points[0], points[1:]
            opts = [forced[x]] if x in forced else list(t.elements)
            for y in opts:
                phi[x] = y
                ok = True
                for u in maps[(i, i)]:
                    ux = u[x]
                    if ux in phi and u[y] != phi[ux]:
                        ok = False
                        break
                    for z, w in phi.items():
                        if u[z] == x and u[w] != y:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    for j in range(i):
                        for u in maps[(i, j)]:
                            if u[y] != assignment[j][u[x]]:
                                ok = False
                                break
                        if not ok:
                            break
                if ok:
                    extend(rest, phi)
            phi.pop(x, None)

        extend(list(t.elements), {})
        return outs

    def search(i: int):
        if i == len(objects):
            families.append(tuple(tuple(phi[x] for x in objects[k].elements)
                                  for k, phi in enumerate(assignment)))
            return
        for phi in candidates(i):
            assignment[i] = phi
            search(i + 1)
            assignment[i] = None

    search(0)
    positions = [{x: p for p, x in enumerate(t.elements)} for t in objects]
    families.sort(key=lambda f: tuple(tuple(positions[k][x] for x in fk)
                                      for k, fk in enumerate(f)))

    def compose(f1, f2):
        # diagrammatic: f1 first, then f2
        out = []
        for k, t in enumerate(objects):
            idx = {x: p for p, x in enumerate(t.elements)}
            out.append(tuple(f2[k][idx[f1[k][p]]]
                             for p in range(len(t.elements))))
        return tuple(out)

    table = {(f1, f2): compose(f1, f2) for f1 in families for f2 in families}
    unit = tuple(tuple(t.elements) for t in objects)
    closed = all(v in set(families) for v in table.values())
    if not closed or unit not in families:
        raise VerificationError("natural families do not form a monoid")
    is_group = all(any(table[(f, g)] == unit and table[(g, f)] == unit
                       for g in families) for f in families)
    comparison = None
    comparison_iso = None
    if regular_index is not None:
        e_obj = objects[regular_index]
        unit_pos = None
        for p, x in enumerate(e_obj.elements):
            if x == frozenset({grp.unit}) or x == grp.unit:
                unit_pos = p
        if unit_pos is None:
            raise InputError("regular object must be labeled by group elements")

        def unlabel(x):
            if isinstance(x, frozenset):
                (g,) = tuple(x)
                return g
            return x

        comparison = {f: grp.inverse(unlabel(f[regular_index][unit_pos]))
                      for f in families}
        images = set(comparison.values())
        hom = all(comparison[table[(f1, f2)]] ==
                  grp.op(comparison[f1], comparison[f2])
                  for f1 in families for f2 in families)
        comparison_iso = (hom and len(images) == len(families) == len(grp.elements))
    return NaturalEndReport(objects, families, table, unit, is_group,
                            comparison, comparison_iso)


class EndOfRegularReport:
    """Levelwise equivariant self-maps of the regular object with opposite
    composition, plus the right-translation comparison from G."""

    def __init__(self, monoid: SimplicialGroup, comparison: List[Dict],
                 levelwise_iso: bool):
        self.monoid = monoid
        self.comparison = comparison
        self.levelwise_iso = levelwise_iso


def end_of_regular(sg: SimplicialGroup, bound: int) -> EndOfRegularReport:
    """Hom_G(G, G) with composition reversed, computed by enumeration of all
    equivariant self-maps at each level."""
    if bound > sg.level_bound:
        raise InputError("bound beyond the group's levels")
    level_maps: List[List[Tuple]] = []
    for n in range(bound + 1):
        grp = sg.levels[n]
        if not isinstance(grp, FiniteGroup):
            raise InputError("end_of_regular needs finite levels")
        maps = []
        order = {x: p for p, x in enumerate(grp.elements)}
        for f in itertools.product(grp.elements, repeat=len(grp.elements)):
            if all(f[order[grp.op(g, x)]] == grp.op(g, f[order[x]])
                   for g in grp.elements for x in grp.elements):
                maps.append(f)
        level_maps.append(sorted(maps, key=repr))

    levels = []
    comparison = []
    for n in range(bound + 1):
        grp = sg.levels[n]
        order = {x: p for p, x in enumerate(grp.elements)}
        maps = level_maps[n]

        def compose_o(f1, f2, order=order, grp=grp):
            # opposite: (f1 *o f2)(x) = f2(f1(x))
            return tuple(f2[order[f1[p]]] for p in range(len(f1)))

        mult = {(f1, f2): compose_o(f1, f2) for f1 in maps for f2 in maps}
        unit = tuple(grp.elements)
        levels.append(FiniteGroup(maps, mult, unit, name=f"End{n}"))
        comparison.append({g: tuple(grp.op(x, g) for x in grp.elements)
                           for g in grp.elements})

    face_homs: List[List[Homomorphism]] = [[]]
    for n in range(1, bound + 1):
        grp, prev = sg.levels[n], sg.levels[n - 1]
        order = {x: p for p, x in enumerate(grp.elements)}
        unit_pos = order[grp.unit]
        row = []
        for i in range(n + 1):
            hom = sg.face_homs[n][i]
            table = {f: comparison[n - 1][hom(f[unit_pos])]
                     for f in level_maps[n]}
            row.append(Homomorphism(levels[n], levels[n - 1], table=table))
        face_homs.append(row)
    deg_homs = []
    for n in range(bound):
        grp = sg.levels[n]
        order = {x: p for p, x in enumerate(grp.elements)}
        unit_pos = order[grp.unit]
        row = []
        for i in range(n + 1):
            hom = sg.deg_homs[n][i]
            table = {f: comparison[n + 1][hom(f[unit_pos])]
                     for f in level_maps[n]}
            row.append(Homomorphism(levels[n], levels[n + 1], table=table))
        deg_homs.append(row)
    monoid = SimplicialGroup(levels, face_homs, deg_homs,
                             name=f"End({sg.name or 'G'})")
    iso = True
    for n in range(bound + 1):
        grp = sg.levels[n]
        images = {comparison[n][g] for g in grp.elements}
        if len(images) != len(grp.elements) or len(images) != len(level_maps[n]):
            iso = False
        unit = tuple(grp.elements)
        for g in grp.elements:
            for h in grp.elements:
                lhs = comparison[n][grp.op(g, h)]
                order = {x: p for p, x in enumerate(grp.elements)}
                rhs = tuple(comparison[n][h][order[comparison[n][g][p]]]
                            for p in range(len(grp.elements)))
                if lhs != rhs:
                    iso = False
    return EndOfRegularReport(monoid, comparison, iso)
