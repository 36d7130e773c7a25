"""Simplicial groups and their classifying constructions.

A SimplicialGroup holds one group model per level (finite table groups or
free groups on named generators) and homomorphisms for every face and
degeneracy.  From it we build:

  underlying_sset   the levelwise underlying simplicial set
  eg_dg             EG_m = G_m^(m+1) with the diagonal left action, the
                    reduced quotient model dG_m = G_m^m, the orbit map
                    q(g_0..g_m) = (g_0^-1 g_1, ..., g_{m-1}^-1 g_m), and a
                    verified isomorphism EG/G -> dG
  loop_group        the combinatorial loop group of a reduced complex:
                    level n free on the (n+1)-simplices not of the form
                    s_0 y, with d_0[x] = [d_1 x][d_0 x]^-1, d_i[x] =
                    [d_{i+1} x] for i >= 1, s_i[x] = [s_{i+1} x]
  pi0               G_0 modulo the normal closure of d_0(g) d_1(g)^-1,
                    exact for finite G_0, presented with optional certified
                    order for free G_0
  moore_homotopy    pi_n = ker(d_0 | N_n) / d_0(N_{n+1}), N_n the
                    intersection of the kernels of d_1..d_n
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BudgetExceeded, InputError
from .groups import (FiniteGroup, FreeGroup, GroupPresentation, Homomorphism,
                     Word, identity_hom, invert_word, presentation_of_finite,
                     product_group, reduce_word)
from .levelwise import Levelwise, Presented, present
from .simplicial import Ref, SimplicialMap, SimplicialSet


class SimplicialGroup:
    """Levels 0..level_bound with face/degeneracy homomorphisms."""

    def __init__(self, levels: Sequence, face_homs: Sequence[Sequence[Homomorphism]],
                 deg_homs: Sequence[Sequence[Homomorphism]], name: str = "",
                 check: bool = True):
        self.levels = list(levels)
        self.face_homs = [list(h) for h in face_homs]   # index n >= 1, i in 0..n
        self.deg_homs = [list(h) for h in deg_homs]     # index n, i in 0..n
        self.name = name
        if check:
            self.validate()

    @property
    def level_bound(self) -> int:
        return len(self.levels) - 1

    def face(self, n: int, i: int, x):
        return self.face_homs[n][i](x)

    def degeneracy(self, n: int, i: int, x):
        return self.deg_homs[n][i](x)

    def generators_of(self, n: int) -> List:
        g = self.levels[n]
        if isinstance(g, FiniteGroup):
            return list(g.elements)
        return [g.generator(i) for i in range(g.rank)]

    def validate(self):
        b = self.level_bound
        if len(self.face_homs) != b + 1 or len(self.deg_homs) < b:
            raise InputError("structure map tables have wrong shape")
        for n in range(1, b + 1):
            if len(self.face_homs[n]) != n + 1:
                raise InputError(f"level {n} needs {n + 1} faces")
        for n in range(b):
            if len(self.deg_homs[n]) != n + 1:
                raise InputError(f"level {n} needs {n + 1} degeneracies")
        for n in range(1, b + 1):
            g = self.levels[n]
            if isinstance(g, FiniteGroup):
                pairs = [(a, c) for a in g.elements for c in g.elements]
                for hom in self.face_homs[n]:
                    hom.validate_on(pairs)
        # simplicial identities on generators
        for n in range(2, b + 1):
            for x in self.generators_of(n):
                for j in range(n + 1):
                    for i in range(j):
                        lhs = self.face(n - 1, i, self.face(n, j, x))
                        rhs = self.face(n - 1, j - 1, self.face(n, i, x))
                        if lhs != rhs:
                            raise InputError(f"dd identity fails at level {n}")
        for n in range(b):
            for x in self.generators_of(n):
                for j in range(n + 1):
                    for i in range(n + 2):
                        got = self.face(n + 1, i, self.degeneracy(n, j, x))
                        if i == j or i == j + 1:
                            want = x
                        elif i < j:
                            want = self.degeneracy(n - 1, j - 1, self.face(n, i, x))
                        else:
                            want = self.degeneracy(n - 1, j, self.face(n, i - 1, x))
                        if got != want:
                            raise InputError(f"ds identity fails at level {n}")
                if n + 1 < b:
                    for j in range(n + 1):
                        for i in range(j + 1):
                            lhs = self.degeneracy(n + 1, i, self.degeneracy(n, j, x))
                            rhs = self.degeneracy(n + 1, j + 1, self.degeneracy(n, i, x))
                            if lhs != rhs:
                                raise InputError(f"ss identity fails at level {n}")

    def __repr__(self):
        return f"SimplicialGroup({self.name or 'anon'}, levels 0..{self.level_bound})"


def constant(g: FiniteGroup, level_bound: int) -> SimplicialGroup:
    levels = [g] * (level_bound + 1)
    ident = identity_hom(g)
    face_homs = [[]] + [[ident] * (n + 1) for n in range(1, level_bound + 1)]
    deg_homs = [[ident] * (n + 1) for n in range(level_bound)]
    return SimplicialGroup(levels, face_homs, deg_homs, name=f"const({g.name})",
                           check=False)


def product_sgroup(g: SimplicialGroup, h: SimplicialGroup) -> SimplicialGroup:
    b = min(g.level_bound, h.level_bound)
    levels = [product_group(g.levels[n], h.levels[n]) for n in range(b + 1)]
    face_homs: List[List[Homomorphism]] = [[]]
    for n in range(1, b + 1):
        row = []
        for i in range(n + 1):
            table = {(a, c): (g.face_homs[n][i](a), h.face_homs[n][i](c))
                     for (a, c) in levels[n].elements}
            row.append(Homomorphism(levels[n], levels[n - 1], table=table))
        face_homs.append(row)
    deg_homs = []
    for n in range(b):
        row = []
        for i in range(n + 1):
            table = {(a, c): (g.deg_homs[n][i](a), h.deg_homs[n][i](c))
                     for (a, c) in levels[n].elements}
            row.append(Homomorphism(levels[n], levels[n + 1], table=table))
        deg_homs.append(row)
    return SimplicialGroup(levels, face_homs, deg_homs,
                           name=f"{g.name}x{h.name}", check=False)


# ---------------------------------------------------------------------------
# underlying simplicial set

class GroupLevelwise(Levelwise):
    def __init__(self, sg: SimplicialGroup):
        for g in sg.levels:
            if not isinstance(g, FiniteGroup):
                raise InputError("underlying set needs finite levels")
        self.sg = sg

    def elements(self, n: int):
        return self.sg.levels[n].elements

    def face(self, n: int, x, i: int):
        return self.sg.face(n, i, x)

    def degeneracy(self, n: int, x, i: int):
        return self.sg.degeneracy(n, i, x)


def underlying_sset(sg: SimplicialGroup, dim_bound: int, name: str = "") -> Presented:
    if dim_bound > sg.level_bound:
        raise InputError("dim_bound beyond the group's level bound")
    return present(GroupLevelwise(sg), dim_bound,
                   name=name or f"U({sg.name})",
                   basepoint_elem=sg.levels[0].unit)


# ---------------------------------------------------------------------------
# EG, dG, and the quotient comparison

class EGLevelwise(Levelwise):
    """EG_m = G_m^(m+1); d_i drops coordinate i, s_i repeats it, both followed
    by the internal structure map applied to every coordinate."""

    def __init__(self, sg: SimplicialGroup):
        self.sg = sg

    def elements(self, m: int):
        return itertools.product(self.sg.levels[m].elements, repeat=m + 1)

    def face(self, m: int, x, i: int):
        hom = self.sg.face_homs[m][i]
        return tuple(hom(g) for k, g in enumerate(x) if k != i)

    def degeneracy(self, m: int, x, i: int):
        hom = self.sg.deg_homs[m][i]
        doubled = x[:i] + (x[i],) + x[i:]
        return tuple(hom(g) for g in doubled)


class DGLevelwise(Levelwise):
    """dG_m = G_m^m with nerve-style structure in the tuple direction."""

    def __init__(self, sg: SimplicialGroup):
        self.sg = sg

    def elements(self, m: int):
        return itertools.product(self.sg.levels[m].elements, repeat=m)

    def face(self, m: int, x, i: int):
        hom = self.sg.face_homs[m][i]
        y = tuple(hom(g) for g in x)
        grp = self.sg.levels[m - 1]
        if i == 0:
            return y[1:]
        if i == m:
            return y[:-1]
        return y[:i - 1] + (grp.op(y[i - 1], y[i]),) + y[i + 1:]

    def degeneracy(self, m: int, x, i: int):
        hom = self.sg.deg_homs[m][i]
        y = tuple(hom(g) for g in x)
        return y[:i] + (self.sg.levels[m + 1].unit,) + y[i:]


class EGQuotientLevelwise(Levelwise):
    """Orbits of the diagonal left action, as representatives with g_0 = e."""

    def __init__(self, sg: SimplicialGroup):
        self.sg = sg
        self.eg = EGLevelwise(sg)

    def _rep(self, m: int, x):
        grp = self.sg.levels[m]
        lead = grp.inverse(x[0])
        return tuple(grp.op(lead, g) for g in x)

    def elements(self, m: int):
        grp = self.sg.levels[m]
        for tail in itertools.product(grp.elements, repeat=m):
            yield (grp.unit,) + tail

    def face(self, m: int, x, i: int):
        return self._rep(m - 1, self.eg.face(m, x, i))

    def degeneracy(self, m: int, x, i: int):
        return self._rep(m + 1, self.eg.degeneracy(m, x, i))


class EGData:
    """EG with its action data, dG, the orbit map, and the quotient witness."""

    def __init__(self, sg: SimplicialGroup, dim_bound: int,
                 eg: Presented, dg: Presented, quotient: Presented,
                 q: SimplicialMap, witness: SimplicialMap):
        self.sg = sg
        self.dim_bound = dim_bound
        self.eg = eg
        self.dg = dg
        self.quotient = quotient
        self.q = q
        self.witness = witness

    def action_map(self, g) -> SimplicialMap:
        """The simplicial automorphism of EG given by left translation by g
        (g at level 0, pushed up by total degeneracy)."""
        sg = self.sg
        lifted = {0: g}
        for m in range(1, self.dim_bound + 1):
            lifted[m] = sg.degeneracy(m - 1, 0, lifted[m - 1])
        sset = self.eg.sset

        def fn(m, x):
            grp = sg.levels[m]
            return tuple(grp.op(lifted[m], c) for c in x)

        return self.eg.map_by_elements(self.eg, fn, check=False)


def eg_dg(sg: SimplicialGroup, dim_bound: int) -> EGData:
    """EG with diagonal left G-action, reduced dG, orbit map, quotient witness."""
    if dim_bound > sg.level_bound:
        raise InputError("dim_bound beyond the group's level bound")
    for g in sg.levels:
        if not isinstance(g, FiniteGroup):
            raise InputError("eg_dg needs finite levels")
    eg = present(EGLevelwise(sg), dim_bound, name=f"E({sg.name})",
                 basepoint_elem=(sg.levels[0].unit,))
    dg = present(DGLevelwise(sg), dim_bound, name=f"d({sg.name})",
                 basepoint_elem=())
    quot = present(EGQuotientLevelwise(sg), dim_bound, name=f"E/{sg.name}",
                   basepoint_elem=(sg.levels[0].unit,))

    def diff(m, x):
        grp = sg.levels[m]
        return tuple(grp.op(grp.inverse(x[k]), x[k + 1]) for k in range(m))

    q = eg.map_by_elements(dg, diff, check=True)
    witness = quot.map_by_elements(dg, diff, check=True)
    if not witness.is_iso():
        raise InputError("quotient comparison failed to be an isomorphism")
    return EGData(sg, dim_bound, eg, dg, quot, q, witness)


# ---------------------------------------------------------------------------
# the loop group of a reduced simplicial set

def loop_group(s: SimplicialSet, level_bound: int) -> SimplicialGroup:
    """Free simplicial group model of the loops on a reduced complex."""
    if len(s.nondegenerate(0)) != 1:
        raise InputError("loop group needs a reduced (single-vertex) complex")
    s.require_levels(level_bound + 1, "loop group")

    bases: List[List[Ref]] = []
    index: List[Dict[Ref, int]] = []
    for n in range(level_bound + 1):
        gens = [r for r in s.refs(n + 1) if not r.word or r.word[-1] != 0]
        bases.append(gens)
        index.append({r: k + 1 for k, r in enumerate(gens)})

    levels = [FreeGroup([f"{r.base}{list(r.word)}" for r in bases[n]])
              for n in range(level_bound + 1)]

    def word_of(n: int, ref: Ref) -> Word:
        # [s_0 y] = e; otherwise the generator index at level n
        if ref.word and ref.word[-1] == 0:
            return ()
        return (index[n][ref],)

    face_homs: List[List[Homomorphism]] = [[]]
    for n in range(1, level_bound + 1):
        row = []
        for i in range(n + 1):
            images = []
            for r in bases[n]:
                if i == 0:
                    w = reduce_word(word_of(n - 1, s.face(r, 1))
                                    + invert_word(word_of(n - 1, s.face(r, 0))))
                else:
                    w = word_of(n - 1, s.face(r, i + 1))
                images.append(w)
            row.append(Homomorphism(levels[n], levels[n - 1], gen_images=images))
        face_homs.append(row)
    deg_homs = []
    for n in range(level_bound):
        row = []
        for i in range(n + 1):
            images = [word_of(n + 1, s.degeneracy(r, i + 1)) for r in bases[n]]
            row.append(Homomorphism(levels[n], levels[n + 1], gen_images=images))
        deg_homs.append(row)
    return SimplicialGroup(levels, face_homs, deg_homs,
                           name=f"Loop({s.name or '?'})")


# ---------------------------------------------------------------------------
# pi0 and Moore homotopy

def normal_closure(g: FiniteGroup, seeds) -> frozenset:
    members = {g.unit}
    frontier = [x for x in seeds if x != g.unit]
    for x in frontier:
        members.add(x)
    while frontier:
        x = frontier.pop()
        new = [g.inverse(x)]
        for a in g.elements:
            new.append(g.op(g.op(a, x), g.inverse(a)))
        for y in members.copy():
            new.append(g.op(x, y))
        for y in new:
            if y not in members:
                members.add(y)
                frontier.append(y)
    return frozenset(members)


def quotient_group(g: FiniteGroup, normal: frozenset, name: str = "Q") -> Tuple[FiniteGroup, Dict]:
    """The quotient by a normal subgroup, plus the projection table."""
    label_of = {}
    labels = []
    for a in g.elements:
        if a in label_of:
            continue
        coset = sorted((g.op(a, h) for h in normal), key=str)
        lab = coset[0]
        labels.append(lab)
        for c in coset:
            label_of[c] = lab
    mult = {(a, b): label_of[g.op(a, b)] for a in labels for b in labels}
    return FiniteGroup(labels, mult, label_of[g.unit], name=name), label_of


def pi0_finite(sg: SimplicialGroup) -> Tuple[FiniteGroup, Dict]:
    g0, g1 = sg.levels[0], sg.levels[1]
    seeds = [g0.op(sg.face(1, 0, x), g0.inverse(sg.face(1, 1, x)))
             for x in g1.elements]
    return quotient_group(g0, normal_closure(g0, seeds), name=f"pi0({sg.name})")


def pi0(sg: SimplicialGroup, max_cosets: int = 20000) -> GroupPresentation:
    """pi0 as a presentation; exact quotient for finite level 0, and a
    presentation with bounded-certified order for a free level 0."""
    g0 = sg.levels[0]
    if isinstance(g0, FiniteGroup):
        quot, label_of = pi0_finite(sg)
        pres = presentation_of_finite(quot)
        pres.order = len(quot)
        pres.witness = {"target": quot.name,
                        "images": {str(a): a for a in quot.elements if a != quot.unit}}
        return pres
    relators = []
    for x in sg.generators_of(1):
        w = reduce_word(tuple(sg.face(1, 0, x)) + invert_word(tuple(sg.face(1, 1, x))))
        if w:
            relators.append(w)
    pres = GroupPresentation(tuple(g0.names), tuple(relators))
    try:
        pres.certify_order(max_cosets=max_cosets)
    except BudgetExceeded:
        pres.order = None
    return pres


def moore_homotopy(sg: SimplicialGroup, nmax: int) -> List[FiniteGroup]:
    """pi_0..pi_nmax of a simplicial group with finite levels."""
    if nmax + 1 > sg.level_bound:
        raise InputError("moore_homotopy needs levels through nmax+1")
    for g in sg.levels:
        if not isinstance(g, FiniteGroup):
            raise InputError("moore_homotopy needs finite levels")

    def moore(n: int) -> List:
        g = sg.levels[n]
        out = []
        for x in g.elements:
            if all(sg.face(n, i, x) == sg.levels[n - 1].unit for i in range(1, n + 1)):
                out.append(x)
        return out

    groups = []
    for n in range(nmax + 1):
        g = sg.levels[n]
        if n == 0:
            cycles = list(g.elements)
        else:
            cycles = [x for x in moore(n) if sg.face(n, 0, x) == sg.levels[n - 1].unit]
        borders = {sg.face(n + 1, 0, y) for y in moore(n + 1)}
        sub = frozenset(g.generated_subgroup(borders))
        # boundaries are normal in cycles for a Moore complex; quotient on the
        # cycle subgroup
        elems = cycles
        mult = {(a, b): g.op(a, b) for a in elems for b in elems}
        zgrp = FiniteGroup(elems, mult, g.unit, name=f"Z{n}", check=False)
        quot, _ = quotient_group(zgrp, sub, name=f"pi{n}({sg.name})")
        groups.append(quot)
    return groups


# ---------------------------------------------------------------------------
# the external nerve of a simplicial group

class PowerLevelwise(Levelwise):
    """m-tuples of group elements per level; the internal structure maps act
    coordinatewise through the group homomorphisms."""

    def __init__(self, sg: SimplicialGroup, m: int):
        for g in sg.levels:
            if not isinstance(g, FiniteGroup):
                raise InputError("external nerve needs finite levels")
        self.sg = sg
        self.m = m

    def elements(self, n: int):
        return itertools.product(self.sg.levels[n].elements, repeat=self.m)

    def face(self, n: int, x, i: int):
        hom = self.sg.face_homs[n][i]
        return tuple(hom(g) for g in x)

    def degeneracy(self, n: int, x, i: int):
        hom = self.sg.deg_homs[n][i]
        return tuple(hom(g) for g in x)


def j_embed(sg: SimplicialGroup, m_bound: int, dim_bound: Optional[int] = None,
            name: str = ""):
    """The nerve of a simplicial group in a new external direction: level m
    is the simplicial set underlying G^m, external faces drop an end or
    multiply adjacent coordinates, external degeneracies insert the unit.

    The level-m Segal comparison of the result is a literal isomorphism."""
    from .delta import PreDeltaSpace

    bound = sg.level_bound if dim_bound is None else dim_bound
    if bound > sg.level_bound:
        raise InputError("dim_bound beyond the group's level bound")
    pres = []
    for m in range(m_bound + 1):
        unit_tuple = tuple(sg.levels[0].unit for _ in range(m))
        pres.append(present(PowerLevelwise(sg, m), bound,
                            name=f"{sg.name or 'G'}^{m}",
                            basepoint_elem=unit_tuple))
    levels = [p.sset for p in pres]

    face_maps: List[List[SimplicialMap]] = [[]]
    for m in range(1, m_bound + 1):
        row = []
        for i in range(m + 1):
            if i == 0:
                fn = lambda n, x: x[1:]
            elif i == m:
                fn = lambda n, x: x[:-1]
            else:
                def fn(n, x, i=i):
                    grp = sg.levels[n]
                    return x[:i - 1] + (grp.op(x[i - 1], x[i]),) + x[i + 1:]
            row.append(pres[m].map_by_elements(pres[m - 1], fn, check=True))
        face_maps.append(row)
    deg_maps = []
    for m in range(m_bound):
        row = []
        for i in range(m + 1):
            def fn(n, x, i=i):
                return x[:i] + (sg.levels[n].unit,) + x[i:]
            row.append(pres[m].map_by_elements(pres[m + 1], fn, check=True))
        deg_maps.append(row)
    return PreDeltaSpace(levels, face_maps, deg_maps,
                         name=name or f"j({sg.name or 'G'})")
