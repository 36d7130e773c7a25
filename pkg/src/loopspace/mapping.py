"""Mapping spaces, horn-filling reports, and isomorphism search.

A mapping space Map(X, Y) has level p the set of simplicial maps
X x Delta^p -> Y; faces and degeneracies precompose with 1 x delta_i and
1 x sigma_i.  Each map is stored as a tuple of interned Y-ids indexed by the
nondegenerate simplices of the product, which makes equality of maps tuple
equality and lets present() run unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InputError
from .fast import Assignment, FastComplex, enumerate_maps, solution_to_map
from .levelwise import Levelwise, Presented, ProductData, present, product
from .simplicial import (Ref, SimplicialMap, SimplicialSet, delta_ref, horn,
                         standard, word_insert)


def _apply_alpha(ref: Ref, alpha: Sequence[int]) -> Ref:
    """Image of a Delta^q simplex under the map induced by vertex images alpha."""
    base = delta_ref([alpha[v] for v in ref.base])
    word = base.word
    for i in reversed(ref.word):
        word = word_insert(word, i)
    return Ref(base.base, word)


class MappingLevelwise(Levelwise):
    """Levelwise description of Map(X, Y) through a level bound."""

    def __init__(self, x: SimplicialSet, y: SimplicialSet, dim_bound: int,
                 pointed: Optional[Tuple[object, object]] = None,
                 budget: Optional[int] = None):
        if x.complete_through is not None:
            raise InputError("mapping space source must be fully presented")
        self.x = x
        self.y = y
        self.dim_bound = dim_bound
        self.budget = budget
        dx = x.top_dim
        y.require_levels(dx + dim_bound, "mapping space")
        self.prods: List[ProductData] = [product(x, standard(p), dx + p)
                                         for p in range(dim_bound + 1)]
        self.fcs = [FastComplex(pd.sset, pd.sset.top_dim) for pd in self.prods]
        self.dst = FastComplex(y, dx + dim_bound)
        # position of a product simplex id within its level, per product
        self.pos: List[Dict[object, int]] = []
        for pd in self.prods:
            pos = {}
            for lev in pd.sset.levels:
                for i, s in enumerate(lev):
                    pos[s] = i
            self.pos.append(pos)
        self.pointed = None
        if pointed is not None:
            x0, y0 = pointed
            x0 = x0.base if isinstance(x0, Ref) else x0
            y0 = y0.base if isinstance(y0, Ref) else y0
            if x0 not in x.nondegenerate(0) or y0 not in y.nondegenerate(0):
                raise InputError("pointing data must be vertices")
            self.pointed = (x0, self.dst.id_of[0][Ref(y0, ())])
        self._elements: Dict[int, List[Assignment]] = {}
        self._recipes: Dict[Tuple[str, int, int], List[Tuple[int, int, Tuple[int, ...]]]] = {}

    # -- enumeration ----------------------------------------------------

    def _fixed(self, p: int) -> Optional[Dict[Tuple[int, int], int]]:
        if self.pointed is None:
            return None
        x0, y0_id = self.pointed
        fixed = {}
        fc = self.fcs[p]
        sset = self.prods[p].sset
        for n, lev in enumerate(sset.levels):
            for pos, sid in enumerate(lev):
                rx = sid[1][0]
                if rx.base == x0:
                    word = tuple(range(n - 1, -1, -1))
                    fixed[(n, pos)] = self.dst.apply_word_id(0, y0_id, word)
        return fixed

    def elements(self, p: int):
        if p not in self._elements:
            sols = enumerate_maps(self.fcs[p], self.dst, fixed=self._fixed(p),
                                  budget=self.budget,
                                  what=f"mapping space level {p}")
            self._elements[p] = sorted(sols)
        return self._elements[p]

    def constant_element(self, y0) -> Assignment:
        """The level-0 element constant at the vertex y0 of Y."""
        y0 = y0.base if isinstance(y0, Ref) else y0
        y0_id = self.dst.id_of[0][Ref(y0, ())]
        out = []
        for n, pos in self.fcs[0].flat:
            word = tuple(range(n - 1, -1, -1))
            out.append(self.dst.apply_word_id(0, y0_id, word))
        return tuple(out)

    # -- structure maps by precomposition recipes ------------------------

    def _recipe(self, q: int, r: int, alpha: Sequence[int], key):
        """For each nondeg simplex of prod_q in flat order, the interned
        location of its image in prod_r under 1 x Delta(alpha)."""
        if key not in self._recipes:
            out = []
            pres = self.prods[r].presented
            fc_r = self.fcs[r]
            for n, pos in self.fcs[q].flat:
                sid = self.prods[q].sset.levels[n][pos]
                rx, rd = sid[1]
                ref = pres.ref_of(n, (rx, _apply_alpha(rd, alpha)))
                k = n - len(ref.word)
                out.append((fc_r.flat_of[(k, self.pos[r][ref.base])], k, ref.word))
            self._recipes[key] = out
        return self._recipes[key]

    def _precompose(self, f: Assignment, recipe) -> Assignment:
        dst = self.dst
        return tuple(dst.apply_word_id(k, f[m], w) for (m, k, w) in recipe)

    def face(self, p: int, f: Assignment, i: int) -> Assignment:
        alpha = [v for v in range(p + 1) if v != i]
        return self._precompose(f, self._recipe(p - 1, p, alpha, ("d", p, i)))

    def degeneracy(self, p: int, f: Assignment, i: int) -> Assignment:
        alpha = [v if v <= i else v - 1 for v in range(p + 2)]
        return self._precompose(f, self._recipe(p + 1, p, alpha, ("s", p, i)))


class MappingSpaceData:
    def __init__(self, lw: MappingLevelwise, presented: Presented):
        self.lw = lw
        self.presented = presented
        self.sset = presented.sset

    def as_map(self, p: int, elem: Assignment) -> SimplicialMap:
        """The underlying simplicial map X x Delta^p -> Y of a level-p element."""
        return solution_to_map(self.lw.fcs[p], self.lw.dst, elem)


def mapping_space(x: SimplicialSet, y: SimplicialSet, dim_bound: int,
                  pointed: Optional[Tuple[object, object]] = None,
                  budget: Optional[int] = None, name: str = "") -> MappingSpaceData:
    lw = MappingLevelwise(x, y, dim_bound, pointed=pointed, budget=budget)
    bp = None
    if pointed is not None:
        bp = lw.constant_element(pointed[1])
    pres = present(lw, dim_bound,
                   name=name or f"Map({x.name or '?'},{y.name or '?'})",
                   basepoint_elem=bp)
    return MappingSpaceData(lw, pres)


# ---------------------------------------------------------------------------
# horn filling

@dataclass
class KanReport:
    dim: int
    unfillable: List[Tuple[int, int, Tuple[Ref, ...]]]
    horns_checked: int

    @property
    def is_kan(self) -> bool:
        return not self.unfillable

    def to_json(self):
        return {"dim": self.dim,
                "horns_checked": self.horns_checked,
                "is_kan": self.is_kan,
                "unfillable": [{"m": m, "k": k,
                                "faces": [f"{r.base}{list(r.word)}" for r in faces]}
                               for m, k, faces in self.unfillable]}


def kan_check(x: SimplicialSet, dim: int, budget: Optional[int] = None) -> KanReport:
    """Enumerate all horn maps into x through the given dimension and report
    the ones without a filler."""
    x.require_levels(dim, "horn filling")
    unfillable = []
    checked = 0
    for m in range(1, dim + 1):
        xfc = FastComplex(x, m)
        for k in range(m + 1):
            hc = horn(m, k)
            hfc = FastComplex(hc, hc.top_dim)
            # face keys of potential fillers, with position k wildcarded
            fillable = set()
            for key in xfc.face_tab[m]:
                fillable.add(key[:k] + key[k + 1:])
            # horn face i (i != k) is the simplex on the vertices omitting i
            slots = []
            for i in range(m + 1):
                if i == k:
                    continue
                sid = tuple(v for v in range(m + 1) if v != i)
                n, pos = m - 1, list(hc.levels[m - 1]).index(sid)
                slots.append(hfc.flat_of[(n, pos)])
            for sol in enumerate_maps(hfc, xfc, budget=budget,
                                      what=f"horn ({m},{k}) enumeration"):
                checked += 1
                key = tuple(sol[s] for s in slots)
                if key not in fillable:
                    faces = tuple(xfc.refs[m - 1][sol[s]] for s in slots)
                    unfillable.append((m, k, faces))
    return KanReport(dim, unfillable, checked)


# ---------------------------------------------------------------------------
# isomorphism search

def iso_search(x: SimplicialSet, y: SimplicialSet,
               budget: Optional[int] = None,
               over: Optional[Tuple[SimplicialMap, SimplicialMap]] = None) -> Optional[SimplicialMap]:
    """A simplicial isomorphism x -> y, or None after exhausting the search.

    over = (p_x, p_y) restricts to isomorphisms over a common base: images
    must satisfy p_y(f(s)) = p_x(s).  Sizes beyond the budget raise
    BudgetExceeded rather than answering falsely.
    """
    if x.nondeg_counts() != y.nondeg_counts():
        return None
    top = x.top_dim
    if top < 0:
        return SimplicialMap(x, y, {}, check=False)
    xf = FastComplex(x, top)
    yf = FastComplex(y, top)
    candidate_ok = None
    if over is not None:
        px, py = over
        sp = [[px(Ref(s, ())) for s in x.levels[n]] for n in range(top + 1)]
        tp = [[py(r) for r in yf.refs[n][:yf.nondeg_count[n]]]
              for n in range(top + 1)]
        candidate_ok = lambda n, p, t: tp[n][t] == sp[n][p]
    for sol in enumerate_maps(xf, yf, bijective=True, budget=budget,
                              candidate_ok=candidate_ok, what="isomorphism search"):
        return solution_to_map(xf, yf, sol, check=True)
    return None
