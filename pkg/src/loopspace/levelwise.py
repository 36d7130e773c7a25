"""Presenting levelwise simplicial data in Eilenberg-Zilber normal form.

A Levelwise object describes a simplicial set by its full element sets per
dimension together with face and degeneracy operators on elements.  present()
finds the nondegenerate elements (x is degenerate at i iff x = s_i d_{i+1} x),
peels maximal degeneracy indices to compute the unique normal form of every
element it meets, and emits a SimplicialSet truncated at the requested bound.

Products, coskeleta and levelwise quotients are all Levelwise instances, so
one routine covers them; heavier levelwise objects (mapping spaces, diagonals)
live in other modules but present the same way.
"""

from __future__ import annotations

import itertools
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import BoundError, InputError
from .simplicial import (Ref, SimplicialMap, SimplicialSet, delta_ref, standard,
                         valid_words)


class Levelwise:
    def elements(self, n: int) -> Iterable:
        raise NotImplementedError

    def face(self, n: int, x, i: int):
        """d_i of an element at level n (result lives at n-1)."""
        raise NotImplementedError

    def degeneracy(self, n: int, x, i: int):
        """s_i of an element at level n (result lives at n+1)."""
        raise NotImplementedError


class Presented:
    """A SimplicialSet plus the dictionary between elements and Refs."""

    def __init__(self, sset: SimplicialSet, lw: Levelwise,
                 ref_of: Dict[Tuple[int, object], Ref]):
        self.sset = sset
        self.lw = lw
        self._ref_of = ref_of

    def ref_of(self, n: int, x) -> Ref:
        """Normal form of any element, peeling maximal degeneracy indices."""
        key = (n, x)
        if key not in self._ref_of:
            for i in range(n - 1, -1, -1):
                down = self.lw.face(n, x, i + 1)
                if self.lw.degeneracy(n - 1, down, i) == x:
                    inner = self.ref_of(n - 1, down)
                    self._ref_of[key] = Ref(inner.base, _insert(inner.word, i))
                    break
            else:
                raise InputError(f"element {x!r} at level {n} is not presented")
        return self._ref_of[key]

    def elem_of(self, ref: Ref):
        n, x = ref.base
        for i in reversed(ref.word):
            x = self.lw.degeneracy(n, x, i)
            n += 1
        return x

    def map_by_elements(self, target: "Presented",
                        fn: Callable[[int, object], object],
                        check: bool = True) -> SimplicialMap:
        """SimplicialMap from an elementwise function (levelwise, any elements)."""
        assignment = {}
        for n, level in enumerate(self.sset.levels):
            for s in level:
                _, x = s
                assignment[s] = target.ref_of(n, fn(n, x))
        return SimplicialMap(self.sset, target.sset, assignment, check=check)


def present(lw: Levelwise, dim_bound: int, name: str = "",
            basepoint_elem=None) -> Presented:
    """Normal-form presentation of a levelwise simplicial set through dim_bound."""
    ref_of: Dict[Tuple[int, object], Ref] = {}
    levels: List[List] = []

    for n in range(dim_bound + 1):
        level: List = []
        for x in lw.elements(n):
            degenerate = False
            for i in range(n - 1, -1, -1):
                down = lw.face(n, x, i + 1)
                if lw.degeneracy(n - 1, down, i) == x:
                    degenerate = True
                    break
            if not degenerate:
                sid = (n, x)
                ref_of[(n, x)] = Ref(sid, ())
                level.append(sid)
        levels.append(level)

    bp = None
    if basepoint_elem is not None:
        bp = (0, basepoint_elem)
    sset = SimplicialSet(levels, {}, complete_through=dim_bound, name=name,
                         basepoint=bp, check=False)
    pres = Presented(sset, lw, ref_of)
    faces: Dict[object, Tuple[Ref, ...]] = {}
    for n in range(1, dim_bound + 1):
        for sid in levels[n]:
            _, x = sid
            faces[sid] = tuple(pres.ref_of(n - 1, lw.face(n, x, i))
                               for i in range(n + 1))
    sset.faces = faces
    sset.validate()
    return pres


def _insert(word, i):
    from .simplicial import word_insert
    return word_insert(word, i)


# ---------------------------------------------------------------------------
# products

class ProductLevelwise(Levelwise):
    """n-ary product; elements at level n are tuples of Refs, one per factor."""

    def __init__(self, factors: Sequence[SimplicialSet]):
        self.factors = list(factors)

    def elements(self, n: int):
        pools = [f.refs(n) for f in self.factors]
        return itertools.product(*pools)

    def face(self, n: int, x, i: int):
        return tuple(f.face(r, i) for f, r in zip(self.factors, x))

    def degeneracy(self, n: int, x, i: int):
        return tuple(f.degeneracy(r, i) for f, r in zip(self.factors, x))


def product(x: SimplicialSet, y: SimplicialSet, dim_bound: int) -> "ProductData":
    return nary_product([x, y], dim_bound)


class ProductData:
    def __init__(self, presented: Presented, factors: List[SimplicialSet]):
        self.presented = presented
        self.sset = presented.sset
        self.factors = factors

    def projection(self, k: int) -> SimplicialMap:
        assignment = {}
        for n, level in enumerate(self.sset.levels):
            for sid in level:
                _, refs = sid
                assignment[sid] = refs[k]
        return SimplicialMap(self.sset, self.factors[k], assignment, check=False)

    def ref_of_pair(self, n: int, refs: Tuple[Ref, ...]) -> Ref:
        return self.presented.ref_of(n, tuple(refs))

    def pairing(self, maps: Sequence[SimplicialMap], check: bool = True) -> SimplicialMap:
        """The map (f_1,...,f_k): Z -> product from maps with common source."""
        source = maps[0].source
        assignment = {}
        for n, level in enumerate(source.levels):
            for s in level:
                refs = tuple(m(Ref(s, ())) for m in maps)
                assignment[s] = self.ref_of_pair(n, refs)
        return SimplicialMap(source, self.sset, assignment, check=check)


def nary_product(factors: List[SimplicialSet], dim_bound: int) -> ProductData:
    for f in factors:
        f.require_levels(dim_bound, "product")
    lw = ProductLevelwise(factors)
    name = "x".join(f.name or "?" for f in factors)
    pres = present(lw, dim_bound, name=name)
    return ProductData(pres, list(factors))


def induced_delta_map(alpha: Sequence[int], source: SimplicialSet,
                      target: SimplicialSet) -> SimplicialMap:
    """Map Delta^p -> Delta^q induced by vertex images alpha (both standard complexes)."""
    assignment = {s: delta_ref([alpha[v] for v in s])
                  for lev in source.levels for s in lev}
    return SimplicialMap(source, target, assignment, check=False)


# ---------------------------------------------------------------------------
# coskeleton

class CoskLevelwise(Levelwise):
    """cosk_n X: level p is the set of maps from the n-truncation of Delta^p to X.

    An element is a tuple of X-Refs indexed by the nondegenerate simplices of
    Delta^p of dimension <= n, in the fixed order skeleton_simplices(p, n).
    """

    def __init__(self, x: SimplicialSet, n: int):
        self.x = x
        self.n = n
        x.require_levels(n, "coskeleton")
        self._simplices: Dict[int, List[Tuple[int, ...]]] = {}

    def simplices(self, p: int) -> List[Tuple[int, ...]]:
        if p not in self._simplices:
            out = []
            for k in range(min(p, self.n) + 1):
                out.extend(itertools.combinations(range(p + 1), k + 1))
            self._simplices[p] = out
        return self._simplices[p]

    def elements(self, p: int):
        simps = self.simplices(p)
        by_dim: Dict[int, List[int]] = {}
        for idx, s in enumerate(simps):
            by_dim.setdefault(len(s) - 1, []).append(idx)
        values: List[Optional[Ref]] = [None] * len(simps)
        pos = {s: i for i, s in enumerate(simps)}

        def consistent(idx) -> Iterable[Ref]:
            s = simps[idx]
            k = len(s) - 1
            if k == 0:
                yield from (Ref(v, ()) for v in self.x.nondegenerate(0))
                return
            want = [values[pos[s[:i] + s[i + 1:]]] for i in range(k + 1)]
            for cand in self.x.refs(k):
                if all(self.x.face(cand, i) == want[i] for i in range(k + 1)):
                    yield cand

        order = [idx for k in sorted(by_dim) for idx in by_dim[k]]

        def rec(j):
            if j == len(order):
                yield tuple(values)
                return
            idx = order[j]
            for cand in consistent(idx):
                values[idx] = cand
                yield from rec(j + 1)
            values[idx] = None

        yield from rec(0)

    def face(self, n: int, x, i: int):
        alpha = [v for v in range(n + 1) if v != i]
        return self._precompose(n - 1, alpha, n, x)

    def degeneracy(self, n: int, x, i: int):
        alpha = list(range(i + 1)) + list(range(i, n + 1))
        return self._precompose(n + 1, alpha, n, x)

    def _precompose(self, p_src: int, alpha: Sequence[int], p_tgt: int, x):
        src_simps = self.simplices(p_src)
        tgt_pos = {s: i for i, s in enumerate(self.simplices(p_tgt))}
        out = []
        for s in src_simps:
            image = delta_ref([alpha[v] for v in s])
            base_val = x[tgt_pos[image.base]]
            out.append(self.x.apply_word(base_val, image.word))
        return tuple(out)


def coskeleton(x: SimplicialSet, n: int, dim_bound: int) -> Presented:
    lw = CoskLevelwise(x, n)
    return present(lw, dim_bound, name=f"cosk{n}({x.name})")


def coskeleton_unit(x: SimplicialSet, n: int, dim_bound: int,
                    cosk: Presented) -> SimplicialMap:
    """The canonical map X -> cosk_n X (restriction of simplices to the n-skeleton)."""
    lw: CoskLevelwise = cosk.lw  # type: ignore[assignment]
    assignment = {}
    for p in range(min(dim_bound, x.top_dim) + 1):
        simps = lw.simplices(p)
        for s in x.nondegenerate(p):
            values = [_face_along(x, Ref(s, ()), t, p) for t in simps]
            assignment[s] = cosk.ref_of(p, tuple(values))
    return SimplicialMap(x, cosk.sset, assignment, check=False)


def _face_along(x: SimplicialSet, ref: Ref, vertices: Tuple[int, ...], p: int) -> Ref:
    """Restrict a p-simplex to the face spanned by the given vertex subset.

    Deleting from the top keeps the remaining indices stable.
    """
    out = ref
    for v in range(p, -1, -1):
        if v not in vertices:
            out = x.face(out, v)
    return out
