"""Integer-table engine for enumerating simplicial maps.

FastComplex interns every simplex (degenerate ones included) of a presented
simplicial set through a level bound, so faces and degeneracies become tuple
lookups and a by_faces index answers "which simplices have exactly these
faces" in one probe.

enumerate_maps runs depth-first search over images of the source's
nondegenerate simplices in level-major order.  A partial assignment is
extended only through the by_faces index, and unit propagation fires as soon
as all faces of a higher simplex are decided: an empty candidate set cuts the
branch immediately, a singleton forces the image.  Without the propagation,
coskeletal targets (nerves) would force exploring every edge labelling before
any triangle constraint is seen.
"""

from __future__ import annotations

from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import BudgetExceeded
from .simplicial import Ref, SimplicialMap, SimplicialSet

Assignment = Tuple[int, ...]  # dst ids in source flat order


class FastComplex:
    def __init__(self, x: SimplicialSet, top: int):
        x.require_levels(top, "interning")
        self.x = x
        self.top = top
        self.refs: List[List[Ref]] = []
        self.id_of: List[Dict[Ref, int]] = []
        self.nondeg_count: List[int] = []
        for n in range(top + 1):
            rs = x.refs(n)
            self.refs.append(rs)
            self.id_of.append({r: i for i, r in enumerate(rs)})
            self.nondeg_count.append(len(x.nondegenerate(n)))

        self.face_tab: List[Optional[List[Tuple[int, ...]]]] = [None]
        for n in range(1, top + 1):
            self.face_tab.append(
                [tuple(self.id_of[n - 1][x.face(r, i)] for i in range(n + 1))
                 for r in self.refs[n]])
        self.deg_tab: List[List[Tuple[int, ...]]] = []
        for n in range(top):
            self.deg_tab.append(
                [tuple(self.id_of[n + 1][x.degeneracy(r, i)] for i in range(n + 1))
                 for r in self.refs[n]])
        self.by_faces: List[Optional[Dict[Tuple[int, ...], List[int]]]] = [None]
        for n in range(1, top + 1):
            idx: Dict[Tuple[int, ...], List[int]] = {}
            for i, key in enumerate(self.face_tab[n]):
                idx.setdefault(key, []).append(i)
            self.by_faces.append(idx)

        # nondegenerate simplices in flat (level-major) order; nondeg position
        # p at level n coincides with interned id p because refs() lists the
        # empty-word simplices of the top base dimension first
        self.flat: List[Tuple[int, int]] = []
        self.flat_of: Dict[Tuple[int, int], int] = {}
        for n in range(top + 1):
            for p in range(self.nondeg_count[n]):
                self.flat_of[(n, p)] = len(self.flat)
                self.flat.append((n, p))

        pos_of = {}
        for n in range(min(top, x.top_dim) + 1):
            for p, s in enumerate(x.levels[n]):
                pos_of[s] = (n, p)
        # face recipe of a nondegenerate simplex: (base_level, base_pos, word)
        # per face, enough to push faces through any assignment of the bases
        self.recipes: List[List[Tuple[Tuple[int, int, Tuple[int, ...]], ...]]] = [[]]
        for n in range(1, top + 1):
            level = []
            for p in range(self.nondeg_count[n]):
                sid = x.levels[n][p]
                rec = []
                for ref in x.faces[sid]:
                    k, bp = pos_of[ref.base]
                    rec.append((k, bp, ref.word))
                level.append(tuple(rec))
            self.recipes.append(level)
        self._sigs: Optional[List[List[Tuple[int, ...]]]] = None

    def apply_word_id(self, level: int, i: int, word: Tuple[int, ...]) -> int:
        for w in reversed(word):
            i = self.deg_tab[level][i][w]
            level += 1
        return i

    def face_signatures(self) -> List[List[Tuple[int, ...]]]:
        """Per level, per nondeg simplex: how often it is the i-th strict face
        of a nondeg simplex one level up.  Invariant under isomorphism."""
        if self._sigs is None:
            sigs = []
            for n in range(self.top + 1):
                cnt = [[0] * (n + 2) for _ in range(self.nondeg_count[n])]
                if n + 1 <= self.top:
                    for rec in self.recipes[n + 1]:
                        for i, (k, bp, w) in enumerate(rec):
                            if k == n and not w:
                                cnt[bp][i] += 1
                sigs.append([tuple(c) for c in cnt])
            self._sigs = sigs
        return self._sigs


def enumerate_maps(src: FastComplex, dst: FastComplex, *,
                   fixed: Optional[Dict[Tuple[int, int], int]] = None,
                   candidate_ok: Optional[Callable[[int, int, int], bool]] = None,
                   force: Optional[Callable[[int, int, int], Optional[Iterable[Tuple[int, int]]]]] = None,
                   bijective: bool = False,
                   budget: Optional[int] = None,
                   what: str = "map enumeration") -> Iterator[Assignment]:
    """All simplicial maps src -> dst as flat tuples of dst ids.

    fixed pins images of specific nondegenerate simplices ((level, pos) ->
    dst id).  candidate_ok(level, pos, dst_id) filters images pointwise.
    force(level, pos, dst_id) may return further same-level assignments that
    the choice entails (equivariant search), or None to veto it.  bijective
    restricts images to unused nondegenerate simplices of matching face
    signature, which is the isomorphism search mode.  budget bounds the
    number of candidate attempts; exceeding it raises BudgetExceeded.
    """
    top = src.top
    if dst.top < top:
        raise ValueError("target interned too shallow for this source")
    if bijective:
        if list(src.nondeg_count) != list(dst.nondeg_count[:top + 1]):
            return
        if any(dst.nondeg_count[top + 1:]):
            return
        sig_s = src.face_signatures()
        sig_d = dst.face_signatures()
    fixed = dict(fixed or {})

    nflat = len(src.flat)
    assign: List[Optional[int]] = [None] * nflat
    used: List[set] = [set() for _ in range(top + 1)]
    base_deps: List[List[int]] = [[] for _ in range(nflat)]
    dep_count: List[int] = [0] * nflat
    for n in range(1, top + 1):
        for p in range(src.nondeg_count[n]):
            f = src.flat_of[(n, p)]
            bases = {src.flat_of[(k, bp)] for (k, bp, w) in src.recipes[n][p]}
            dep_count[f] = len(bases)
            for b in bases:
                base_deps[b].append(f)

    trail: List[Tuple[str, int]] = []
    nodes = 0

    def expected_key(n: int, p: int) -> Tuple[int, ...]:
        return tuple(dst.apply_word_id(k, assign[src.flat_of[(k, bp)]], w)
                     for (k, bp, w) in src.recipes[n][p])

    def admissible(n: int, p: int, t: int) -> bool:
        if bijective and (t >= dst.nondeg_count[n] or t in used[n]
                          or sig_d[n][t] != sig_s[n][p]):
            return False
        want = fixed.get((n, p))
        if want is not None and want != t:
            return False
        if candidate_ok is not None and not candidate_ok(n, p, t):
            return False
        return True

    def commit(flat: int, t: int) -> bool:
        pending = [(flat, t)]
        while pending:
            f, v = pending.pop()
            n, p = src.flat[f]
            if assign[f] is not None:
                if assign[f] != v:
                    return False
                continue
            if not admissible(n, p, v):
                return False
            assign[f] = v
            trail.append(("a", f))
            if bijective:
                used[n].add(v)
            if force is not None:
                extra = force(n, p, v)
                if extra is None:
                    return False
                for p2, v2 in extra:
                    pending.append((src.flat_of[(n, p2)], v2))
            for g in base_deps[f]:
                dep_count[g] -= 1
                trail.append(("d", g))
                if dep_count[g] == 0:
                    ng, pg = src.flat[g]
                    key = expected_key(ng, pg)
                    tv = assign[g]
                    if tv is not None:
                        if dst.face_tab[ng][tv] != key:
                            return False
                    else:
                        cands = [c for c in dst.by_faces[ng].get(key, ())
                                 if admissible(ng, pg, c)]
                        if not cands:
                            return False
                        if len(cands) == 1:
                            pending.append((g, cands[0]))
        return True

    def rewind(mark: int):
        while len(trail) > mark:
            op, v = trail.pop()
            if op == "a":
                n, _ = src.flat[v]
                if bijective:
                    used[n].discard(assign[v])
                assign[v] = None
            else:
                dep_count[v] += 1

    start = len(trail)
    ok = True
    for (n, p), t in sorted(fixed.items()):
        if not commit(src.flat_of[(n, p)], t):
            ok = False
            break

    def visit(idx: int) -> Iterator[Assignment]:
        nonlocal nodes
        while idx < nflat and assign[idx] is not None:
            idx += 1
        if idx == nflat:
            yield tuple(assign)
            return
        n, p = src.flat[idx]
        if n == 0:
            pool: Sequence[int] = range(len(dst.refs[0]))
        else:
            pool = dst.by_faces[n].get(expected_key(n, p), ())
        for t in pool:
            nodes += 1
            if budget is not None and nodes > budget:
                raise BudgetExceeded(f"{what}: more than {budget} candidate attempts")
            if not admissible(n, p, t):
                continue
            mark = len(trail)
            if commit(idx, t):
                yield from visit(idx)
            rewind(mark)

    if ok:
        yield from visit(0)
    rewind(start)


def solution_to_map(src: FastComplex, dst: FastComplex, sol: Assignment,
                    check: bool = False) -> SimplicialMap:
    assignment = {}
    for f, t in enumerate(sol):
        n, p = src.flat[f]
        assignment[src.x.levels[n][p]] = dst.refs[n][t]
    return SimplicialMap(src.x, dst.x, assignment, check=check)


def simplicial_maps(x: SimplicialSet, y: SimplicialSet, *,
                    budget: Optional[int] = None,
                    fixed_refs: Optional[Dict[object, Ref]] = None) -> List[SimplicialMap]:
    """All simplicial maps x -> y, x fully presented and finite-dimensional."""
    top = x.top_dim
    src = FastComplex(x, top)
    dst = FastComplex(y, top)
    fixed = None
    if fixed_refs:
        fixed = {}
        for sid, ref in fixed_refs.items():
            n, p = next((n, p) for n, lev in enumerate(x.levels)
                        for p, s in enumerate(lev) if s == sid)
            fixed[(n, p)] = dst.id_of[n][ref]
    return [solution_to_map(src, dst, sol)
            for sol in enumerate_maps(src, dst, fixed=fixed, budget=budget,
                                      what=f"maps {x.name or '?'} -> {y.name or '?'}")]
