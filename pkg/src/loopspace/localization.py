"""Bounded localization of finite relative categories.

ho_localize presents the localized category by zig-zag classes: words of
forward morphisms and backward marked morphisms, identified by the congruence
generated by composition merges, identity removal, and marked cancellation,
explored through words of bounded length.  hammock_space builds the truncated
simplicial mapping space of reduced hammocks.  dk_inverse_check verifies the
inverse-pair criterion for a functor pair whose unit and counit are marked
objectwise.

Everything here is a bounded enumeration.  Results carry stabilization flags;
nothing claims exactness past its bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from .cats import FiniteCategory
from .errors import BudgetExceeded, InputError
from .levelwise import Levelwise, present
from .simplicial import SimplicialSet


class RelativeCategory:
    """A finite category with a marked class of morphisms.

    The marked class is normalized on load: identities are added and the
    class is closed under composition.  Closure does not change the
    localization and keeps hammock faces inside the hammock type (vertical
    morphisms compose when a middle row is deleted)."""

    def __init__(self, cat: FiniteCategory, weak: Iterable, name: str = ""):
        self.cat = cat
        self.name = name
        mors = set(cat.morphisms)
        w = set(weak)
        for f in w:
            if f not in mors:
                raise InputError(f"marked morphism {f!r} is not in the category")
        for x in cat.objects:
            w.add(cat.identity[x])
        changed = True
        while changed:
            changed = False
            for a in list(w):
                for b in list(w):
                    if cat.tgt[a] == cat.src[b]:
                        c = cat.then(a, b)
                        if c not in w:
                            w.add(c)
                            changed = True
        self.weak = frozenset(w)

    def __repr__(self):
        return (f"RelativeCategory({self.name or self.cat.name or 'anon'}, "
                f"{len(self.weak)} marked)")


# ---------------------------------------------------------------------------
# zig-zag words
#
# A word is (x, y, letters); a letter ('f', m) traverses m forward, a letter
# ('b', w) traverses the marked w backward.  Contraction moves: drop identity
# letters, merge same-direction neighbors, cancel w against its own backward.

def _letter_src(cat, letter):
    d, m = letter
    return cat.src[m] if d == "f" else cat.tgt[m]


def _letter_tgt(cat, letter):
    d, m = letter
    return cat.tgt[m] if d == "f" else cat.src[m]


def _word_key(word):
    return (len(word[2]), repr(word))


class _Words:
    def __init__(self, rc: RelativeCategory):
        self.rc = rc
        cat = rc.cat
        self.ids = {cat.identity[x] for x in cat.objects}
        self.letters_from: Dict[object, List] = {x: [] for x in cat.objects}
        for f in cat.morphisms:
            self.letters_from[cat.src[f]].append(("f", f))
        for w in sorted(rc.weak, key=repr):
            self.letters_from[cat.tgt[w]].append(("b", w))

    def enumerate(self, bound: int, budget: int = 500000) -> List[Tuple]:
        out = []
        frontier = [(x, x, ()) for x in self.rc.cat.objects]
        out.extend(frontier)
        for _ in range(bound):
            nxt = []
            for (x, y, ls) in frontier:
                for letter in self.letters_from[y]:
                    nxt.append((x, _letter_tgt(self.rc.cat, letter),
                                ls + (letter,)))
            out.extend(nxt)
            frontier = nxt
            if len(out) > budget:
                raise BudgetExceeded(f"more than {budget} zig-zag words; "
                                     "lower the length bound")
        return out

    def contractions(self, word) -> List[Tuple]:
        cat = self.rc.cat
        x, y, ls = word
        out = []
        for k, (d, m) in enumerate(ls):
            if m in self.ids:
                out.append((x, y, ls[:k] + ls[k + 1:]))
        for k in range(len(ls) - 1):
            (d1, m1), (d2, m2) = ls[k], ls[k + 1]
            if d1 == "f" and d2 == "f":
                out.append((x, y, ls[:k] + (("f", cat.then(m1, m2)),) + ls[k + 2:]))
            elif d1 == "b" and d2 == "b":
                out.append((x, y, ls[:k] + (("b", cat.then(m2, m1)),) + ls[k + 2:]))
            elif d1 != d2 and m1 == m2 and m1 in self.rc.weak:
                out.append((x, y, ls[:k] + ls[k + 2:]))
        return out


class _UnionFind:
    def __init__(self):
        self.parent: Dict = {}

    def __contains__(self, k):
        return k in self.parent

    def add(self, k):
        if k not in self.parent:
            self.parent[k] = k

    def find(self, k):
        root = k
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[k] != root:
            self.parent[k], k = root, self.parent[k]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


class Localization:
    """Working data behind ho_localize: bounded zig-zag classes with a
    composition table closed on the enumerated classes."""

    def __init__(self, rc: RelativeCategory, length_bound: int,
                 max_passes: int = 12, budget: Optional[int] = None):
        self.rc = rc
        self.bound = length_bound
        self.budget = 500000 if budget is None else budget
        self.words = _Words(rc)
        shallow = self._component_counts(length_bound)
        self.uf = _UnionFind()
        self._dirty = True
        self._key_of_root: Dict = {}
        for w in sorted(self.words.enumerate(length_bound + 1, self.budget),
                        key=_word_key):
            self.intern(w)
        self.stabilized = shallow == self._counts()
        self._build(max_passes)

    def intern(self, word):
        if word in self.uf:
            return self.uf.find(word)
        self._dirty = True
        self.uf.add(word)
        for c in self.words.contractions(word):
            self.intern(c)
            self.uf.union(word, c)
        return self.uf.find(word)

    def _component_counts(self, bound) -> Dict[Tuple, int]:
        uf = _UnionFind()
        for w in self.words.enumerate(bound, self.budget):
            uf.add(w)
        for w in list(uf.parent):
            for c in self.words.contractions(w):
                uf.union(w, c)
        counts: Dict[Tuple, int] = {}
        seen = set()
        for w in uf.parent:
            r = uf.find(w)
            if r not in seen:
                seen.add(r)
                counts[(w[0], w[1])] = counts.get((w[0], w[1]), 0) + 1
        return counts

    def _counts(self) -> Dict[Tuple, int]:
        counts: Dict[Tuple, int] = {}
        for key in self._class_keys():
            counts[(key[0], key[1])] = counts.get((key[0], key[1]), 0) + 1
        return counts

    def _class_keys(self) -> List[Tuple]:
        best: Dict = {}
        for w in self.uf.parent:
            r = self.uf.find(w)
            if r not in best or _word_key(w) < _word_key(best[r]):
                best[r] = w
        self._key_of_root = best
        self._dirty = False
        return sorted(best.values(), key=_word_key)

    def class_of(self, word) -> Tuple:
        """Canonical representative of a word's class (interning as needed)."""
        self.intern(word)
        if self._dirty:
            self._class_keys()
        return self._key_of_root[self.uf.find(word)]

    def compose(self, a: Tuple, b: Tuple) -> Tuple:
        if a[1] != b[0]:
            raise InputError("classes are not composable")
        return self.class_of((a[0], b[1], a[2] + b[2]))

    def _build(self, max_passes: int):
        for _ in range(max_passes):
            keys = self._class_keys()
            table = {}
            for a in keys:
                for b in keys:
                    if a[1] == b[0]:
                        table[(a, b)] = self.intern((a[0], b[1], a[2] + b[2]))
            after = self._class_keys()
            if after == keys:
                key_of = self._key_of_root
                self.table = {(a, b): key_of[self.uf.find(r)]
                              for (a, b), r in table.items()}
                break
            self.stabilized = False
        else:
            raise BudgetExceeded("localization classes kept shifting; "
                                 "raise the length bound")
        keys = self._class_keys()
        src = {k: k[0] for k in keys}
        tgt = {k: k[1] for k in keys}
        identity = {x: self.class_of((x, x, ())) for x in self.rc.cat.objects}
        self.category = FiniteCategory(self.rc.cat.objects, keys, src, tgt,
                                       self.table, identity,
                                       name=f"L({self.rc.cat.name or 'C'})")


def ho_localize(cat: FiniteCategory, weak: Iterable, length_bound: int = 6,
                budget: Optional[int] = None) -> Tuple[FiniteCategory, bool]:
    """The bounded localized category and whether the class counts agreed at
    the bound and the bound plus one."""
    loc = Localization(RelativeCategory(cat, weak), length_bound,
                       budget=budget)
    return loc.category, loc.stabilized


# ---------------------------------------------------------------------------
# hammocks
#
# A width-k hammock between x and y is (dirs, rows, verts): an alternating
# column pattern, k+1 rows of morphisms fitting it, and marked verticals at
# the interior node columns between consecutive rows, all squares commuting
# against the pinched endpoints.  Normal form: no all-identity column.

class HammockLevelwise(Levelwise):
    def __init__(self, rc: RelativeCategory, x, y, length_bound: int):
        self.rc = rc
        self.x = x
        self.y = y
        self.bound = length_bound
        self.ids = {rc.cat.identity[o] for o in rc.cat.objects}
        self._row_cache: Dict[Tuple, List] = {}
        self._vert_cache: Dict[Tuple, List] = {}

    # -- enumeration ----------------------------------------------------

    def _patterns(self) -> List[Tuple[int, ...]]:
        out = [()]
        for m in range(1, self.bound + 1):
            for lead in (1, -1):
                out.append(tuple(lead * (-1) ** j for j in range(m)))
        return out

    def _rows(self, dirs) -> List[Tuple[Tuple, Tuple]]:
        """All (mors, objs) rows from x to y along the pattern."""
        if dirs in self._row_cache:
            return self._row_cache[dirs]
        cat = self.rc.cat
        out = []

        def extend(j, mors, objs):
            if j == len(dirs):
                if objs[-1] == self.y:
                    out.append((mors, objs))
                return
            cur = objs[-1]
            if dirs[j] == 1:
                cands = [f for f in cat.morphisms if cat.src[f] == cur]
                for f in cands:
                    extend(j + 1, mors + (f,), objs + (cat.tgt[f],))
            else:
                cands = [w for w in sorted(self.rc.weak, key=repr)
                         if cat.tgt[w] == cur]
                for w in cands:
                    extend(j + 1, mors + (w,), objs + (cat.src[w],))

        extend(0, (), (self.x,))
        self._row_cache[dirs] = out
        return out

    def _row_objs(self, dirs, mors) -> Tuple:
        cat = self.rc.cat
        objs = [self.x]
        for d, m in zip(dirs, mors):
            objs.append(cat.tgt[m] if d == 1 else cat.src[m])
        return tuple(objs)

    def _verticals(self, dirs, top, bot) -> List[Tuple]:
        """All interior vertical tuples making every square commute."""
        key = (dirs, top, bot)
        if key in self._vert_cache:
            return self._vert_cache[key]
        cat = self.rc.cat
        m = len(dirs)
        tobjs = self._row_objs(dirs, top)
        bobjs = self._row_objs(dirs, bot)
        out: List[Tuple] = []

        def square_ok(j, u_prev, u_next):
            # column j between node columns j and j+1
            if dirs[j] == 1:
                return cat.then(top[j], u_next) == cat.then(u_prev, bot[j])
            return cat.then(top[j], u_prev) == cat.then(u_next, bot[j])

        def extend(node, us):
            # us[t] is the vertical at node column t; endpoints are pinned
            if node == m + 1:
                out.append(tuple(us[1:m]))
                return
            if node == m:
                cands = [cat.identity[self.y]] if tobjs[m] == self.y else []
            elif node == 0:
                cands = [cat.identity[self.x]]
            else:
                cands = [w for w in sorted(self.rc.weak, key=repr)
                         if cat.src[w] == tobjs[node] and cat.tgt[w] == bobjs[node]]
            for u in cands:
                if node > 0 and not square_ok(node - 1, us[-1], u):
                    continue
                extend(node + 1, us + [u])

        extend(0, [])
        self._vert_cache[key] = out
        return out

    def _is_normal(self, rows) -> bool:
        if not rows:
            return True
        for j in range(len(rows[0])):
            if all(row[j] in self.ids for row in rows):
                return False
        return True

    def elements(self, k: int):
        out = []
        for dirs in self._patterns():
            rows = self._rows(dirs)

            def stack(stacked, verts):
                if len(stacked) == k + 1:
                    if self._is_normal(stacked):
                        out.append((dirs, tuple(stacked), tuple(verts)))
                    return
                for r, _ in rows:
                    vs = self._verticals(dirs, stacked[-1], r)
                    for v in vs:
                        stack(stacked + [r], verts + [v])

            for r, _ in rows:
                stack([r], [])
        return out

    # -- structure maps ---------------------------------------------------

    def _normalize(self, dirs, rows, verts):
        cat = self.rc.cat
        dirs = list(dirs)
        rows = [list(r) for r in rows]
        # node-column verticals including the pinched endpoints
        full = [[cat.identity[self.x]] + list(v) + [cat.identity[self.y]]
                for v in verts]
        while True:
            m = len(dirs)
            drop = None
            for j in range(m):
                if all(row[j] in self.ids for row in rows):
                    drop = j
                    break
            if drop is not None:
                del dirs[drop]
                for row in rows:
                    del row[drop]
                for f in full:
                    del f[drop + 1]
                continue
            merge = None
            for j in range(m - 1):
                if dirs[j] == dirs[j + 1]:
                    merge = j
                    break
            if merge is None:
                break
            j = merge
            for row in rows:
                if dirs[j] == 1:
                    row[j] = cat.then(row[j], row[j + 1])
                else:
                    row[j] = cat.then(row[j + 1], row[j])
                del row[j + 1]
            for f in full:
                del f[j + 1]
            del dirs[j + 1]
        return (tuple(dirs), tuple(tuple(r) for r in rows),
                tuple(tuple(f[1:-1]) for f in full))

    def face(self, k: int, h, i: int):
        cat = self.rc.cat
        dirs, rows, verts = h
        new_rows = rows[:i] + rows[i + 1:]
        if i == 0:
            new_verts = verts[1:]
        elif i == k:
            new_verts = verts[:-1]
        else:
            merged = tuple(cat.then(verts[i - 1][t], verts[i][t])
                           for t in range(len(verts[i])))
            new_verts = verts[:i - 1] + (merged,) + verts[i:][1:]
        return self._normalize(dirs, new_rows, new_verts)

    def degeneracy(self, k: int, h, i: int):
        cat = self.rc.cat
        dirs, rows, verts = h
        objs = self._row_objs(dirs, rows[i])
        ids = tuple(cat.identity[o] for o in objs[1:-1])
        return (dirs, rows[:i + 1] + (rows[i],) + rows[i + 1:],
                verts[:i] + (ids,) + verts[i:])


def hammock_space(cat: FiniteCategory, weak: Iterable, x, y,
                  length_bound: int = 6, dim_bound: int = 2) -> SimplicialSet:
    """Truncated mapping space of the localization: reduced hammocks of
    width <= dim_bound and length <= length_bound."""
    rc = cat if isinstance(cat, RelativeCategory) else None
    if rc is None:
        rc = RelativeCategory(cat, weak)
    lw = HammockLevelwise(rc, x, y, length_bound)
    pres = present(lw, dim_bound,
                   name=f"L{rc.cat.name or 'C'}({x!r},{y!r})")
    return pres.sset


# ---------------------------------------------------------------------------
# functors and the inverse-pair criterion

class Functor:
    def __init__(self, source: FiniteCategory, target: FiniteCategory,
                 obj_map: Dict, mor_map: Dict, name: str = "", check: bool = True):
        self.source = source
        self.target = target
        self.obj_map = dict(obj_map)
        self.mor_map = dict(mor_map)
        self.name = name
        if check:
            self.validate()

    def __call__(self, f):
        return self.mor_map[f]

    def on_object(self, x):
        return self.obj_map[x]

    def validate(self):
        for x in self.source.objects:
            if self.obj_map.get(x) not in set(self.target.objects):
                raise InputError(f"object {x!r} has no image")
            if self(self.source.identity[x]) != self.target.identity[self.obj_map[x]]:
                raise InputError(f"identity of {x!r} not preserved")
        for f in self.source.morphisms:
            img = self.mor_map.get(f)
            if img not in set(self.target.morphisms):
                raise InputError(f"morphism {f!r} has no image")
            if self.target.src[img] != self.obj_map[self.source.src[f]] or \
               self.target.tgt[img] != self.obj_map[self.source.tgt[f]]:
                raise InputError(f"image of {f!r} has wrong endpoints")
        for f in self.source.morphisms:
            for g in self.source.morphisms:
                if self.source.tgt[f] == self.source.src[g]:
                    if self(self.source.then(f, g)) != \
                            self.target.then(self(f), self(g)):
                        raise InputError(f"composition not preserved at "
                                         f"({f!r},{g!r})")

    def then(self, other: "Functor") -> "Functor":
        return Functor(self.source, other.target,
                       {x: other.obj_map[y] for x, y in self.obj_map.items()},
                       {f: other.mor_map[g] for f, g in self.mor_map.items()},
                       check=False)


def _map_word(fun: Functor, word):
    x, y, ls = word
    return (fun.obj_map[x], fun.obj_map[y],
            tuple((d, fun.mor_map[m]) for d, m in ls))


@dataclass
class DKVerdict:
    ok: bool
    hypothesis_ok: bool
    stabilized: bool
    failures: List[str] = field(default_factory=list)


def _transformation_direction(cat: FiniteCategory, comps: Dict, other) -> Optional[str]:
    # "unit": components x -> other(x); "counit": components other(x) -> x
    if all(cat.src[comps[x]] == x and cat.tgt[comps[x]] == other(x)
           for x in comps):
        return "unit"
    if all(cat.src[comps[x]] == other(x) and cat.tgt[comps[x]] == x
           for x in comps):
        return "counit"
    return None


def dk_inverse_check(c_rel: RelativeCategory, d_rel: RelativeCategory,
                     f: Functor, g: Functor, eta: Dict, eps: Dict,
                     length_bound: int = 6) -> DKVerdict:
    """Verify the inverse-pair criterion: f and g preserve the marked
    classes, and the given objectwise-marked transformations connect g.f and
    f.g to the identities; then confirm on the bounded localizations that the
    induced functors are mutually inverse equivalences."""
    failures: List[str] = []
    cat_c, cat_d = c_rel.cat, d_rel.cat
    for w in sorted(c_rel.weak, key=repr):
        if f(w) not in d_rel.weak:
            failures.append(f"f does not mark {w!r}")
    for w in sorted(d_rel.weak, key=repr):
        if g(w) not in c_rel.weak:
            failures.append(f"g does not mark {w!r}")

    gf = f.then(g)
    fg = g.then(f)

    def check_transformation(cat, rel, comps, composite, label):
        if set(comps) != set(cat.objects):
            failures.append(f"{label} missing components")
            return None
        direction = _transformation_direction(cat, comps, composite.on_object)
        if direction is None:
            failures.append(f"{label} components have inconsistent endpoints")
            return None
        for x, u in comps.items():
            if u not in rel.weak:
                failures.append(f"{label} component at {x!r} is not marked")
        for m in cat.morphisms:
            a, b = cat.src[m], cat.tgt[m]
            if direction == "unit":
                lhs = cat.then(m, comps[b])
                rhs = cat.then(comps[a], composite(m))
            else:
                lhs = cat.then(composite(m), comps[b])
                rhs = cat.then(comps[a], m)
            if lhs != rhs:
                failures.append(f"{label} naturality fails at {m!r}")
        return direction

    dir_eta = check_transformation(cat_c, c_rel, eta, gf, "eta")
    dir_eps = check_transformation(cat_d, d_rel, eps, fg, "eps")
    if failures:
        return DKVerdict(False, False, False, failures)

    loc_c = Localization(c_rel, length_bound)
    loc_d = Localization(d_rel, length_bound)
    stabilized = loc_c.stabilized and loc_d.stabilized

    def fwd(cat, m):
        return (cat.src[m], cat.tgt[m], (("f", m),))

    def bwd(cat, m):
        return (cat.tgt[m], cat.src[m], (("b", m),))

    def cc(a, b):
        return (a[0], b[1], a[2] + b[2])

    # requirements are class equalities of explicit words; they are all
    # interned first so late merges cannot invalidate early comparisons
    reqs: List[Tuple] = []
    mor_c = list(loc_c.category.morphisms)
    mor_d = list(loc_d.category.morphisms)
    for k1 in mor_c:
        for k2 in mor_c:
            if k1[1] == k2[0]:
                reqs.append((loc_d, _map_word(f, loc_c.table[(k1, k2)]),
                             cc(_map_word(f, k1), _map_word(f, k2)),
                             f"induced f breaks composition at ({k1!r},{k2!r})"))
    for k1 in mor_d:
        for k2 in mor_d:
            if k1[1] == k2[0]:
                reqs.append((loc_c, _map_word(g, loc_d.table[(k1, k2)]),
                             cc(_map_word(g, k1), _map_word(g, k2)),
                             f"induced g breaks composition at ({k1!r},{k2!r})"))

    def iso_reqs(loc, cat, comps, label):
        for x in sorted(comps, key=repr):
            u = comps[x]
            a, b = cat.src[u], cat.tgt[u]
            reqs.append((loc, cc(fwd(cat, u), bwd(cat, u)), (a, a, ()),
                         f"localized {label} at {x!r} is not invertible"))
            reqs.append((loc, cc(bwd(cat, u), fwd(cat, u)), (b, b, ()),
                         f"localized {label} at {x!r} is not invertible"))

    iso_reqs(loc_c, cat_c, eta, "eta")
    iso_reqs(loc_d, cat_d, eps, "eps")

    for k in mor_c:
        composite = _map_word(g, _map_word(f, k))
        ex, ey = fwd(cat_c, eta[k[0]]), fwd(cat_c, eta[k[1]])
        if dir_eta == "unit":
            lhs, rhs = cc(k, ey), cc(ex, composite)
        else:
            lhs, rhs = cc(composite, ey), cc(ex, k)
        reqs.append((loc_c, lhs, rhs,
                     f"localized eta naturality fails at {k!r}"))
    for k in mor_d:
        composite = _map_word(f, _map_word(g, k))
        ex, ey = fwd(cat_d, eps[k[0]]), fwd(cat_d, eps[k[1]])
        if dir_eps == "unit":
            lhs, rhs = cc(k, ey), cc(ex, composite)
        else:
            lhs, rhs = cc(composite, ey), cc(ex, k)
        reqs.append((loc_d, lhs, rhs,
                     f"localized eps naturality fails at {k!r}"))

    for loc, w1, w2, _ in reqs:
        loc.intern(w1)
        loc.intern(w2)
    for loc, w1, w2, label in reqs:
        if loc.uf.find(w1) != loc.uf.find(w2):
            failures.append(label)

    return DKVerdict(not failures, True, stabilized, failures)
