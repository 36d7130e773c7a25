"""Finite categories: hom tables, functor search, and nerves.

Composition is stored diagrammatically: then(f, g) means "f followed by g"
and is defined exactly when tgt(f) == src(g).
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InputError
from .levelwise import Levelwise, Presented, present


class FiniteCategory:
    def __init__(self, objects: Sequence, morphisms: Sequence, src: Dict, tgt: Dict,
                 compose: Dict[Tuple[object, object], object], identity: Dict,
                 name: str = "", check: bool = True):
        self.objects = list(objects)
        self.morphisms = list(morphisms)
        self.src = dict(src)
        self.tgt = dict(tgt)
        self.compose = dict(compose)
        self.identity = dict(identity)
        self.name = name
        if check:
            self.validate()

    def then(self, f, g):
        return self.compose[(f, g)]

    def hom(self, x, y) -> List:
        return [f for f in self.morphisms
                if self.src[f] == x and self.tgt[f] == y]

    def validate(self):
        objs = set(self.objects)
        mors = set(self.morphisms)
        if len(objs) != len(self.objects) or len(mors) != len(self.morphisms):
            raise InputError("duplicate object or morphism ids")
        for f in self.morphisms:
            if self.src.get(f) not in objs or self.tgt.get(f) not in objs:
                raise InputError(f"morphism {f!r} has no source/target")
        for x in self.objects:
            e = self.identity.get(x)
            if e not in mors or self.src[e] != x or self.tgt[e] != x:
                raise InputError(f"object {x!r} has no identity")
        for f in self.morphisms:
            for g in self.morphisms:
                if self.tgt[f] != self.src[g]:
                    if (f, g) in self.compose:
                        raise InputError(f"composite of non-composable pair ({f!r},{g!r})")
                    continue
                h = self.compose.get((f, g))
                if h not in mors or self.src[h] != self.src[f] or self.tgt[h] != self.tgt[g]:
                    raise InputError(f"bad composite for ({f!r},{g!r})")
        for f in self.morphisms:
            if self.then(self.identity[self.src[f]], f) != f or \
               self.then(f, self.identity[self.tgt[f]]) != f:
                raise InputError(f"identity law fails at {f!r}")
        for f in self.morphisms:
            for g in self.morphisms:
                if self.tgt[f] != self.src[g]:
                    continue
                for h in self.morphisms:
                    if self.tgt[g] != self.src[h]:
                        continue
                    if self.then(self.then(f, g), h) != self.then(f, self.then(g, h)):
                        raise InputError(f"associativity fails at ({f!r},{g!r},{h!r})")

    def __repr__(self):
        return (f"FiniteCategory({self.name or 'anon'}, {len(self.objects)} objects, "
                f"{len(self.morphisms)} morphisms)")


def one_object_category(elements: Sequence, op, unit, name: str = "") -> FiniteCategory:
    """A monoid as a category with a single object; then(f, g) = op(f, g)."""
    star = "*"
    compose = {(f, g): op(f, g) for f in elements for g in elements}
    return FiniteCategory([star], list(elements), {f: star for f in elements},
                          {f: star for f in elements}, compose, {star: unit},
                          name=name)


def find_category_iso(c: FiniteCategory, d: FiniteCategory) -> Optional[Tuple[Dict, Dict]]:
    """An isomorphism of categories (object map, morphism map), or None."""
    if len(c.objects) != len(d.objects) or len(c.morphisms) != len(d.morphisms):
        return None

    def profile(cat, x):
        outs = sorted(len(cat.hom(x, y)) for y in cat.objects)
        ins = sorted(len(cat.hom(y, x)) for y in cat.objects)
        return (tuple(outs), tuple(ins))

    cprof = {x: profile(c, x) for x in c.objects}
    dprof = {x: profile(d, x) for x in d.objects}
    for obj_images in itertools.permutations(d.objects):
        obj_map = dict(zip(c.objects, obj_images))
        if any(cprof[x] != dprof[obj_map[x]] for x in c.objects):
            continue
        pairs = [(x, y) for x in c.objects for y in c.objects]
        homs = [(p, c.hom(*p), d.hom(obj_map[p[0]], obj_map[p[1]])) for p in pairs]
        if any(len(a) != len(b) for _, a, b in homs):
            continue
        for choice in itertools.product(*[itertools.permutations(b) for _, _, b in homs]):
            mor_map = {}
            for (_, a, _), images in zip(homs, choice):
                for f, g in zip(a, images):
                    mor_map[f] = g
            if any(mor_map[c.identity[x]] != d.identity[obj_map[x]] for x in c.objects):
                continue
            ok = True
            for f in c.morphisms:
                for g in c.morphisms:
                    if c.tgt[f] != c.src[g]:
                        continue
                    if mor_map[c.then(f, g)] != d.then(mor_map[f], mor_map[g]):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return obj_map, mor_map
    return None


# ---------------------------------------------------------------------------
# nerve

class NerveLevelwise(Levelwise):
    """Chains (x0, (f_1..f_n)) of composable morphisms; inner faces compose,
    outer faces drop, degeneracies insert identities."""

    def __init__(self, cat: FiniteCategory):
        self.cat = cat

    def elements(self, n: int):
        if n == 0:
            for x in self.cat.objects:
                yield (x, ())
            return
        for fs in itertools.product(self.cat.morphisms, repeat=n):
            if all(self.cat.tgt[fs[k]] == self.cat.src[fs[k + 1]] for k in range(n - 1)):
                yield (self.cat.src[fs[0]], fs)

    def face(self, n: int, x, i: int):
        x0, fs = x
        if i == 0:
            return (self.cat.tgt[fs[0]], fs[1:])
        if i == n:
            return (x0, fs[:-1])
        merged = self.cat.then(fs[i - 1], fs[i])
        return (x0, fs[:i - 1] + (merged,) + fs[i + 1:])

    def degeneracy(self, n: int, x, i: int):
        x0, fs = x
        at = x0 if i == 0 else self.cat.tgt[fs[i - 1]]
        return (x0, fs[:i] + (self.cat.identity[at],) + fs[i:])


def nerve_of_category(cat: FiniteCategory, dim_bound: int) -> Presented:
    return present(NerveLevelwise(cat), dim_bound,
                   name=f"N({cat.name or 'C'})",
                   basepoint_elem=(cat.objects[0], ()) if cat.objects else None)
