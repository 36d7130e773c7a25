"""Simplicial sets presented by nondegenerate simplices.

Every simplex is a Ref(base, word): a nondegenerate base simplex together
with a strictly decreasing tuple of degeneracy indices, applied right to
left.  This normal form is unique, so equality of simplices is equality of
Refs, and all face/degeneracy arithmetic is done by rewriting words with
the simplicial identities:

    d_i d_j = d_{j-1} d_i            (i < j)
    d_i s_j = s_{j-1} d_i            (i < j)
    d_j s_j = d_{j+1} s_j = id
    d_i s_j = s_j d_{i-1}            (i > j + 1)
    s_i s_j = s_{j+1} s_i            (i <= j)

A SimplicialSet stores, per dimension, the ids of its nondegenerate
simplices and, for each of them, the Refs of its faces.  complete_through
records how far the listed levels are exhaustive (None = all of them are;
a truncated complex refuses operations that need deeper levels).
"""

from __future__ import annotations

import itertools
from collections import namedtuple
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import BoundError, BudgetExceeded, InputError

Ref = namedtuple("Ref", ["base", "word"])


def word_insert(word: Tuple[int, ...], i: int) -> Tuple[int, ...]:
    """Normal form of s_i composed after the decreasing word s_word."""
    out = list(word)
    k = 0
    while k < len(out) and i <= out[k]:
        out[k] += 1
        k += 1
    out.insert(k, i)
    return tuple(out)


def valid_words(base_dim: int, length: int) -> Iterable[Tuple[int, ...]]:
    """All strictly decreasing degeneracy words of given length on a base_dim simplex."""
    if length == 0:
        yield ()
        return

    # the letter at position j (left to right) acts on dimension base_dim + length - 1 - j
    def rec(j, prev):
        if j == length:
            yield ()
            return
        hi = min(prev - 1, base_dim + length - 1 - j) if j else base_dim + length - 1
        for i in range(hi, -1, -1):
            for rest in rec(j + 1, i):
                yield (i,) + rest

    yield from rec(0, None)


class SimplicialSet:
    def __init__(self, levels: Sequence[Sequence], faces: Dict[object, Tuple[Ref, ...]],
                 complete_through: Optional[int] = None, name: str = "",
                 basepoint: Optional[object] = None, check: bool = True):
        self.levels: List[Tuple] = [tuple(l) for l in levels]
        while self.levels and not self.levels[-1]:
            self.levels.pop()
        self.faces = dict(faces)
        self.complete_through = complete_through
        self.name = name
        self.basepoint = basepoint
        self._dim_of = {}
        for n, level in enumerate(self.levels):
            for s in level:
                if s in self._dim_of:
                    raise InputError(f"duplicate simplex id {s!r}")
                self._dim_of[s] = n
        if check:
            self.validate()

    # -- bookkeeping ---------------------------------------------------

    @property
    def top_dim(self) -> int:
        return len(self.levels) - 1

    def dim_of(self, ref: Ref) -> int:
        return self._dim_of[ref.base] + len(ref.word)

    def nondegenerate(self, n: int):
        if n < 0 or n >= len(self.levels):
            return ()
        return self.levels[n]

    def has_level(self, n: int) -> bool:
        """Whether level n is exhaustively known."""
        return self.complete_through is None or n <= self.complete_through

    def require_levels(self, n: int, why: str):
        if not self.has_level(n):
            raise BoundError(
                f"{why} needs levels through {n}, but {self.name or 'complex'} "
                f"is only complete through {self.complete_through}")

    def refs(self, n: int) -> List[Ref]:
        """All simplices at dimension n, degenerate ones included."""
        self.require_levels(n, "enumeration")
        out = []
        for d in range(min(n, self.top_dim), -1, -1):
            for s in self.levels[d]:
                for w in valid_words(d, n - d):
                    out.append(Ref(s, w))
        return out

    def count(self, n: int) -> int:
        return len(self.refs(n))

    def nondeg_counts(self) -> Tuple[int, ...]:
        return tuple(len(l) for l in self.levels)

    # -- structure maps ------------------------------------------------

    def face(self, ref: Ref, i: int) -> Ref:
        base, word = ref
        if not word:
            return self.faces[base][i]
        j = word[0]
        inner = Ref(base, word[1:])
        if i < j:
            return self.degeneracy(self.face(inner, i), j - 1)
        if i == j or i == j + 1:
            return inner
        return self.degeneracy(self.face(inner, i - 1), j)

    def degeneracy(self, ref: Ref, i: int) -> Ref:
        return Ref(ref.base, word_insert(ref.word, i))

    def apply_word(self, ref: Ref, word: Tuple[int, ...]) -> Ref:
        for i in reversed(word):
            ref = self.degeneracy(ref, i)
        return ref

    def vertex(self, ref: Ref, i: int) -> Ref:
        """The i-th vertex, as a 0-dimensional Ref."""
        n = self.dim_of(ref)
        out = ref
        for k in range(n, 0, -1):
            # strip vertices above i first, then below
            out = self.face(out, k) if k > i else self.face(out, 0)
        return out

    # -- validation ----------------------------------------------------

    def validate(self):
        for n in range(1, len(self.levels)):
            for s in self.levels[n]:
                if s not in self.faces or len(self.faces[s]) != n + 1:
                    raise InputError(f"simplex {s!r} of dim {n} needs {n + 1} faces")
                for i, ref in enumerate(self.faces[s]):
                    if ref.base not in self._dim_of:
                        raise InputError(f"face {i} of {s!r} has unknown base {ref.base!r}")
                    if self.dim_of(ref) != n - 1:
                        raise InputError(f"face {i} of {s!r} has wrong dimension")
                    if tuple(sorted(ref.word, reverse=True)) != tuple(ref.word):
                        raise InputError(f"face {i} of {s!r}: word not strictly decreasing")
                    if len(set(ref.word)) != len(ref.word):
                        raise InputError(f"face {i} of {s!r}: repeated degeneracy index")
        for n in range(2, len(self.levels)):
            for s in self.levels[n]:
                ref = Ref(s, ())
                for j in range(n + 1):
                    for i in range(j):
                        lhs = self.face(self.face(ref, j), i)
                        rhs = self.face(self.face(ref, i), j - 1)
                        if lhs != rhs:
                            raise InputError(
                                f"d_{i} d_{j} != d_{j-1} d_{i} at {s!r}")

    def check_identities(self, through: Optional[int] = None):
        """Exhaustive simplicial-identity check on all refs, for tests."""
        top = self.top_dim + 1 if through is None else through
        if self.complete_through is not None:
            top = min(top, self.complete_through)
        for n in range(top + 1):
            for ref in self.refs(n):
                for j in range(n + 1):
                    for i in range(j):
                        if n >= 2 and self.face(self.face(ref, j), i) != \
                                self.face(self.face(ref, i), j - 1):
                            raise AssertionError(f"dd at {ref}")
                for j in range(n):
                    for i in range(n):
                        if i <= j:
                            lhs = self.degeneracy(self.degeneracy(ref, j), i)
                            rhs = self.degeneracy(self.degeneracy(ref, i), j + 1)
                            if lhs != rhs:
                                raise AssertionError(f"ss at {ref}")
                for j in range(n):
                    for i in range(n + 1):
                        got = self.face(self.degeneracy(ref, j), i)
                        if i == j or i == j + 1:
                            want = ref
                        elif i < j:
                            want = self.degeneracy(self.face(ref, i), j - 1)
                        else:
                            want = self.degeneracy(self.face(ref, i - 1), j)
                        if got != want:
                            raise AssertionError(f"ds at {ref}, i={i}, j={j}")

    def __repr__(self):
        tag = f" through {self.complete_through}" if self.complete_through is not None else ""
        return f"SimplicialSet({self.name or 'anon'}, nondeg {self.nondeg_counts()}{tag})"


# ---------------------------------------------------------------------------
# simplicial maps

class SimplicialMap:
    """Map of simplicial sets, stored on nondegenerate simplices."""

    def __init__(self, source: SimplicialSet, target: SimplicialSet,
                 assignment: Dict[object, Ref], check: bool = True):
        self.source = source
        self.target = target
        self.assignment = dict(assignment)
        if check:
            self.validate()

    def __call__(self, ref: Ref) -> Ref:
        return self.target.apply_word(self.assignment[ref.base], ref.word)

    def validate(self):
        for n, level in enumerate(self.source.levels):
            for s in level:
                if s not in self.assignment:
                    raise InputError(f"no image for {s!r}")
                img = self.assignment[s]
                if self.target.dim_of(img) != n:
                    raise InputError(f"image of {s!r} has wrong dimension")
                for i in range(n + 1) if n else ():
                    lhs = self.target.face(img, i)
                    rhs = self(self.source.faces[s][i])
                    if lhs != rhs:
                        raise InputError(f"map does not commute with d_{i} at {s!r}")

    def compose(self, then: "SimplicialMap") -> "SimplicialMap":
        assert self.target is then.source
        return SimplicialMap(self.source, then.target,
                             {s: then(img) for s, img in self.assignment.items()},
                             check=False)

    def is_iso(self) -> bool:
        """Levelwise bijection on nondegenerate simplices onto nondegenerate ones."""
        for n, level in enumerate(self.source.levels):
            images = set()
            for s in level:
                img = self.assignment[s]
                if img.word:
                    return False
                images.add(img.base)
            if len(images) != len(level) or len(level) != len(self.target.nondegenerate(n)):
                return False
        if len(self.source.levels) != len(self.target.levels):
            return False
        return True

    def inverse(self) -> "SimplicialMap":
        assert self.is_iso()
        inv = {}
        for s, img in self.assignment.items():
            inv[img.base] = Ref(s, ())
        return SimplicialMap(self.target, self.source, inv, check=False)

    def __eq__(self, other):
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return self.assignment == other.assignment

    def __hash__(self):
        raise TypeError("unhashable")


def identity_map(x: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(x, x, {s: Ref(s, ()) for level in x.levels for s in level},
                         check=False)


# ---------------------------------------------------------------------------
# generators

def standard(m: int) -> SimplicialSet:
    """Delta^m; simplex ids are strictly increasing vertex tuples."""
    levels = [[tuple(c) for c in itertools.combinations(range(m + 1), k + 1)]
              for k in range(m + 1)]
    faces = {}
    for k in range(1, m + 1):
        for simp in levels[k]:
            faces[simp] = tuple(Ref(simp[:i] + simp[i + 1:], ()) for i in range(k + 1))
    return SimplicialSet(levels, faces, name=f"Delta{m}")


def boundary(m: int) -> SimplicialSet:
    full = standard(m)
    levels = full.levels[:-1]
    faces = {s: full.faces[s] for lev in levels[1:] for s in lev}
    return SimplicialSet(levels, faces, name=f"dDelta{m}")


def horn(m: int, k: int) -> SimplicialSet:
    if not 0 <= k <= m:
        raise InputError("horn index out of range")
    full = standard(m)
    omitted = tuple(v for v in range(m + 1) if v != k)
    levels = [list(lev) for lev in full.levels[:-1]]
    levels[m - 1] = [s for s in levels[m - 1] if s != omitted]
    faces = {s: full.faces[s] for lev in levels[1:] for s in lev}
    return SimplicialSet(levels, faces, name=f"Horn{m}_{k}")


def point() -> SimplicialSet:
    return SimplicialSet([["*"]], {}, name="point", basepoint="*")


def circle() -> SimplicialSet:
    v = Ref("v", ())
    return SimplicialSet([["v"], ["e"]], {"e": (v, v)}, name="circle", basepoint="v")


def generators(kind: str, *args) -> SimplicialSet:
    table = {"standard": standard, "boundary": boundary, "horn": horn,
             "point": point, "circle": circle}
    if kind not in table:
        raise InputError(f"unknown generator kind {kind!r}")
    return table[kind](*args)


def delta_ref(vertices: Sequence[int]) -> Ref:
    """The simplex of Delta^m with the given weakly increasing vertex tuple."""
    verts = list(vertices)
    if any(verts[i] > verts[i + 1] for i in range(len(verts) - 1)):
        raise InputError("vertex tuple must be weakly increasing")
    # peel duplicates left to right; a repeat at position i means sigma = s_i(d_{i+1} sigma).
    # Peeled indices come outermost first, so fold them innermost-first when normalizing.
    peeled = []
    while True:
        for i in range(len(verts) - 1):
            if verts[i] == verts[i + 1]:
                del verts[i + 1]
                peeled.append(i)
                break
        else:
            break
    word: Tuple[int, ...] = ()
    for i in reversed(peeled):
        word = word_insert(word, i)
    return Ref(tuple(verts), word)


# ---------------------------------------------------------------------------
# subcomplexes, quotients, sums

def face_closure(x: SimplicialSet, seeds: Iterable) -> set:
    todo = list(seeds)
    out = set()
    while todo:
        s = todo.pop()
        if s in out:
            continue
        out.add(s)
        if x._dim_of[s] > 0:
            for ref in x.faces[s]:
                todo.append(ref.base)
    return out


def is_subcomplex(x: SimplicialSet, simplices: set) -> bool:
    for s in simplices:
        if s not in x._dim_of:
            return False
        if x._dim_of[s] > 0:
            for ref in x.faces[s]:
                if ref.base not in simplices:
                    return False
    return True


def collapse(x: SimplicialSet, simplices: Iterable) -> Tuple[SimplicialSet, SimplicialMap]:
    """Collapse a subcomplex to a basepoint; returns (quotient, quotient map).

    Nondegenerate simplices outside the subcomplex survive with their ids;
    faces with collapsed bases become total degeneracies of the new vertex.
    """
    sub = set(simplices)
    if not sub:
        raise InputError("collapse needs a nonempty subcomplex")
    if not is_subcomplex(x, sub):
        raise InputError("collapse target is not closed under faces")
    star = "*"
    while star in x._dim_of:
        star += "'"

    def star_ref(n: int) -> Ref:
        return Ref(star, tuple(range(n - 1, -1, -1)))

    levels = [[star] + [s for s in x.levels[0] if s not in sub]]
    for n in range(1, len(x.levels)):
        levels.append([s for s in x.levels[n] if s not in sub])
    faces = {}
    quot = {s: star_ref(x._dim_of[s]) for s in sub}
    for n, level in enumerate(levels):
        for s in level:
            if s == star:
                continue
            quot[s] = Ref(s, ())
    qset = SimplicialSet(levels, {}, complete_through=x.complete_through,
                         name=f"{x.name}/sub", basepoint=star, check=False)
    for n in range(1, len(levels)):
        for s in levels[n]:
            new_faces = []
            for ref in x.faces[s]:
                if ref.base in sub:
                    new_faces.append(star_ref(n - 1))
                else:
                    new_faces.append(ref)
            faces[s] = tuple(new_faces)
    qset.faces = faces
    qset.validate()
    qmap = SimplicialMap(x, qset, quot, check=False)
    return qset, qmap


def pointed_standard(m: int) -> Tuple[SimplicialSet, SimplicialMap]:
    """Delta^m with all vertices identified, plus the quotient map."""
    dm = standard(m)
    return collapse(dm, [(v,) for v in range(m + 1)])


def disjoint_union(x: SimplicialSet, y: SimplicialSet) -> Tuple[SimplicialSet, SimplicialMap, SimplicialMap]:
    def tag(t, s):
        return (t, s)

    levels = []
    for n in range(max(len(x.levels), len(y.levels))):
        levels.append([tag(0, s) for s in x.nondegenerate(n)] +
                      [tag(1, s) for s in y.nondegenerate(n)])
    faces = {}
    for t, z in ((0, x), (1, y)):
        for n in range(1, len(z.levels)):
            for s in z.levels[n]:
                faces[tag(t, s)] = tuple(Ref(tag(t, r.base), r.word) for r in z.faces[s])
    ct = None
    for z in (x, y):
        if z.complete_through is not None:
            ct = z.complete_through if ct is None else min(ct, z.complete_through)
    out = SimplicialSet(levels, faces, complete_through=ct, name=f"{x.name}+{y.name}")
    inc_x = SimplicialMap(x, out, {s: Ref(tag(0, s), ()) for lev in x.levels for s in lev},
                          check=False)
    inc_y = SimplicialMap(y, out, {s: Ref(tag(1, s), ()) for lev in y.levels for s in lev},
                          check=False)
    return out, inc_x, inc_y


# ---------------------------------------------------------------------------
# pi0 and connectivity helpers

def pi0_components(x: SimplicialSet) -> Dict[object, object]:
    """Vertex id -> component representative (min by str)."""
    x.require_levels(1, "pi0")
    parent = {v: v for v in x.nondegenerate(0)}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in x.nondegenerate(1):
        a = find(x.faces[e][0].base)
        b = find(x.faces[e][1].base)
        if a != b:
            parent[max(a, b, key=str)] = min(a, b, key=str)
    return {v: find(v) for v in x.nondegenerate(0)}


def pi0_count(x: SimplicialSet) -> int:
    return len(set(pi0_components(x).values()))
