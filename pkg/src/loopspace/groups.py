"""Finite group models, free-group words, presentations, coset enumeration.

Words over a generator set of size k are tuples of nonzero ints in
{-k..-1, 1..k}; positive i means generator i-1, negative its inverse.
Everything is exact; no group is ever represented approximately.

Classes
-------
FiniteGroup      multiplication-table group with hashable element labels
FreeGroup        reduced words under concatenation
GroupPresentation  generators, relators, optional certified order / witness

Functions
---------
coset_enumeration  bounded Todd-Coxeter; certifies finite order or raises
subgroups, transitive_actions  subgroup lattice helpers for finite groups
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import BudgetExceeded, InputError

Word = Tuple[int, ...]


def reduce_word(word: Iterable[int]) -> Word:
    out: List[int] = []
    for letter in word:
        if letter == 0:
            raise InputError("word letters are nonzero signed generator indices")
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def invert_word(word: Word) -> Word:
    return tuple(-letter for letter in reversed(word))


class FiniteGroup:
    """Finite group as a full multiplication table over hashable labels."""

    def __init__(self, elements: Sequence, mult: Dict[Tuple[object, object], object],
                 unit, name: str = "G", check: bool = True):
        self.elements = tuple(elements)
        self.mult = dict(mult)
        self.unit = unit
        self.name = name
        self.inv = {}
        for a in self.elements:
            for b in self.elements:
                if self.mult[(a, b)] == unit:
                    self.inv[a] = b
                    break
        if check:
            self.validate()

    def validate(self):
        elems = set(self.elements)
        if len(elems) != len(self.elements):
            raise InputError("duplicate group elements")
        if self.unit not in elems:
            raise InputError("unit missing from element list")
        for a in self.elements:
            if self.mult[(self.unit, a)] != a or self.mult[(a, self.unit)] != a:
                raise InputError(f"unit law fails at {a!r}")
            if a not in self.inv:
                raise InputError(f"no inverse for {a!r}")
        for a in self.elements:
            for b in self.elements:
                if self.mult[(a, b)] not in elems:
                    raise InputError(f"multiplication leaves the set at ({a!r},{b!r})")
        for a in self.elements:
            for b in self.elements:
                for c in self.elements:
                    if self.op(self.op(a, b), c) != self.op(a, self.op(b, c)):
                        raise InputError(f"associativity fails at ({a!r},{b!r},{c!r})")

    def op(self, a, b):
        return self.mult[(a, b)]

    def inverse(self, a):
        return self.inv[a]

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order {len(self)})"

    def power(self, a, n: int):
        if n < 0:
            return self.power(self.inv[a], -n)
        out = self.unit
        for _ in range(n):
            out = self.op(out, a)
        return out

    def word_value(self, word: Word, images: Sequence):
        """Evaluate a word through generator images (1-based indices)."""
        out = self.unit
        for letter in word:
            g = images[abs(letter) - 1]
            if letter < 0:
                g = self.inv[g]
            out = self.op(out, g)
        return out

    def generated_subgroup(self, gens: Iterable) -> frozenset:
        seen = {self.unit}
        frontier = [self.unit]
        gens = list(gens) + [self.inv[g] for g in gens]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.op(x, g)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    def is_isomorphic_to(self, other: "FiniteGroup") -> bool:
        """Brute-force isomorphism test, intended for orders <= 24."""
        if len(self) != len(other):
            return False
        return find_isomorphism(self, other) is not None


def find_isomorphism(g: FiniteGroup, h: FiniteGroup) -> Optional[Dict[object, object]]:
    if len(g) != len(h):
        return None
    g_orders = {a: _element_order(g, a) for a in g.elements}
    h_orders = {a: _element_order(h, a) for a in h.elements}
    if sorted(g_orders.values()) != sorted(h_orders.values()):
        return None
    gens = _small_generating_set(g)
    rest = [a for a in g.elements if a not in gens]
    order = list(gens) + rest

    def extend(i, partial):
        if i == len(gens):
            full = _close_homomorphism(g, h, partial, order)
            return full
        a = order[i]
        for b in h.elements:
            if h_orders[b] != g_orders[a]:
                continue
            partial[a] = b
            got = extend(i + 1, partial)
            if got is not None:
                return got
            del partial[a]
        return None

    return extend(0, {})


def _close_homomorphism(g, h, gen_map, order):
    """Extend a generator assignment to a full map; None if inconsistent or non-bijective."""
    full = {g.unit: h.unit}
    full.update(gen_map)
    changed = True
    while changed:
        changed = False
        for a in list(full):
            for b in list(full):
                c = g.op(a, b)
                img = h.op(full[a], full[b])
                if c in full:
                    if full[c] != img:
                        return None
                else:
                    full[c] = img
                    changed = True
    if len(full) != len(g) or len(set(full.values())) != len(g):
        return None
    return full


def _element_order(g: FiniteGroup, a) -> int:
    n, x = 1, a
    while x != g.unit:
        x = g.op(x, a)
        n += 1
    return n


def _small_generating_set(g: FiniteGroup) -> List:
    by_order = sorted(g.elements, key=lambda a: (-_element_order(g, a), str(a)))
    gens: List = []
    span = g.generated_subgroup(gens)
    for a in by_order:
        if a in span:
            continue
        gens.append(a)
        span = g.generated_subgroup(gens)
        if len(span) == len(g):
            break
    return gens


def cyclic(n: int) -> FiniteGroup:
    mult = {(a, b): (a + b) % n for a in range(n) for b in range(n)}
    return FiniteGroup(range(n), mult, 0, name=f"Z{n}")


def symmetric(n: int) -> FiniteGroup:
    elems = [tuple(p) for p in itertools.permutations(range(n))]
    mult = {}
    for p in elems:
        for q in elems:
            mult[(p, q)] = tuple(p[q[i]] for i in range(n))
    return FiniteGroup(elems, mult, tuple(range(n)), name=f"S{n}")


def trivial_group() -> FiniteGroup:
    return FiniteGroup(["e"], {("e", "e"): "e"}, "e", name="1")


def product_group(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    elems = [(a, b) for a in g.elements for b in h.elements]
    mult = {((a, b), (c, d)): (g.op(a, c), h.op(b, d)) for (a, b) in elems for (c, d) in elems}
    return FiniteGroup(elems, mult, (g.unit, h.unit), name=f"{g.name}x{h.name}", check=False)


class FreeGroup:
    """Free group on named generators; elements are reduced words."""

    def __init__(self, names: Sequence[str]):
        self.names = tuple(names)

    @property
    def rank(self) -> int:
        return len(self.names)

    @property
    def unit(self) -> Word:
        return ()

    def op(self, a: Word, b: Word) -> Word:
        return reduce_word(a + b)

    def inverse(self, a: Word) -> Word:
        return invert_word(a)

    def generator(self, i: int) -> Word:
        return (i + 1,)

    def __repr__(self):
        return f"FreeGroup(rank {self.rank})"


class Homomorphism:
    """Group homomorphism given by a full table (finite source) or generator images."""

    def __init__(self, source, target, table: Optional[Dict] = None,
                 gen_images: Optional[Sequence[Word]] = None):
        self.source = source
        self.target = target
        self.table = table
        self.gen_images = tuple(gen_images) if gen_images is not None else None
        if table is None and gen_images is None:
            raise InputError("homomorphism needs a table or generator images")

    def __call__(self, x):
        if self.table is not None:
            return self.table[x]
        # free source: x is a word, push letters through generator images
        out = self.target.unit
        for letter in x:
            img = self.gen_images[abs(letter) - 1]
            if letter < 0:
                img = self.target.inverse(img)
            out = self.target.op(out, img)
        return out

    def validate_on(self, pairs: Iterable[Tuple[object, object]]):
        for a, b in pairs:
            lhs = self(self.source.op(a, b))
            rhs = self.target.op(self(a), self(b))
            if lhs != rhs:
                raise InputError(f"not a homomorphism at ({a!r},{b!r})")

    def compose(self, then: "Homomorphism") -> "Homomorphism":
        if self.table is not None:
            return Homomorphism(self.source, then.target,
                                table={x: then(y) for x, y in self.table.items()})
        return Homomorphism(self.source, then.target,
                            gen_images=[then_word(then, w) for w in self.gen_images])

    def __eq__(self, other):
        if not isinstance(other, Homomorphism):
            return NotImplemented
        if self.table is not None and other.table is not None:
            return self.table == other.table
        return self.gen_images == other.gen_images

    def __hash__(self):
        raise TypeError("unhashable")


def then_word(hom: "Homomorphism", word: Word):
    out = hom.target.unit
    for letter in word:
        img = hom.gen_images[abs(letter) - 1]
        if letter < 0:
            img = hom.target.inverse(img)
        out = hom.target.op(out, img)
    return out


def identity_hom(group) -> Homomorphism:
    if isinstance(group, FiniteGroup):
        return Homomorphism(group, group, table={a: a for a in group.elements})
    return Homomorphism(group, group, gen_images=[group.generator(i) for i in range(group.rank)])


# ---------------------------------------------------------------------------
# coset enumeration

def coset_enumeration(ngens: int, relators: Sequence[Word],
                      subgroup: Sequence[Word] = (), max_cosets: int = 20000):
    """Todd-Coxeter over the given presentation.

    Returns the coset table as a list of rows, one per surviving coset;
    row[2*i] is the action of generator i+1, row[2*i+1] of its inverse.
    Raises BudgetExceeded if more than max_cosets cosets get allocated.
    """
    # columns: generator g -> 2*(g-1), inverse -> 2*(g-1)+1
    ncols = 2 * ngens
    table: List[List[Optional[int]]] = [[None] * ncols]
    rep: List[int] = [0]          # union-find over coset names
    merge_queue: List[Tuple[int, int]] = []
    merge_count = [0]

    def find(c):
        while rep[c] != c:
            rep[c] = rep[rep[c]]
            c = rep[c]
        return c

    def col(letter):
        return 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1

    def inv_col(letter):
        return col(-letter)

    def new_coset():
        if len(table) >= max_cosets:
            raise BudgetExceeded(f"coset enumeration budget {max_cosets} exhausted")
        table.append([None] * ncols)
        rep.append(len(table) - 1)
        return len(table) - 1

    def set_entry(c, letter, d):
        c, d = find(c), find(d)
        cur = table[c][col(letter)]
        if cur is None:
            table[c][col(letter)] = d
        elif find(cur) != d:
            merge(find(cur), d)
        cur2 = table[d][inv_col(letter)]
        if cur2 is None:
            table[d][inv_col(letter)] = c
        elif find(cur2) != c:
            merge(find(cur2), c)

    def merge(a, b):
        merge_queue.append((a, b))
        while merge_queue:
            x, y = merge_queue.pop()
            x, y = find(x), find(y)
            if x == y:
                continue
            if y < x:
                x, y = y, x
            merge_count[0] += 1
            rep[y] = x
            for cidx in range(ncols):
                d = table[y][cidx]
                if d is None:
                    continue
                d = find(d)
                cur = table[x][cidx]
                if cur is None:
                    table[x][cidx] = d
                elif find(cur) != d:
                    merge_queue.append((find(cur), d))

    def trace(c, word):
        """Push coset c through word, filling gaps with fresh cosets; close the loop."""
        c = find(c)
        start = c
        for k, letter in enumerate(word):
            nxt = table[c][col(letter)]
            if nxt is None:
                if k == len(word) - 1:
                    set_entry(c, letter, start)
                    return
                nxt = new_coset()
                set_entry(c, letter, nxt)
            c = find(table[c][col(letter)])
        if c != find(start):
            merge(c, find(start))

    for w in subgroup:
        trace(0, reduce_word(w))

    # HLT: scan each live coset once in creation order, then fill its row;
    # afterwards re-trace until no pass causes a merge
    c = 0
    while c < len(table):
        if find(c) != c:
            c += 1
            continue
        for w in relators:
            if w:
                trace(c, w)
            if find(c) != c:
                break
        if find(c) == c:
            for cidx in range(ncols):
                if table[c][cidx] is None:
                    letter = cidx // 2 + 1 if cidx % 2 == 0 else -(cidx // 2 + 1)
                    set_entry(c, letter, new_coset())
        c += 1
    while True:
        before = merge_count[0]
        for c in range(len(table)):
            if find(c) != c:
                continue
            for w in relators:
                if w:
                    trace(c, w)
        if merge_count[0] == before:
            break

    live = sorted(c for c in range(len(table)) if find(c) == c)
    renum = {c: i for i, c in enumerate(live)}
    rows = []
    for c in live:
        rows.append([renum[find(table[c][cidx])] for cidx in range(ncols)])
    return rows


@dataclass
class GroupPresentation:
    """Presentation with optional exactness certificates.

    order is only set when bounded coset enumeration completed; witness, when
    present, maps generators into a finite group and has been verified to be
    an isomorphism (relators die, image generates, orders agree).
    """
    generators: Tuple[str, ...]
    relators: Tuple[Word, ...]
    order: Optional[int] = None
    witness: Optional[dict] = field(default=None, repr=False)

    def certify_order(self, max_cosets: int = 20000) -> int:
        rows = coset_enumeration(len(self.generators), self.relators, max_cosets=max_cosets)
        self.order = len(rows)
        return self.order

    def regular_perms(self, max_cosets: int = 20000) -> List[Tuple[int, ...]]:
        """One permutation of the coset set per generator, in order; the
        regular action, so the group they generate has size self.order."""
        rows = coset_enumeration(len(self.generators), self.relators, max_cosets=max_cosets)
        self.order = len(rows)
        return [tuple(rows[c][2 * i] for c in range(len(rows)))
                for i in range(len(self.generators))]

    def permutation_group(self, max_cosets: int = 20000) -> FiniteGroup:
        """The regular image as a concrete finite group (faithful: cosets of 1)."""
        rows = coset_enumeration(len(self.generators), self.relators, max_cosets=max_cosets)
        n = len(rows)
        perms = []
        for i in range(len(self.generators)):
            perms.append(tuple(rows[c][2 * i] for c in range(n)))
        elems = set()
        frontier = [tuple(range(n))]
        elems.add(tuple(range(n)))
        inv_perms = [tuple(rows[c][2 * i + 1] for c in range(n))
                     for i in range(len(self.generators))]
        while frontier:
            p = frontier.pop()
            for q in list(perms) + inv_perms:
                r = tuple(q[p[i]] for i in range(n))
                if r not in elems:
                    elems.add(r)
                    frontier.append(r)
        elems = sorted(elems)
        mult = {(p, q): tuple(p[q[i]] for i in range(n)) for p in elems for q in elems}
        grp = FiniteGroup(elems, mult, tuple(range(n)), name="presented", check=False)
        return grp

    def verify_witness(self, target: FiniteGroup, images: Sequence,
                       max_cosets: int = 20000) -> dict:
        """Check generators |-> images defines an isomorphism onto target."""
        for rel in self.relators:
            if target.word_value(rel, images) != target.unit:
                raise InputError(f"relator {rel} does not die in {target.name}")
        span = target.generated_subgroup(images)
        if len(span) != len(target):
            raise InputError("witness images do not generate the target")
        order = self.certify_order(max_cosets=max_cosets)
        if order != len(target):
            raise InputError(f"presented order {order} != |{target.name}| = {len(target)}")
        self.witness = {"target": target.name,
                        "images": {g: images[i] for i, g in enumerate(self.generators)}}
        return self.witness


def presentation_of_finite(group: FiniteGroup) -> GroupPresentation:
    """Tautological presentation: one generator per nonunit element, table relators."""
    gens = [a for a in group.elements if a != group.unit]
    idx = {a: i + 1 for i, a in enumerate(gens)}

    def letter(a):
        return (idx[a],) if a != group.unit else ()

    relators = []
    for a in gens:
        for b in gens:
            c = group.op(a, b)
            relators.append(reduce_word(letter(a) + letter(b) + invert_word(letter(c))))
    return GroupPresentation(tuple(str(a) for a in gens), tuple(relators))


# ---------------------------------------------------------------------------
# subgroup lattice / transitive actions (desk scale: |G| <= 24)

def subgroups(group: FiniteGroup) -> List[frozenset]:
    found = {frozenset([group.unit])}
    frontier = [frozenset([group.unit])]
    while frontier:
        h = frontier.pop()
        for a in group.elements:
            if a in h:
                continue
            bigger = group.generated_subgroup(set(h) | {a})
            if bigger not in found:
                found.add(bigger)
                frontier.append(bigger)
    return sorted(found, key=lambda s: (len(s), sorted(str(x) for x in s)))


def conjugacy_classes_of_subgroups(group: FiniteGroup) -> List[frozenset]:
    all_subs = subgroups(group)
    seen = set()
    reps = []
    for h in all_subs:
        if h in seen:
            continue
        orbit = set()
        for g in group.elements:
            gi = group.inv[g]
            orbit.add(frozenset(group.op(group.op(g, x), gi) for x in h))
        seen |= orbit
        reps.append(h)
    return reps
