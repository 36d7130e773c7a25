"""Simplicial objects in simplicial sets with a point in degree zero.

A PreDeltaSpace stores one simplicial set per external degree m together
with face and degeneracy maps between them; arbitrary monotone reindexings
act through action().  On top of that this module provides:

  segal_check       the product comparison A_m -> A_1 x ... x A_1 (one
                    object) or its fibered version over the object set
                    (precategory case), certified as an isomorphism, a
                    bounded equivalence, or a failure
  pi0_structure     the induced monoid on pi0(A_1), with an exact group
                    decision
  diagonal          the simplicial set m |-> (A_m)_m
  loops             external degree m = the pointed mapping space out of
                    Delta^m with all vertices collapsed
  counit_map        d(loops(X, x)) -> X by restriction along the diagonal
                    simplex, with counit_compare certifying it
  SegalPrecategory  finitely many objects, simplicial homs, strict
                    composition; generated levels, ho_category, and
                    fully_faithful_check
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .cats import FiniteCategory
from .errors import InputError
from .groups import FiniteGroup
from .homology import IsoVerdict, homology_map_is_iso
from .levelwise import Levelwise, Presented, nary_product, present
from .mapping import MappingSpaceData, kan_check, mapping_space
from .simplicial import (Ref, SimplicialMap, SimplicialSet, delta_ref,
                         identity_map, pi0_components, pointed_standard)


class PreDeltaSpace:
    """Levels 0..m_bound with external face/degeneracy maps; level 0 a point."""

    def __init__(self, levels: Sequence[SimplicialSet],
                 face_maps: Sequence[Sequence[SimplicialMap]],
                 deg_maps: Sequence[Sequence[SimplicialMap]],
                 name: str = "", check: bool = True):
        self.levels = list(levels)
        self.face_maps = [list(r) for r in face_maps]   # index m >= 1, i in 0..m
        self.deg_maps = [list(r) for r in deg_maps]     # index m < m_bound, i in 0..m
        self.name = name
        self.warnings: List[str] = []
        self._actions: Dict[Tuple[Tuple[int, ...], int], SimplicialMap] = {}
        if check:
            self.validate()

    @property
    def m_bound(self) -> int:
        return len(self.levels) - 1

    def validate(self):
        b = self.m_bound
        base = self.levels[0]
        if len(base.nondegenerate(0)) != 1 or base.top_dim != 0:
            raise InputError("level 0 must be a single point")
        if len(self.face_maps) != b + 1 or len(self.deg_maps) < b:
            raise InputError("structure map tables have wrong shape")
        for m in range(1, b + 1):
            if len(self.face_maps[m]) != m + 1:
                raise InputError(f"level {m} needs {m + 1} face maps")
            for f in self.face_maps[m]:
                if f.source is not self.levels[m] or f.target is not self.levels[m - 1]:
                    raise InputError(f"face map at level {m} connects wrong levels")
        for m in range(b):
            if len(self.deg_maps[m]) != m + 1:
                raise InputError(f"level {m} needs {m + 1} degeneracy maps")
            for s in self.deg_maps[m]:
                if s.source is not self.levels[m] or s.target is not self.levels[m + 1]:
                    raise InputError(f"degeneracy map at level {m} connects wrong levels")
        # functoriality on the generating maps
        for m in range(2, b + 1):
            for j in range(m + 1):
                for i in range(j):
                    lhs = self.face_maps[m][j].compose(self.face_maps[m - 1][i])
                    rhs = self.face_maps[m][i].compose(self.face_maps[m - 1][j - 1])
                    if lhs != rhs:
                        raise InputError(f"dd identity fails at external level {m}")
        for m in range(b):
            for j in range(m + 1):
                for i in range(m + 2):
                    got = self.deg_maps[m][j].compose(self.face_maps[m + 1][i])
                    if i == j or i == j + 1:
                        want = identity_map(self.levels[m])
                    elif i < j:
                        want = self.face_maps[m][i].compose(self.deg_maps[m - 1][j - 1])
                    else:
                        want = self.face_maps[m][i - 1].compose(self.deg_maps[m - 1][j])
                    if got != want:
                        raise InputError(f"ds identity fails at external level {m}")
            if m + 1 < b:
                for j in range(m + 1):
                    for i in range(j + 1):
                        lhs = self.deg_maps[m][j].compose(self.deg_maps[m + 1][i])
                        rhs = self.deg_maps[m][i].compose(self.deg_maps[m + 1][j + 1])
                        if lhs != rhs:
                            raise InputError(f"ss identity fails at external level {m}")

    def action(self, alpha: Sequence[int], q: int) -> SimplicialMap:
        """The structure map level(q) -> level(p) of the monotone map
        alpha: [p] -> [q] given by its vertex images."""
        alpha = tuple(alpha)
        p = len(alpha) - 1
        if p < 0 or q > self.m_bound or p > self.m_bound:
            raise InputError("action outside the stored range")
        if any(alpha[k] > alpha[k + 1] for k in range(p)) or \
           alpha[0] < 0 or alpha[-1] > q:
            raise InputError(f"map {alpha} -> [{q}] is not monotone")
        key = (alpha, q)
        if key in self._actions:
            return self._actions[key]
        if alpha == tuple(range(q + 1)):
            out = identity_map(self.levels[q])
        else:
            dup = next((j for j in range(p) if alpha[j] == alpha[j + 1]), None)
            if dup is not None:
                inner = self.action(alpha[:dup] + alpha[dup + 1:], q)
                out = inner.compose(self.deg_maps[p - 1][dup])
            else:
                hit = set(alpha)
                i = max(v for v in range(q + 1) if v not in hit)
                inner = self.action(tuple(v if v < i else v - 1 for v in alpha), q - 1)
                out = self.face_maps[q][i].compose(inner)
        self._actions[key] = out
        return out

    def __repr__(self):
        return f"PreDeltaSpace({self.name or 'anon'}, levels 0..{self.m_bound})"


class PreDeltaMap:
    """A levelwise simplicial map commuting with all structure maps."""

    def __init__(self, source: PreDeltaSpace, target: PreDeltaSpace,
                 maps: Sequence[SimplicialMap], check: bool = True):
        self.source = source
        self.target = target
        self.maps = list(maps)
        if check:
            self.validate()

    def validate(self):
        b = min(self.source.m_bound, self.target.m_bound)
        if len(self.maps) != b + 1:
            raise InputError("need one map per external level")
        for m in range(1, b + 1):
            for i in range(m + 1):
                lhs = self.source.face_maps[m][i].compose(self.maps[m - 1])
                rhs = self.maps[m].compose(self.target.face_maps[m][i])
                if lhs != rhs:
                    raise InputError(f"face square fails at external level {m}")
        for m in range(b):
            for i in range(m + 1):
                lhs = self.source.deg_maps[m][i].compose(self.maps[m + 1])
                rhs = self.maps[m].compose(self.target.deg_maps[m][i])
                if lhs != rhs:
                    raise InputError(f"degeneracy square fails at external level {m}")


def monoid_nerve(elements: Sequence, op, unit, m_bound: int,
                 name: str = "") -> PreDeltaSpace:
    """Nerve of a finite monoid as a PreDeltaSpace with discrete levels."""
    levels = []
    for m in range(m_bound + 1):
        elems = [t for t in itertools.product(elements, repeat=m)]
        levels.append(SimplicialSet([elems], {}, name=f"{name or 'M'}^{m}",
                                    basepoint=tuple(unit for _ in range(m)),
                                    check=False))

    def as_map(src, dst, fn):
        return SimplicialMap(src, dst, {t: Ref(fn(t), ()) for t in src.levels[0]},
                             check=False)

    face_maps: List[List[SimplicialMap]] = [[]]
    for m in range(1, m_bound + 1):
        row = []
        for i in range(m + 1):
            if i == 0:
                fn = lambda t: t[1:]
            elif i == m:
                fn = lambda t: t[:-1]
            else:
                fn = lambda t, i=i: t[:i - 1] + (op(t[i - 1], t[i]),) + t[i + 1:]
            row.append(as_map(levels[m], levels[m - 1], fn))
        face_maps.append(row)
    deg_maps = []
    for m in range(m_bound):
        row = [as_map(levels[m], levels[m + 1],
                      lambda t, i=i: t[:i] + (unit,) + t[i:])
               for i in range(m + 1)]
        deg_maps.append(row)
    return PreDeltaSpace(levels, face_maps, deg_maps, name=name or "monoid nerve")


# ---------------------------------------------------------------------------
# diagonal

class DiagonalLevelwise(Levelwise):
    """Level m = simplices of dimension m in level(m); structure maps compose
    the internal operation with the external one (they commute)."""

    def __init__(self, a: PreDeltaSpace):
        self.a = a

    def elements(self, m: int):
        return self.a.levels[m].refs(m)

    def face(self, m: int, x, i: int):
        return self.a.face_maps[m][i](self.a.levels[m].face(x, i))

    def degeneracy(self, m: int, x, i: int):
        return self.a.deg_maps[m][i](self.a.levels[m].degeneracy(x, i))


def diagonal(a: PreDeltaSpace, dim_bound: Optional[int] = None) -> Presented:
    """The pointed simplicial set m |-> (level m)_m."""
    bound = a.m_bound if dim_bound is None else dim_bound
    if bound > a.m_bound:
        raise InputError("diagonal bound exceeds the stored external levels")
    for m in range(bound + 1):
        a.levels[m].require_levels(m, "diagonal")
    bp = a.levels[0].refs(0)[0]
    return present(DiagonalLevelwise(a), bound, name=f"diag({a.name or '?'})",
                   basepoint_elem=bp)


def diagonal_map(f: PreDeltaMap, src_diag: Presented, dst_diag: Presented,
                 check: bool = True) -> SimplicialMap:
    """The induced pointed map of diagonals."""
    return src_diag.map_by_elements(dst_diag, lambda m, x: f.maps[m](x),
                                    check=check)


# ---------------------------------------------------------------------------
# product comparison

@dataclass
class SegalReport:
    m: int
    verdict: str                      # "iso" | "equivalence" | "failed"
    pi0_bijective: bool
    homology_verified_through: Optional[int]
    comparison: SimplicialMap = field(repr=False)
    notes: List[str] = field(default_factory=list)

    @property
    def is_iso(self) -> bool:
        return self.verdict == "iso"

    def to_json(self):
        return {"m": self.m, "verdict": self.verdict,
                "pi0_bijective": self.pi0_bijective,
                "homology_verified_through": self.homology_verified_through,
                "notes": list(self.notes)}


def _pi0_class_map(f: SimplicialMap) -> Tuple[Dict, set, set]:
    comp_s = pi0_components(f.source)
    comp_t = pi0_components(f.target)
    induced = {}
    for v in f.source.nondegenerate(0):
        induced.setdefault(comp_s[v], set()).add(comp_t[f.assignment[v].base])
    return induced, set(comp_s.values()), set(comp_t.values())


def _pi0_bijective(f: SimplicialMap) -> bool:
    induced, src_classes, tgt_classes = _pi0_class_map(f)
    if any(len(ts) != 1 for ts in induced.values()):
        raise InputError("component map ill-defined; input is not a simplicial map")
    images = [next(iter(ts)) for ts in induced.values()]
    return len(set(images)) == len(src_classes) and set(images) == tgt_classes


def _qualify(f: SimplicialMap, m: int, bound: Optional[int],
             notes: List[str]) -> SegalReport:
    """Shared verdict logic for comparison maps."""
    if f.is_iso():
        notes.append("levelwise bijection on nondegenerate simplices")
        return SegalReport(m, "iso", True, bound, f, notes)
    pi0_ok = _pi0_bijective(f)
    hmax = -1
    x, y = f.source, f.target
    if bound is not None and bound >= 0:
        verdicts = []
        for k in range(bound + 1):
            if not (x.has_level(k + 1) and y.has_level(k + 1)):
                notes.append(f"homology stopped at degree {k - 1}: "
                             f"levels above {k} unknown")
                break
            verdicts.append(homology_map_is_iso(f, k))
        hmax = len(verdicts) - 1
        bad = [v for v in verdicts if not v.is_iso]
        if pi0_ok and not bad:
            return SegalReport(m, "equivalence", True, hmax, f, notes)
        for v in bad:
            notes.append(f"H_{v.degree}: {v.note or 'not an isomorphism'}")
    if not pi0_ok:
        notes.append("pi0 comparison is not bijective")
    return SegalReport(m, "failed", pi0_ok, hmax if hmax >= 0 else None, f, notes)


def _segal_predelta(a: PreDeltaSpace, m: int, bound: Optional[int]) -> SegalReport:
    src = a.levels[m]
    dim = src.complete_through if src.complete_through is not None else src.top_dim
    # the product must reach level 1 for pi0 and level bound+1 for homology,
    # but never deeper than level 1 of a can support
    need = max(dim, 1, 0 if bound is None else bound + 1)
    avail = a.levels[1].complete_through
    if avail is not None:
        need = min(need, max(dim, avail))
    a.levels[1].require_levels(min(need, dim) if avail is None else need,
                               "product comparison")
    pd = nary_product([a.levels[1]] * m, need)
    edges = [a.action((k - 1, k), m) for k in range(1, m + 1)]
    f = pd.pairing(edges, check=True)
    return _qualify(f, m, bound, [])


def segal_check(a, m: int, bound: Optional[int] = None) -> SegalReport:
    """Certify the comparison of level m with the m-fold (fibered) product
    of level 1: exact isomorphism, bounded equivalence, or failure."""
    if isinstance(a, SegalPrecategory):
        return _segal_precategory(a, m, bound)
    if not isinstance(a, PreDeltaSpace):
        raise InputError("segal_check needs a PreDeltaSpace or SegalPrecategory")
    if m < 1 or m > a.m_bound:
        raise InputError(f"level m={m} not within 1..{a.m_bound}")
    return _segal_predelta(a, m, bound)


# ---------------------------------------------------------------------------
# the monoid on pi0

@dataclass
class Pi0Structure:
    elements: List
    unit: object
    table: Dict[Tuple[object, object], object]
    associative: bool
    unital: bool
    is_group: bool
    group: Optional[FiniteGroup] = None

    def to_json(self):
        return {"elements": [str(e) for e in self.elements],
                "unit": str(self.unit),
                "table": {f"{a}|{b}": str(c) for (a, b), c in sorted(
                    self.table.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1])))},
                "associative": self.associative,
                "unital": self.unital,
                "is_group": self.is_group}


def pi0_structure(a: PreDeltaSpace) -> Pi0Structure:
    """The composition on pi0(level 1) induced by level 2.

    Requires the level-2 product comparison to be bijective on pi0; the long
    edge (0,2) then descends to a well-defined multiplication.
    """
    if a.m_bound < 2:
        raise InputError("pi0_structure needs external levels through 2")
    comp1 = pi0_components(a.levels[1])
    comp2 = pi0_components(a.levels[2])
    e1 = a.action((0, 1), 2)
    e2 = a.action((1, 2), 2)
    mu = a.action((0, 2), 2)
    classes1 = sorted(set(comp1.values()), key=str)
    classes2 = sorted(set(comp2.values()), key=str)
    fibers: Dict[Tuple, set] = {}
    product_of: Dict[Tuple, object] = {}
    for v in a.levels[2].nondegenerate(0):
        r = Ref(v, ())
        pair = (comp1[e1(r).base], comp1[e2(r).base])
        fibers.setdefault(pair, set()).add(comp2[v])
        prod = comp1[mu(r).base]
        if product_of.setdefault(pair, prod) != prod:
            raise InputError("composition undefined: the long edge is not "
                             "constant on a pi0 fiber")
    wanted = {(x, y) for x in classes1 for y in classes1}
    if set(fibers) != wanted or any(len(s) != 1 for s in fibers.values()) \
            or len(classes2) != len(wanted):
        raise InputError("composition undefined: level-2 comparison is not a "
                         "pi0 bijection")
    unit_vertex = a.deg_maps[0][0](a.levels[0].refs(0)[0])
    unit = comp1[unit_vertex.base]
    table = product_of
    unital = all(table[(unit, x)] == x and table[(x, unit)] == x
                 for x in classes1)
    associative = all(
        table[(table[(x, y)], z)] == table[(x, table[(y, z)])]
        for x in classes1 for y in classes1 for z in classes1)
    is_group = unital and associative and all(
        any(table[(x, y)] == unit and table[(y, x)] == unit for y in classes1)
        for x in classes1)
    group = None
    if is_group:
        group = FiniteGroup(classes1, dict(table), unit,
                            name=f"pi0({a.name or '?'})")
    return Pi0Structure(classes1, unit, table, associative, unital,
                        is_group, group)


# ---------------------------------------------------------------------------
# loop spaces

class LoopSpaces(PreDeltaSpace):
    """loops(X, x): level m = pointed maps out of Delta^m with its vertices
    collapsed; reindexing acts by precomposition."""

    def __init__(self, levels, face_maps, deg_maps, spaces, collapses,
                 space, base, name="", check=True):
        self.spaces: List[MappingSpaceData] = spaces
        self.collapses = collapses          # per m: (C_m, Delta^m -> C_m)
        self.space = space                  # the target X
        self.base = base                    # basepoint vertex of X
        super().__init__(levels, face_maps, deg_maps, name=name, check=check)


def _collapsed_map(alpha: Sequence[int], src_pair, dst_pair,
                   check: bool = True) -> SimplicialMap:
    """The map of vertex-collapsed simplices induced by alpha: [p] -> [q]."""
    c_src, _ = src_pair
    c_dst, q_dst = dst_pair
    assignment = {}
    for n, level in enumerate(c_src.levels):
        for s in level:
            if s == c_src.basepoint:
                assignment[s] = Ref(c_dst.basepoint, tuple(range(n - 1, -1, -1)))
            else:
                assignment[s] = q_dst(delta_ref([alpha[v] for v in s]))
    return SimplicialMap(c_src, c_dst, assignment, check=check)


def _precompose_mapping(g: SimplicialMap, src: MappingSpaceData,
                        dst: MappingSpaceData, check: bool = True) -> SimplicialMap:
    """Map(C, X) -> Map(C', X) induced by g: C' -> C."""
    recipes: Dict[int, List[Tuple[int, int, Tuple[int, ...]]]] = {}
    # interned ids of X agree between the two FastComplexes on shared levels,
    # so values transfer; words are applied in the destination interning,
    # whose top covers every slot level of the destination product
    ydst = dst.lw.dst

    def fn(p, f):
        rec = recipes.get(p)
        if rec is None:
            rec = []
            spres = src.lw.prods[p].presented
            sfc = src.lw.fcs[p]
            spos = src.lw.pos[p]
            for n, pos in dst.lw.fcs[p].flat:
                sid = dst.lw.prods[p].sset.levels[n][pos]
                rc, rd = sid[1]
                ref = spres.ref_of(n, (g(rc), rd))
                k = n - len(ref.word)
                rec.append((sfc.flat_of[(k, spos[ref.base])], k, ref.word))
            recipes[p] = rec
        return tuple(ydst.apply_word_id(k, f[m], w) for (m, k, w) in rec)

    return src.presented.map_by_elements(dst.presented, fn, check=check)


def loops(x: SimplicialSet, x0, m_bound: int, p_bound: int,
          budget: Optional[int] = None, check_kan: bool = False,
          check: bool = True, name: str = "") -> LoopSpaces:
    """The loop PreDeltaSpace of (x, x0) through external level m_bound,
    each level truncated at p_bound."""
    x0 = x0.base if isinstance(x0, Ref) else x0
    if x0 not in x.nondegenerate(0):
        raise InputError("basepoint must be a vertex")
    x.require_levels(m_bound + p_bound, "loop space")
    collapses = []
    spaces = []
    for m in range(m_bound + 1):
        cm, qm = pointed_standard(m)
        collapses.append((cm, qm))
        spaces.append(mapping_space(cm, x, p_bound, pointed=(cm.basepoint, x0),
                                    budget=budget,
                                    name=f"loops{m}({x.name or '?'})"))
    face_maps: List[List[SimplicialMap]] = [[]]
    for m in range(1, m_bound + 1):
        row = []
        for i in range(m + 1):
            alpha = [v for v in range(m + 1) if v != i]
            g = _collapsed_map(alpha, collapses[m - 1], collapses[m])
            row.append(_precompose_mapping(g, spaces[m], spaces[m - 1],
                                           check=check))
        face_maps.append(row)
    deg_maps = []
    for m in range(m_bound):
        row = []
        for i in range(m + 1):
            alpha = [v if v <= i else v - 1 for v in range(m + 2)]
            g = _collapsed_map(alpha, collapses[m + 1], collapses[m])
            row.append(_precompose_mapping(g, spaces[m], spaces[m + 1],
                                           check=check))
        deg_maps.append(row)
    out = LoopSpaces([s.sset for s in spaces], face_maps, deg_maps,
                     spaces, collapses, x, x0,
                     name=name or f"loops({x.name or '?'})", check=check)
    if check_kan:
        report = kan_check(x, min(m_bound + 1, p_bound + 1), budget=budget)
        if not report.is_kan:
            out.warnings.append(
                f"target is not fibrant through dimension {report.dim}; "
                f"{len(report.unfillable)} unfillable horns")
    return out


def counit_map(l: LoopSpaces, diag: Optional[Presented] = None,
               check: bool = True) -> SimplicialMap:
    """d(loops(X, x)) -> X: evaluate a level-p element, a pointed map
    C_p x Delta^p -> X, on the image of the diagonal p-simplex."""
    da = diag if diag is not None else diagonal(l)
    assignment = {}
    for p, level in enumerate(da.sset.levels):
        if not level:
            continue
        ms = l.spaces[p]
        qm = l.collapses[p][1]
        iota = delta_ref(range(p + 1))
        pref = ms.lw.prods[p].presented.ref_of(p, (qm(iota), iota))
        k = p - len(pref.word)
        flat = ms.lw.fcs[p].flat_of[(k, ms.lw.pos[p][pref.base])]
        for sid in level:
            f = ms.presented.elem_of(sid[1])
            vid = ms.lw.dst.apply_word_id(k, f[flat], pref.word)
            assignment[sid] = ms.lw.dst.refs[p][vid]
    return SimplicialMap(da.sset, l.space, assignment, check=check)


# ---------------------------------------------------------------------------
# bounded equivalence certificates

@dataclass
class EquivalenceCertificate:
    pi0_bijective: bool
    homology_through: int             # highest degree verified, -1 if none
    homology_ok: bool
    pi1_checked: bool
    pi1_iso: Optional[bool]
    verified_bound: int
    notes: List[str] = field(default_factory=list)
    verdicts: List[IsoVerdict] = field(default_factory=list, repr=False)

    @property
    def ok(self) -> bool:
        return (self.pi0_bijective and self.homology_ok
                and self.pi1_iso is not False)

    def to_json(self):
        return {"pi0_bijective": self.pi0_bijective,
                "homology_through": self.homology_through,
                "homology_ok": self.homology_ok,
                "pi1_checked": self.pi1_checked,
                "pi1_iso": self.pi1_iso,
                "verified_bound": self.verified_bound,
                "ok": self.ok,
                "notes": list(self.notes)}


def _perm_mul(p: Tuple[int, ...], q: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(q[p[i]] for i in range(len(p)))


def _perm_inv(p: Tuple[int, ...]) -> Tuple[int, ...]:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def _perm_of_word(word, images, n) -> Tuple[int, ...]:
    acc = tuple(range(n))
    for k in word:
        acc = _perm_mul(acc, images[k - 1] if k > 0 else _perm_inv(images[-k - 1]))
    return acc


def _loop_generators(x: SimplicialSet) -> List[Ref]:
    # generator basis of the loop group at level 0: 1-simplices not s_0(y)
    return [r for r in x.refs(1) if not r.word or r.word[-1] != 0]


def pi1_presentation(x: SimplicialSet, max_cosets: int = 20000):
    """Presentation of the fundamental group of a reduced complex, with a
    bounded order certificate; generators follow _loop_generators order."""
    from .sgroups import loop_group, pi0
    return pi0(loop_group(x, 1), max_cosets=max_cosets)


def _pi1_compare(f: SimplicialMap, max_cosets: int) -> Tuple[bool, Optional[bool], str]:
    """(checked, iso?, note) for the induced map on fundamental groups."""
    x, y = f.source, f.target
    if len(x.nondegenerate(0)) != 1 or len(y.nondegenerate(0)) != 1:
        return False, None, "pi1 skipped: complexes are not reduced"
    if not (x.has_level(2) and y.has_level(2)):
        return False, None, "pi1 skipped: levels through 2 unknown"
    px = pi1_presentation(x, max_cosets)
    py = pi1_presentation(y, max_cosets)
    if px.order is None or py.order is None:
        return False, None, "pi1 skipped: order certification exhausted its budget"
    if px.order != py.order:
        return True, False, f"pi1 orders differ: {px.order} vs {py.order}"
    if py.order == 1:
        return True, True, "pi1 trivial on both sides"
    perms = py.regular_perms(max_cosets=max_cosets)
    n = py.order
    yindex = {r: k + 1 for k, r in enumerate(_loop_generators(y))}
    images = []
    for r in _loop_generators(x):
        fr = f(r)
        if fr.word and fr.word[-1] == 0:
            images.append(tuple(range(n)))
        else:
            images.append(perms[yindex[fr] - 1])
    ident = tuple(range(n))
    for rel in px.relators:
        if _perm_of_word(rel, images, n) != ident:
            return True, False, "pi1 map does not kill a source relator"
    seen = {ident}
    frontier = [ident]
    while frontier:
        p = frontier.pop()
        for q in images:
            r = _perm_mul(p, q)
            if r not in seen:
                seen.add(r)
                frontier.append(r)
    if len(seen) != n:
        return True, False, f"pi1 map image has order {len(seen)} < {n}"
    return True, True, f"pi1 surjective between groups of order {n}"


def equivalence_certificate(f: SimplicialMap, homology_bound: int,
                            check_pi1: bool = False, max_cosets: int = 20000,
                            notes: Sequence[str] = ()) -> EquivalenceCertificate:
    """Bounded equivalence evidence for a simplicial map: pi0 bijectivity,
    exact homology comparison through a degree, optional pi1 comparison."""
    notes = list(notes)
    pi0_ok = _pi0_bijective(f)
    verdicts = []
    x, y = f.source, f.target
    for k in range(max(homology_bound + 1, 0)):
        if not (x.has_level(k + 1) and y.has_level(k + 1)):
            notes.append(f"homology stopped at degree {k - 1}: levels above {k} unknown")
            break
        verdicts.append(homology_map_is_iso(f, k))
    hthrough = len(verdicts) - 1
    homology_ok = all(v.is_iso for v in verdicts)
    for v in verdicts:
        if not v.is_iso:
            notes.append(f"H_{v.degree}: {v.note or 'not an isomorphism'}")
    pi1_checked, pi1_iso = False, None
    if check_pi1:
        pi1_checked, pi1_iso, note = _pi1_compare(f, max_cosets)
        notes.append(note)
    return EquivalenceCertificate(pi0_ok, hthrough, homology_ok,
                                  pi1_checked, pi1_iso,
                                  verified_bound=max(hthrough, 1 if pi1_checked else 0),
                                  notes=notes, verdicts=verdicts)


def counit_compare(x: SimplicialSet, x0, m_bound: int = 2,
                   p_bound: Optional[int] = None,
                   homology_bound: Optional[int] = None,
                   budget: Optional[int] = None, max_cosets: int = 20000,
                   check_kan: bool = False) -> EquivalenceCertificate:
    """Certify d(loops(x, x0)) -> x as a bounded equivalence."""
    if len(x.nondegenerate(0)) != 1:
        raise InputError("counit comparison needs a reduced complex; collapse first")
    p_bound = m_bound if p_bound is None else p_bound
    if p_bound < m_bound:
        raise InputError("p_bound must be at least m_bound for the diagonal")
    l = loops(x, x0, m_bound, p_bound, budget=budget, check_kan=check_kan)
    da = diagonal(l, m_bound)
    eps = counit_map(l, da)
    hb = m_bound - 1 if homology_bound is None else min(homology_bound, m_bound - 1)
    check_pi1 = m_bound >= 2 and x.has_level(2)
    return equivalence_certificate(eps, hb, check_pi1=check_pi1,
                                   max_cosets=max_cosets, notes=l.warnings)


# ---------------------------------------------------------------------------
# precategories with several objects

class SegalPrecategory:
    """Finitely many objects, one simplicial hom per ordered pair, strictly
    associative and unital composition given simplexwise.

    compose[(x, y, z)] is a function (n, f, g) -> h of Refs at a common
    level n; it must commute with faces and degeneracies (checked)."""

    def __init__(self, objects: Sequence, homs: Dict, compose: Dict,
                 units: Dict, dim_bound: int, name: str = "",
                 check: bool = True):
        self.objects = list(objects)
        self.homs = dict(homs)
        self.compose = dict(compose)
        self.units = dict(units)
        self.dim_bound = dim_bound
        self.name = name
        self._levels: Dict[int, Presented] = {}
        if check:
            self.validate()

    def hom(self, x, y) -> SimplicialSet:
        return self.homs[(x, y)]

    def unit_ref(self, x, n: int) -> Ref:
        return Ref(self.units[x], tuple(range(n - 1, -1, -1)))

    def comp(self, x, y, z, n: int, f: Ref, g: Ref) -> Ref:
        return self.compose[(x, y, z)](n, f, g)

    def validate(self):
        for x in self.objects:
            for y in self.objects:
                if (x, y) not in self.homs:
                    raise InputError(f"missing hom complex for ({x!r},{y!r})")
                self.homs[(x, y)].require_levels(self.dim_bound, "precategory")
        for x in self.objects:
            if self.units.get(x) not in self.homs[(x, x)].nondegenerate(0):
                raise InputError(f"unit of {x!r} is not a vertex of its hom")
        trips = [(x, y, z) for x in self.objects for y in self.objects
                 for z in self.objects]
        for (x, y, z) in trips:
            if (x, y, z) not in self.compose:
                raise InputError(f"missing composition for ({x!r},{y!r},{z!r})")
            fn = self.compose[(x, y, z)]
            hf, hg, hz = self.homs[(x, y)], self.homs[(y, z)], self.homs[(x, z)]
            for n in range(self.dim_bound + 1):
                for f in hf.refs(n):
                    for g in hg.refs(n):
                        h = fn(n, f, g)
                        if hz.dim_of(h) != n:
                            raise InputError("composition changes dimension")
                        for i in range(n + 1) if n else ():
                            if hz.face(h, i) != fn(n - 1, hf.face(f, i), hg.face(g, i)):
                                raise InputError("composition does not commute with faces")
                        if n < self.dim_bound:
                            for i in range(n + 1):
                                if hz.degeneracy(h, i) != fn(
                                        n + 1, hf.degeneracy(f, i), hg.degeneracy(g, i)):
                                    raise InputError(
                                        "composition does not commute with degeneracies")
        for x in self.objects:
            for y in self.objects:
                fn_l = self.compose[(x, x, y)]
                fn_r = self.compose[(x, y, y)]
                h = self.homs[(x, y)]
                for n in range(self.dim_bound + 1):
                    for f in h.refs(n):
                        if fn_l(n, self.unit_ref(x, n), f) != f or \
                           fn_r(n, f, self.unit_ref(y, n)) != f:
                            raise InputError("composition is not strictly unital")
        for (x, y, z) in trips:
            for w in self.objects:
                for n in range(self.dim_bound + 1):
                    for f in self.homs[(x, y)].refs(n):
                        for g in self.homs[(y, z)].refs(n):
                            for h in self.homs[(z, w)].refs(n):
                                lhs = self.comp(x, z, w, n, self.comp(x, y, z, n, f, g), h)
                                rhs = self.comp(x, y, w, n, f, self.comp(y, z, w, n, g, h))
                                if lhs != rhs:
                                    raise InputError("composition is not associative")

    # -- generated levels -------------------------------------------------

    def strings(self, p: int):
        return itertools.product(self.objects, repeat=p + 1)

    def level(self, p: int) -> Presented:
        """Level p: disjoint union over object strings of hom products."""
        if p not in self._levels:
            self._levels[p] = present(
                _StringLevelwise(self, p), self.dim_bound,
                name=f"{self.name or 'A'}_{p}")
        return self._levels[p]

    def __repr__(self):
        return (f"SegalPrecategory({self.name or 'anon'}, "
                f"{len(self.objects)} objects)")


class _StringLevelwise(Levelwise):
    def __init__(self, pc: SegalPrecategory, p: int):
        self.pc = pc
        self.p = p

    def elements(self, n: int):
        for string in self.pc.strings(self.p):
            pools = [self.pc.homs[(string[k], string[k + 1])].refs(n)
                     for k in range(self.p)]
            for combo in itertools.product(*pools):
                yield (string, combo)

    def face(self, n: int, x, i: int):
        string, combo = x
        return (string, tuple(
            self.pc.homs[(string[k], string[k + 1])].face(r, i)
            for k, r in enumerate(combo)))

    def degeneracy(self, n: int, x, i: int):
        string, combo = x
        return (string, tuple(
            self.pc.homs[(string[k], string[k + 1])].degeneracy(r, i)
            for k, r in enumerate(combo)))


class _ComposableLevelwise(Levelwise):
    """m-tuples of level-1 elements with matching endpoint objects: the
    fibered product of copies of level 1 over the object set."""

    def __init__(self, pc: SegalPrecategory, m: int):
        self.pc = pc
        self.m = m

    def elements(self, n: int):
        for string in self.pc.strings(self.m):
            pools = [self.pc.homs[(string[k], string[k + 1])].refs(n)
                     for k in range(self.m)]
            for combo in itertools.product(*pools):
                yield tuple(((string[k], string[k + 1]), (combo[k],))
                            for k in range(self.m))

    def face(self, n: int, x, i: int):
        lw1 = _StringLevelwise(self.pc, 1)
        return tuple(lw1.face(n, e, i) for e in x)

    def degeneracy(self, n: int, x, i: int):
        lw1 = _StringLevelwise(self.pc, 1)
        return tuple(lw1.degeneracy(n, e, i) for e in x)


def _segal_precategory(a: SegalPrecategory, m: int,
                       bound: Optional[int]) -> SegalReport:
    if m < 1:
        raise InputError("product comparison needs m >= 1")
    src = a.level(m)
    tgt = present(_ComposableLevelwise(a, m), a.dim_bound,
                  name=f"{a.name or 'A'}_1^({m})")

    def fn(n, x):
        string, combo = x
        return tuple(((string[k], string[k + 1]), (combo[k],))
                     for k in range(m))

    f = src.map_by_elements(tgt, fn, check=True)
    return _qualify(f, m, bound, [])


def enriched_to_precategory(objects, homs, compositions, units,
                            dim_bound: int, name: str = "") -> SegalPrecategory:
    """Package strict enrichment data; validates closure, associativity,
    units, and compatibility with the simplicial structure."""
    return SegalPrecategory(objects, homs, compositions, units, dim_bound,
                            name=name, check=True)


def precategory_of_category(cat: FiniteCategory, dim_bound: int = 2) -> SegalPrecategory:
    """The nerve data of a finite category: discrete homs, table composition."""
    homs = {}
    for x in cat.objects:
        for y in cat.objects:
            homs[(x, y)] = SimplicialSet([cat.hom(x, y)], {},
                                         name=f"hom({x},{y})", check=False)

    def make_fn(x, y, z):
        def fn(n, f, g):
            return Ref(cat.then(f.base, g.base), f.word)
        return fn

    compose = {(x, y, z): make_fn(x, y, z) for x in cat.objects
               for y in cat.objects for z in cat.objects}
    units = {x: cat.identity[x] for x in cat.objects}
    return SegalPrecategory(cat.objects, homs, compose, units, dim_bound,
                            name=f"N({cat.name or 'C'})")


def ho_category(a: SegalPrecategory) -> FiniteCategory:
    """Objects of a, morphisms pi0 of each hom, induced composition."""
    for m in (2, 3):
        rep = segal_check(a, m)
        if not rep.pi0_bijective:
            raise InputError(f"homotopy category undefined: level-{m} "
                             "comparison is not a pi0 bijection")
    comps = {pair: pi0_components(h) for pair, h in a.homs.items()}
    morphisms = []
    src: Dict = {}
    tgt: Dict = {}
    for (x, y), comp in sorted(comps.items(), key=lambda kv: str(kv[0])):
        for cls in sorted(set(comp.values()), key=str):
            mid = (x, y, cls)
            morphisms.append(mid)
            src[mid] = x
            tgt[mid] = y
    compose = {}
    for (x, y, c1) in morphisms:
        for (y2, z, c2) in morphisms:
            if y2 != y:
                continue
            out = None
            for u in a.homs[(x, y)].nondegenerate(0):
                if comps[(x, y)][u] != c1:
                    continue
                for v in a.homs[(y, z)].nondegenerate(0):
                    if comps[(y, z)][v] != c2:
                        continue
                    w = a.comp(x, y, z, 0, Ref(u, ()), Ref(v, ()))
                    cls = comps[(x, z)][w.base]
                    if out is None:
                        out = cls
                    elif out != cls:
                        raise InputError("pi0 composition is not well defined")
            compose[((x, y, c1), (y, z, c2))] = (x, z, out)
    identity = {x: (x, x, comps[(x, x)][a.units[x]]) for x in a.objects}
    return FiniteCategory(a.objects, morphisms, src, tgt, compose, identity,
                          name=f"Ho({a.name or 'A'})")


class PrecategoryMap:
    """An object map plus hom maps respecting units and composition."""

    def __init__(self, source: SegalPrecategory, target: SegalPrecategory,
                 object_map: Dict, hom_maps: Dict[Tuple, SimplicialMap],
                 check: bool = True):
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        self.hom_maps = dict(hom_maps)
        if check:
            self.validate()

    def validate(self):
        om = self.object_map
        for x in self.source.objects:
            if om.get(x) not in self.target.objects:
                raise InputError(f"object {x!r} has no image")
        for x in self.source.objects:
            for y in self.source.objects:
                fm = self.hom_maps.get((x, y))
                if fm is None or fm.source is not self.source.homs[(x, y)] \
                        or fm.target is not self.target.homs[(om[x], om[y])]:
                    raise InputError(f"bad hom map for ({x!r},{y!r})")
        for x in self.source.objects:
            got = self.hom_maps[(x, x)](Ref(self.source.units[x], ()))
            if got != Ref(self.target.units[om[x]], ()):
                raise InputError(f"unit of {x!r} is not preserved")
        d = self.source.dim_bound
        for x in self.source.objects:
            for y in self.source.objects:
                for z in self.source.objects:
                    fxy = self.hom_maps[(x, y)]
                    fyz = self.hom_maps[(y, z)]
                    fxz = self.hom_maps[(x, z)]
                    for n in range(d + 1):
                        for f in self.source.homs[(x, y)].refs(n):
                            for g in self.source.homs[(y, z)].refs(n):
                                lhs = fxz(self.source.comp(x, y, z, n, f, g))
                                rhs = self.target.comp(om[x], om[y], om[z], n,
                                                       fxy(f), fyz(g))
                                if lhs != rhs:
                                    raise InputError("composition not respected")


def fully_faithful_check(f: PrecategoryMap,
                         homology_bound: Optional[int] = None
                         ) -> Dict[Tuple, EquivalenceCertificate]:
    """Per object pair, a bounded equivalence certificate for the hom map."""
    hb = f.source.dim_bound - 1 if homology_bound is None else homology_bound
    out = {}
    for x in f.source.objects:
        for y in f.source.objects:
            out[(x, y)] = equivalence_certificate(f.hom_maps[(x, y)], hb)
    return out
