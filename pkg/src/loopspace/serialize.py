"""JSON documents for the toolkit's objects, with validating loaders.

Formats (all plain JSON):

- simplicial set: {"dims": {"0": ["v0", ...], "1": [{"id": "e0",
  "faces": [ref, ref]}, ...], ...}} with ref = {"base": id,
  "degs": [strictly decreasing indices]}; optional "basepoint", "name".
- group: {"kind": "finite", "elements": [...], "table": [[index]],
  "unit": index} or {"kind": "fp", "generators": [...], "relators":
  [[signed 1-based indices]], "order": int|null} or {"kind": "free",
  "generators": [...]}.
- G-set: {"set": [names], "group": <group doc>, "action":
  {label: [indices]}} with one permutation per element (finite kind) or
  per generator (fp/free kind).
- category: {"objects": [...], "morphisms": [{"id", "src", "dst"}, ...],
  "compose": [[i, j, k] index triples], "weak": [morphism ids]}.
- pre-delta space: {"predelta": {"0": <sset doc>, ...}, "faces":
  {"1": [assignment, ...], ...}, "degeneracies": {"0": [...], ...}} with
  assignment = {source id: ref in the target}.

Loaders reject on the first violation and name the offending location.
Dumps are byte-deterministic (sorted keys, fixed indentation).
"""

from __future__ import annotations

import json
from typing import Dict, List, Optional, Sequence, Tuple

from .cats import FiniteCategory
from .errors import InputError
from .groups import FiniteGroup, GroupPresentation
from .simplicial import Ref, SimplicialSet


def _need(cond: bool, where: str, msg: str):
    if not cond:
        raise InputError(f"{where}: {msg}")


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def parse(text: str, where: str = "document"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{where}: not valid JSON ({e.msg} at line {e.lineno})")


def read_path(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror or e}")
    return parse(text, where=path)


def detect(doc) -> str:
    if not isinstance(doc, dict):
        raise InputError("document: expected a JSON object at top level")
    if "dims" in doc:
        return "sset"
    if "kind" in doc:
        return "group"
    if "set" in doc and "action" in doc:
        return "gset"
    if "objects" in doc and "morphisms" in doc:
        return "category"
    if "predelta" in doc:
        return "predelta"
    raise InputError("document: unrecognized document shape")


# ---------------------------------------------------------------------------
# simplicial sets

def canonical_names(x: SimplicialSet) -> Dict[object, str]:
    """Stable string names for nondegenerate simplices; kept as-is when the
    complex already uses strings, renamed by level and position otherwise."""
    ids = [s for level in x.levels for s in level]
    if all(isinstance(s, str) for s in ids):
        return {s: s for s in ids}
    return {s: f"d{n}e{k}"
            for n, level in enumerate(x.levels)
            for k, s in enumerate(level)}


def ref_document(ref: Ref, names: Dict) -> Dict:
    return {"base": names[ref.base], "degs": list(ref.word)}


def sset_document(x: SimplicialSet, names: Optional[Dict] = None) -> Dict:
    if names is None:
        names = canonical_names(x)
    dims: Dict[str, list] = {}
    for n, level in enumerate(x.levels):
        if n == 0:
            dims["0"] = [names[s] for s in level]
        else:
            dims[str(n)] = [{"id": names[s],
                             "faces": [ref_document(r, names)
                                       for r in x.faces[s]]}
                            for s in level]
    doc: Dict = {"dims": dims}
    if x.name:
        doc["name"] = x.name
    if x.basepoint is not None:
        doc["basepoint"] = names[x.basepoint]
    return doc


def load_ref(doc, dim_of: Dict[str, int], where: str) -> Tuple[Ref, int]:
    _need(isinstance(doc, dict), where, "a face must be an object")
    _need(set(doc) == {"base", "degs"}, where,
          'a face needs exactly the keys "base" and "degs"')
    base = doc["base"]
    _need(isinstance(base, str), where + ".base", "must be a string id")
    _need(base in dim_of, where + ".base", f"unknown simplex {base!r}")
    degs = doc["degs"]
    _need(isinstance(degs, list) and
          all(isinstance(d, int) and d >= 0 for d in degs),
          where + ".degs", "must be a list of nonnegative integers")
    _need(all(degs[k] > degs[k + 1] for k in range(len(degs) - 1)),
          where + ".degs", "must be strictly decreasing")
    ref = Ref(base, tuple(degs))
    return ref, dim_of[base] + len(degs)


def load_sset(doc, where: str = "sset") -> SimplicialSet:
    _need(isinstance(doc, dict), where, "expected an object")
    dims = doc.get("dims")
    _need(isinstance(dims, dict) and dims, where + ".dims",
          "expected a nonempty object")
    _need(all(k.isdigit() for k in dims), where + ".dims",
          "level keys must be decimal strings")
    top = max(int(k) for k in dims)
    _need(set(dims) == {str(n) for n in range(top + 1)}, where + ".dims",
          "levels must be contiguous from 0")
    levels: List[List[str]] = []
    faces: Dict[str, Tuple[Ref, ...]] = {}
    dim_of: Dict[str, int] = {}
    for n in range(top + 1):
        here = f"{where}.dims.{n}"
        entries = dims[str(n)]
        _need(isinstance(entries, list), here, "expected a list")
        level: List[str] = []
        for k, entry in enumerate(entries):
            spot = f"{here}[{k}]"
            if n == 0:
                _need(isinstance(entry, str), spot, "a vertex is a string id")
                sid = entry
            else:
                _need(isinstance(entry, dict), spot, "expected an object")
                _need("id" in entry and "faces" in entry, spot,
                      'needs "id" and "faces"')
                sid = entry["id"]
                _need(isinstance(sid, str), spot + ".id", "must be a string")
            _need(sid not in dim_of, spot, f"duplicate simplex id {sid!r}")
            level.append(sid)
            dim_of[sid] = n
            if n > 0:
                flist = entry["faces"]
                _need(isinstance(flist, list) and len(flist) == n + 1,
                      spot + ".faces", f"needs exactly {n + 1} faces")
                refs = []
                for i, fdoc in enumerate(flist):
                    ref, d = load_ref(fdoc, dim_of, f"{spot}.faces[{i}]")
                    _need(d == n - 1, f"{spot}.faces[{i}]",
                          f"face must have dimension {n - 1}, got {d}")
                    refs.append(ref)
                faces[sid] = tuple(refs)
        levels.append(level)
    basepoint = doc.get("basepoint")
    if basepoint is not None:
        _need(basepoint in set(levels[0]), where + ".basepoint",
              "must name a vertex")
    name = doc.get("name", "")
    _need(isinstance(name, str), where + ".name", "must be a string")
    try:
        return SimplicialSet(levels, faces, name=name, basepoint=basepoint)
    except InputError as e:
        raise InputError(f"{where}: {e}")


# ---------------------------------------------------------------------------
# groups

def group_document(g) -> Dict:
    if isinstance(g, FiniteGroup):
        names = [str(e) for e in g.elements]
        if len(set(names)) != len(names):
            names = [f"g{k}" for k in range(len(g.elements))]
        index = {e: k for k, e in enumerate(g.elements)}
        table = [[index[g.op(a, b)] for b in g.elements] for a in g.elements]
        doc = {"kind": "finite", "elements": names, "table": table,
               "unit": index[g.unit]}
        if g.name:
            doc["name"] = g.name
        return doc
    if isinstance(g, GroupPresentation):
        if not g.relators:
            return {"kind": "free", "generators": list(g.generators)}
        return {"kind": "fp", "generators": list(g.generators),
                "relators": [list(r) for r in g.relators],
                "order": g.order}
    raise InputError(f"cannot serialize group object {type(g).__name__}")


def load_group(doc, where: str = "group"):
    _need(isinstance(doc, dict), where, "expected an object")
    kind = doc.get("kind")
    if kind == "finite":
        elems = doc.get("elements")
        _need(isinstance(elems, list) and elems and
              all(isinstance(e, str) for e in elems),
              where + ".elements", "expected a nonempty list of strings")
        _need(len(set(elems)) == len(elems), where + ".elements",
              "duplicate element names")
        n = len(elems)
        table = doc.get("table")
        _need(isinstance(table, list) and len(table) == n and
              all(isinstance(row, list) and len(row) == n for row in table),
              where + ".table", f"expected a {n}x{n} index matrix")
        for i, row in enumerate(table):
            for j, v in enumerate(row):
                _need(isinstance(v, int) and 0 <= v < n,
                      f"{where}.table[{i}][{j}]", "index out of range")
        unit = doc.get("unit")
        _need(isinstance(unit, int) and 0 <= unit < n, where + ".unit",
              "must index an element")
        mult = {(elems[i], elems[j]): elems[table[i][j]]
                for i in range(n) for j in range(n)}
        try:
            return FiniteGroup(elems, mult, elems[unit],
                               name=doc.get("name", ""))
        except InputError as e:
            raise InputError(f"{where}: {e}")
    if kind in ("fp", "free"):
        gens = doc.get("generators")
        _need(isinstance(gens, list) and
              all(isinstance(s, str) for s in gens),
              where + ".generators", "expected a list of strings")
        relators = doc.get("relators", []) if kind == "fp" else []
        _need(isinstance(relators, list), where + ".relators",
              "expected a list of words")
        rels = []
        for i, r in enumerate(relators):
            _need(isinstance(r, list) and
                  all(isinstance(v, int) and v != 0 and
                      abs(v) <= len(gens) for v in r),
                  f"{where}.relators[{i}]",
                  "a word is a list of nonzero signed generator indices")
            rels.append(tuple(r))
        pres = GroupPresentation(tuple(gens), tuple(rels))
        order = doc.get("order")
        if order is not None:
            _need(isinstance(order, int) and order > 0, where + ".order",
                  "must be a positive integer")
            got = pres.certify_order()
            _need(got == order, where + ".order",
                  f"declared order {order} but enumeration gives {got}")
        return pres
    raise InputError(f'{where}.kind: expected "finite", "fp" or "free"')


# ---------------------------------------------------------------------------
# G-sets

def gset_document(gs) -> Dict:
    from .gspaces import GSet
    if not isinstance(gs, GSet):
        raise InputError("gset_document needs a GSet")
    names = [str(x) for x in gs.elements]
    if len(set(names)) != len(names):
        names = [f"x{k}" for k in range(len(gs.elements))]
    index = {x: k for k, x in enumerate(gs.elements)}
    action: Dict[str, List[int]] = {}
    if gs.presented:
        for k, gen in enumerate(gs.group.generators):
            action[gen] = [index[gs.action[k][x]] for x in gs.elements]
        gdoc = group_document(gs.group)
    else:
        gdoc = group_document(gs.group)
        labels = gdoc["elements"]
        for k, g in enumerate(gs.group.elements):
            action[labels[k]] = [index[gs.action[g][x]] for x in gs.elements]
    doc = {"set": names, "group": gdoc, "action": action}
    if gs.name:
        doc["name"] = gs.name
    return doc


def load_gset(doc, where: str = "gset"):
    from .gspaces import GSet
    _need(isinstance(doc, dict), where, "expected an object")
    pts = doc.get("set")
    _need(isinstance(pts, list) and pts and
          all(isinstance(p, str) for p in pts),
          where + ".set", "expected a nonempty list of strings")
    _need(len(set(pts)) == len(pts), where + ".set", "duplicate point names")
    group = load_group(doc.get("group"), where + ".group")
    action_doc = doc.get("action")
    _need(isinstance(action_doc, dict), where + ".action",
          "expected an object")

    def perm_of(label):
        raw = action_doc.get(label)
        _need(isinstance(raw, list) and len(raw) == len(pts),
              f"{where}.action.{label}",
              f"expected a permutation of {len(pts)} indices")
        _need(all(isinstance(v, int) and 0 <= v < len(pts) for v in raw) and
              len(set(raw)) == len(raw),
              f"{where}.action.{label}", "not a permutation")
        return {pts[i]: pts[raw[i]] for i in range(len(pts))}

    if isinstance(group, GroupPresentation):
        action = [perm_of(gen) for gen in group.generators]
    else:
        action = {g: perm_of(g) for g in group.elements}
    try:
        return GSet(pts, group, action, name=doc.get("name", ""))
    except InputError as e:
        raise InputError(f"{where}: {e}")


# ---------------------------------------------------------------------------
# categories

def category_document(cat: FiniteCategory, weak: Sequence = ()) -> Dict:
    mors = list(cat.morphisms)
    index = {f: k for k, f in enumerate(mors)}
    doc = {"objects": [str(x) for x in cat.objects],
           "morphisms": [{"id": str(f), "src": str(cat.src[f]),
                          "dst": str(cat.tgt[f])} for f in mors],
           "compose": sorted([index[f], index[g], index[h]]
                             for (f, g), h in cat.compose.items()),
           "weak": sorted(str(w) for w in weak)}
    if cat.name:
        doc["name"] = cat.name
    return doc


def load_category(doc, where: str = "category") -> Tuple[FiniteCategory, List]:
    _need(isinstance(doc, dict), where, "expected an object")
    objs = doc.get("objects")
    _need(isinstance(objs, list) and objs and
          all(isinstance(x, str) for x in objs),
          where + ".objects", "expected a nonempty list of strings")
    _need(len(set(objs)) == len(objs), where + ".objects", "duplicates")
    mdocs = doc.get("morphisms")
    _need(isinstance(mdocs, list), where + ".morphisms", "expected a list")
    mors, src, tgt = [], {}, {}
    for k, md in enumerate(mdocs):
        spot = f"{where}.morphisms[{k}]"
        _need(isinstance(md, dict) and {"id", "src", "dst"} <= set(md), spot,
              'needs "id", "src" and "dst"')
        mid = md["id"]
        _need(isinstance(mid, str) and mid not in src, spot + ".id",
              "must be a fresh string id")
        _need(md["src"] in set(objs) and md["dst"] in set(objs), spot,
              "src/dst must name objects")
        mors.append(mid)
        src[mid] = md["src"]
        tgt[mid] = md["dst"]
    triples = doc.get("compose")
    _need(isinstance(triples, list), where + ".compose", "expected a list")
    compose = {}
    for k, t in enumerate(triples):
        spot = f"{where}.compose[{k}]"
        _need(isinstance(t, list) and len(t) == 3 and
              all(isinstance(v, int) and 0 <= v < len(mors) for v in t),
              spot, "expected an index triple")
        i, j, h = t
        _need((mors[i], mors[j]) not in compose, spot, "duplicate pair")
        compose[(mors[i], mors[j])] = mors[h]
    # identities are not part of the format; recover them from the table
    identity = {}
    for x in objs:
        endos = [f for f in mors if src[f] == x and tgt[f] == x]
        units = [e for e in endos
                 if all(compose.get((e, f)) == f
                        for f in mors if src[f] == x) and
                 all(compose.get((f, e)) == f
                     for f in mors if tgt[f] == x)]
        _need(len(units) == 1, where,
              f"object {x!r} needs exactly one identity morphism, "
              f"found {len(units)}")
        identity[x] = units[0]
    weak = doc.get("weak", [])
    _need(isinstance(weak, list) and
          all(w in set(mors) for w in weak),
          where + ".weak", "must list morphism ids")
    try:
        cat = FiniteCategory(objs, mors, src, tgt, compose, identity,
                             name=doc.get("name", ""))
    except InputError as e:
        raise InputError(f"{where}: {e}")
    return cat, list(weak)


# ---------------------------------------------------------------------------
# pre-delta spaces

def map_document(assignment: Dict, src_names: Dict, tgt_names: Dict) -> Dict:
    return {src_names[s]: ref_document(r, tgt_names)
            for s, r in assignment.items()}


def load_assignment(doc, source: SimplicialSet, target: SimplicialSet,
                    where: str):
    from .simplicial import SimplicialMap
    _need(isinstance(doc, dict), where, "expected an object")
    t_dims = {s: n for n, level in enumerate(target.levels) for s in level}
    assignment = {}
    for sid, rdoc in doc.items():
        _need(sid in source._dim_of, f"{where}.{sid}",
              "does not name a source simplex")
        ref, _ = load_ref(rdoc, t_dims, f"{where}.{sid}")
        assignment[sid] = ref
    try:
        return SimplicialMap(source, target, assignment)
    except InputError as e:
        raise InputError(f"{where}: {e}")


def predelta_document(a) -> Dict:
    levels = a.levels
    names = [canonical_names(x) for x in levels]
    doc = {"predelta": {str(m): sset_document(levels[m], names[m])
                        for m in range(len(levels))},
           "faces": {str(m): [map_document(f.assignment, names[m],
                                           names[m - 1])
                              for f in a.face_maps[m]]
                     for m in range(1, len(levels))},
           "degeneracies": {str(m): [map_document(s.assignment, names[m],
                                                  names[m + 1])
                                     for s in a.deg_maps[m]]
                            for m in range(len(levels) - 1)}}
    if a.name:
        doc["name"] = a.name
    return doc


def load_predelta(doc, where: str = "predelta"):
    from .delta import PreDeltaSpace
    _need(isinstance(doc, dict), where, "expected an object")
    ldocs = doc.get("predelta")
    _need(isinstance(ldocs, dict) and ldocs, where + ".predelta",
          "expected a nonempty object")
    top = max((int(k) for k in ldocs if k.isdigit()), default=-1)
    _need(set(ldocs) == {str(m) for m in range(top + 1)}, where + ".predelta",
          "levels must be contiguous from 0")
    levels = [load_sset(ldocs[str(m)], f"{where}.predelta.{m}")
              for m in range(top + 1)]
    fdocs = doc.get("faces", {})
    sdocs = doc.get("degeneracies", {})
    _need(isinstance(fdocs, dict) and isinstance(sdocs, dict),
          where, '"faces" and "degeneracies" must be objects')
    face_maps = [[]]
    for m in range(1, top + 1):
        row = fdocs.get(str(m))
        _need(isinstance(row, list) and len(row) == m + 1,
              f"{where}.faces.{m}", f"needs {m + 1} assignments")
        face_maps.append([load_assignment(row[i], levels[m], levels[m - 1],
                                          f"{where}.faces.{m}[{i}]")
                          for i in range(m + 1)])
    deg_maps = []
    for m in range(top):
        row = sdocs.get(str(m))
        _need(isinstance(row, list) and len(row) == m + 1,
              f"{where}.degeneracies.{m}", f"needs {m + 1} assignments")
        deg_maps.append([load_assignment(row[i], levels[m], levels[m + 1],
                                         f"{where}.degeneracies.{m}[{i}]")
                         for i in range(m + 1)])
    try:
        return PreDeltaSpace(levels, face_maps, deg_maps,
                             name=doc.get("name", ""))
    except InputError as e:
        raise InputError(f"{where}: {e}")
