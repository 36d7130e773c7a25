"""Command line front end.

Loads JSON documents, runs computations and verification suites, and emits
reports with stable key order.  Identical inputs and flags produce
byte-identical reports; the timing field is always null for that reason.

Exit codes: 0 every verdict passed, 1 verification failure (or any non-pass
verdict), 2 malformed input, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional

from .delta import (counit_compare, loops, pi0_structure, pi1_presentation,
                    segal_check)
from .errors import BudgetExceeded, InputError, VerificationError
from .groups import FiniteGroup, GroupPresentation, find_isomorphism
from .gspaces import (GSet, borel, covering_check, discrete_gspace, gset_iso,
                      monodromy_M, natural_end, transitive_gsets)
from .homology import homology, reduced_homology_vanishes
from .localization import hammock_space, ho_localize
from .mapping import iso_search, kan_check
from .serialize import (detect, load_category, load_group, load_gset,
                        load_predelta, load_sset, read_path)
from .sgroups import constant, eg_dg, j_embed, loop_group, pi0
from .simplicial import Ref, SimplicialSet, pi0_count

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def verdict(name: str, ok: bool, bound: Optional[int] = None,
            detail=None, undetermined: bool = False) -> Dict:
    out: Dict = {"check": name}
    if undetermined:
        out["verdict"] = "undetermined-at-bound"
        out["bound"] = bound
    else:
        out["verdict"] = "pass" if ok else "fail"
        if bound is not None:
            out["bound"] = bound
    if detail is not None:
        out["detail"] = detail
    return out


def assemble(command: str, args, checks: List[Dict], bounds: Dict) -> Dict:
    return {"command": command,
            "input": getattr(args, "input", None),
            "bounds": bounds,
            "checks": checks,
            "timing_ms": None}


def presentation_detail(pres: GroupPresentation) -> Dict:
    return {"generators": list(pres.generators),
            "relators": [list(r) for r in pres.relators],
            "order": pres.order}


def homology_detail(rep) -> Dict:
    return {"groups": [{"degree": k, "rank": rank, "torsion": list(tors)}
                       for k, (rank, tors) in enumerate(rep.groups)],
            "pretty": rep.pretty()}


def _load(path: str):
    doc = read_path(path)
    kind = detect(doc)
    loader = {"sset": load_sset, "group": load_group, "gset": load_gset,
              "category": load_category, "predelta": load_predelta}[kind]
    return kind, loader(doc, path)


def _finite_group(path: str) -> FiniteGroup:
    kind, obj = _load(path)
    if kind != "group" or not isinstance(obj, FiniteGroup):
        raise InputError(f"{path}: expected a finite group document")
    return obj


def _reduced_vertex(x: SimplicialSet):
    if x.basepoint is not None:
        return x.basepoint
    if len(x.nondegenerate(0)) == 1:
        return x.levels[0][0]
    raise InputError("a reduced (single-vertex) complex is required")


# ---------------------------------------------------------------------------
# compute

def cmd_compute(args) -> Dict:
    kind, obj = _load(args.input)
    what = args.what
    bounds: Dict = {"max_dim": args.max_dim}
    checks: List[Dict] = []

    if kind == "group":
        if not isinstance(obj, FiniteGroup):
            raise InputError(f"{args.input}: `compute` needs a finite group "
                             "document, not a bare presentation")
        if what == "segal":
            m = args.arg if args.arg is not None else 2
            sg = constant(obj, max(args.max_dim, m))
            j = j_embed(sg, max(m, 2), dim_bound=args.max_dim)
            rep = segal_check(j, m)
            bounds["m"] = m
            checks.append(verdict(f"segal-{m}", rep.is_iso, bound=args.max_dim,
                                  detail=rep.to_json()))
            return assemble("compute", args, checks, bounds)
        # remaining computations act on the reduced classifying space
        nmax = args.arg if args.arg is not None else 2
        dim = max(args.max_dim, nmax + 1, 2)
        obj = eg_dg(constant(obj, dim), dim).dg.sset
        kind = "sset"
        bounds["classifying_space_dim"] = dim

    if kind == "predelta":
        if what != "segal":
            raise InputError("pre-delta documents only support `segal`")
        m = args.arg if args.arg is not None else 2
        rep = segal_check(obj, m)
        bounds["m"] = m
        checks.append(verdict(f"segal-{m}", rep.is_iso,
                              bound=rep.homology_verified_through,
                              detail=rep.to_json()))
        return assemble("compute", args, checks, bounds)

    if kind != "sset":
        raise InputError(f"`compute {what}` does not apply to {kind} documents")
    x: SimplicialSet = obj

    if what == "homology":
        nmax = args.arg if args.arg is not None else 2
        rep = homology(x, nmax)
        bounds["nmax"] = nmax
        checks.append(verdict(f"homology-0..{nmax}", True, bound=nmax,
                              detail=homology_detail(rep)))
    elif what == "pi1":
        _reduced_vertex(x)
        pres = pi1_presentation(x)
        checks.append(verdict("pi1-presentation", True,
                              detail=presentation_detail(pres)))
    elif what == "kan":
        dim = args.arg if args.arg is not None else 2
        rep = kan_check(x, dim, budget=args.budget)
        bounds["dim"] = dim
        checks.append(verdict(f"kan-{dim}", rep.is_kan, bound=dim,
                              detail=rep.to_json()))
    elif what == "loopgroup":
        n = args.arg if args.arg is not None else 1
        _reduced_vertex(x)
        pres = pi0(loop_group(x, max(n, 1)))
        bounds["level_bound"] = max(n, 1)
        checks.append(verdict("loop-group-pi0", True,
                              detail=presentation_detail(pres)))
    elif what == "segal":
        raise InputError("`segal` needs a group or pre-delta document")
    else:
        raise InputError(f"unknown computation {what!r}")
    return assemble("compute", args, checks, bounds)


# ---------------------------------------------------------------------------
# galois

def _monodromy_gset(mono, grp: FiniteGroup, name: str) -> GSet:
    mg = mono.gspace
    points = list(mg.t.levels[0])
    action = {g: {v: mg.act(0, g, Ref(v, ())).base for v in points}
              for g in grp.elements}
    return GSet(points, grp, action, name=name)


def cmd_galois(args) -> Dict:
    grp = _finite_group(args.input)
    dim = args.bound if args.bound is not None else args.max_dim
    if dim < 2:
        raise InputError("galois checks need dimension at least 2")
    sg = constant(grp, dim)
    egdata = eg_dg(sg, dim)
    checks: List[Dict] = []
    checks.append(verdict("eg-quotient-is-dg", egdata.witness.is_iso(),
                          bound=dim))
    vanishes = reduced_homology_vanishes(egdata.eg.sset, through=dim - 1)
    checks.append(verdict(f"eg-reduced-homology-0-through-{dim - 1}",
                          vanishes, bound=dim))
    for t in transitive_gsets(grp):
        label = t.name or f"index{len(t.elements)}"
        gt = discrete_gspace(sg, t.elements, t.act, dim, name=label)
        b = borel(gt, egdata)
        cov = covering_check(b, dim)
        mono = monodromy_M(b, egdata, cov)
        mset = _monodromy_gset(mono, grp, f"M({label})")
        witness = gset_iso(mset, t)
        if witness is None:
            detail = None
        else:
            # element reprs embed frozensets, so report stable index pairs
            pairs = sorted((mset.elements.index(k), t.elements.index(v))
                           for k, v in witness.items())
            detail = {"witness_pairs": [list(p) for p in pairs]}
        checks.append(verdict(f"monodromy-of-borel:{label}",
                              witness is not None, bound=dim, detail=detail))
        b2 = borel(mono.gspace, egdata)
        over = iso_search(b2.total, b.total, over=(b2.p, b.p))
        checks.append(verdict(f"borel-of-monodromy:{label}",
                              over is not None, bound=dim))
    return assemble("galois", args, checks, {"dim": dim})


# ---------------------------------------------------------------------------
# reconstruct

def cmd_reconstruct(args) -> Dict:
    grp = _finite_group(args.input)
    # loops at m_bound=2 with internal degree 2 reads levels through 4
    dim = max(args.max_dim, 4)
    egdata = eg_dg(constant(grp, dim), dim)
    x = egdata.dg.sset
    x0 = _reduced_vertex(x)
    checks: List[Dict] = []

    cert = counit_compare(x, x0, m_bound=2, homology_bound=2,
                          budget=args.budget)
    checks.append(verdict("counit-comparison", cert.ok, bound=2, detail={
        "pi0_bijective": cert.pi0_bijective,
        "pi1_iso": cert.pi1_iso,
        "homology_through": cert.homology_through,
        "notes": list(cert.notes)}))

    l = loops(x, x0, m_bound=2, p_bound=2, budget=args.budget)
    st = pi0_structure(l)
    iso2 = find_isomorphism(st.group, grp) if st.is_group and st.group else None
    checks.append(verdict("pi0-of-loops-is-the-group",
                          st.is_group and iso2 is not None, bound=2,
                          detail={"monoid_order": len(st.elements),
                                  "is_group": st.is_group}))

    ne = natural_end(grp)
    checks.append(verdict("natural-end-of-fiber-functor",
                          ne.is_group and bool(ne.comparison_iso),
                          detail={"monoid_order": ne.monoid_order,
                                  "objects": [t.name or str(len(t.elements))
                                              for t in ne.objects],
                                  "comparison_iso": bool(ne.comparison_iso)}))

    pres = pi0(loop_group(x, 1))
    ok4 = pres.order == len(grp.elements) and \
        find_isomorphism(pres.permutation_group(), grp) is not None
    checks.append(verdict("loop-group-pi0-is-the-group", ok4,
                          detail=presentation_detail(pres)))
    return assemble("reconstruct", args, checks, {"dim": dim, "m_bound": 2})


# ---------------------------------------------------------------------------
# localize

def cmd_localize(args) -> Dict:
    doc = read_path(args.input)
    if detect(doc) != "category":
        raise InputError(f"{args.input}: expected a category document")
    cat, weak = load_category(doc, args.input)
    length = args.length
    lc, stabilized = ho_localize(cat, weak, length_bound=length,
                                 budget=args.budget)
    checks: List[Dict] = [verdict("localization-stabilized", True,
                                  bound=length,
                                  undetermined=not stabilized)]
    if (args.source is None) != (args.target is None):
        raise InputError("give both objects or neither")
    if args.source is not None:
        for o in (args.source, args.target):
            if o not in set(cat.objects):
                raise InputError(f"{o!r} is not an object of the category")
        pairs = [(args.source, args.target)]
    else:
        pairs = [(x, y) for x in cat.objects for y in cat.objects]
    hom_table = {f"{x}->{y}": len(lc.hom(x, y)) for x in cat.objects
                 for y in cat.objects}
    for x, y in pairs:
        hs = hammock_space(cat, weak, x, y, length_bound=length,
                           dim_bound=min(args.max_dim, 2))
        n = pi0_count(hs)
        m = len(lc.hom(x, y))
        checks.append(verdict(
            f"pi0-hammock-vs-hom:{x}->{y}", n == m, bound=length,
            detail={"pi0": n, "hom_classes": m},
            undetermined=not stabilized))
    checks.append(verdict("hom-class-table", True, bound=length,
                          detail=hom_table, undetermined=not stabilized))
    return assemble("localize", args, checks,
                    {"length": length, "dim": min(args.max_dim, 2)})


# ---------------------------------------------------------------------------
# inspect

def cmd_inspect(args) -> Dict:
    kind, obj = _load(args.input)
    detail: Dict = {"kind": kind}
    if kind == "sset":
        detail["nondegenerate"] = list(obj.nondeg_counts())
        detail["top_dim"] = obj.top_dim
        detail["basepoint"] = obj.basepoint
        detail["complete_through"] = obj.complete_through
    elif kind == "group":
        if isinstance(obj, FiniteGroup):
            detail["group"] = "finite"
            detail["order"] = len(obj.elements)
        else:
            detail["group"] = "presentation"
            detail["generators"] = list(obj.generators)
            detail["relators"] = [list(r) for r in obj.relators]
            detail["order"] = obj.order
    elif kind == "gset":
        detail["points"] = len(obj.elements)
        detail["orbits"] = len(obj.orbits())
        detail["transitive"] = obj.is_transitive()
    elif kind == "category":
        cat, weak = obj
        detail["objects"] = len(cat.objects)
        detail["morphisms"] = len(cat.morphisms)
        detail["marked"] = len(weak)
    elif kind == "predelta":
        detail["m_bound"] = obj.m_bound
        detail["levels"] = [list(lv.nondeg_counts()) for lv in obj.levels]
    checks = [verdict("document-valid", True, detail=detail)]
    return assemble("inspect", args, checks, {})


# ---------------------------------------------------------------------------
# plumbing

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-dim", type=int, default=4,
                        help="dimension bound for truncated constructions")
    common.add_argument("--budget", type=int, default=None,
                        help="enumeration budget for searches")
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--out", default=None, help="write the report here")

    parser = argparse.ArgumentParser(
        prog="loopspace",
        description="exact simplicial homotopy computations on documents")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common],
                       help="run one computation on a document")
    p.add_argument("input")
    p.add_argument("what",
                   choices=["homology", "pi1", "segal", "kan", "loopgroup"])
    p.add_argument("arg", nargs="?", type=int, default=None)

    p = sub.add_parser("galois", parents=[common],
                       help="covering round trips for a finite group")
    p.add_argument("input")
    p.add_argument("bound", nargs="?", type=int, default=None)

    p = sub.add_parser("reconstruct", parents=[common],
                       help="the reconstruction square for a finite group")
    p.add_argument("input")

    p = sub.add_parser("localize", parents=[common],
                       help="bounded localization of a marked category")
    p.add_argument("input")
    p.add_argument("source", nargs="?", default=None)
    p.add_argument("target", nargs="?", default=None)
    p.add_argument("--length", type=int, default=6,
                   help="zig-zag / hammock length bound")

    p = sub.add_parser("inspect", parents=[common],
                       help="validate a document and summarize it")
    p.add_argument("input")
    return parser


def render(report: Dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    lines = [f"command: {report.get('command')}"]
    if report.get("input"):
        lines.append(f"input: {report['input']}")
    if report.get("bounds"):
        lines.append("bounds: " + ", ".join(
            f"{k}={v}" for k, v in sorted(report["bounds"].items())))
    for c in report.get("checks", []):
        mark = {"pass": "PASS", "fail": "FAIL",
                "undetermined-at-bound": "UNDET"}[c["verdict"]]
        lines.append(f"{mark} {c['check']}")
    if "error" in report:
        lines.append(f"ERROR ({report['error']['kind']}): "
                     f"{report['error']['message']}")
    return "\n".join(lines) + "\n"


def emit(report: Dict, args) -> None:
    text = render(report, getattr(args, "format", "json"))
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


DISPATCH = {"compute": cmd_compute, "galois": cmd_galois,
            "reconstruct": cmd_reconstruct, "localize": cmd_localize,
            "inspect": cmd_inspect}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = DISPATCH[args.command](args)
    except InputError as e:
        emit({"command": args.command, "checks": [], "timing_ms": None,
              "error": {"kind": "input", "message": str(e)}}, args)
        return EXIT_INPUT
    except BudgetExceeded as e:
        emit({"command": args.command, "checks": [], "timing_ms": None,
              "error": {"kind": "budget", "message": str(e)}}, args)
        return EXIT_BUDGET
    except VerificationError as e:
        emit({"command": args.command, "checks": [], "timing_ms": None,
              "error": {"kind": "verification", "message": str(e)}}, args)
        return EXIT_FAIL
    emit(report, args)
    ok = all(c["verdict"] == "pass" for c in report["checks"])
    return EXIT_PASS if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
