"""Independent oracles used to cross-check the main implementations.

Everything here recomputes expected values by a different route: group
homology from the normalized bar resolution, fundamental groups from edge
paths, product simplex counts from shuffle combinatorics, and chain-level
homology through sympy's Smith normal form.  None of the package's linear
algebra or coset enumeration is used.
"""

from __future__ import annotations

import math
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
from sympy.matrices.normalforms import smith_normal_form

from loopspace.simplicial import SimplicialSet


def _snf_invariants(m: sympy.Matrix) -> List[int]:
    """Nonzero diagonal of the Smith normal form, as positive ints."""
    if m.rows == 0 or m.cols == 0:
        return []
    d = smith_normal_form(m, domain=sympy.ZZ)
    out = []
    for i in range(min(d.rows, d.cols)):
        v = int(d[i, i])
        if v != 0:
            out.append(abs(v))
    return out


def homology_of_complex(dims: Sequence[int], boundary: Dict[int, sympy.Matrix],
                        n: int) -> Tuple[int, Tuple[int, ...]]:
    """H_n of a chain complex of free Z-modules.

    boundary[k] maps C_k into C_{k-1}; its columns are indexed by the C_k
    basis.  Missing or empty matrices are treated as zero maps.
    """
    dk = boundary.get(n)
    rank_dk = dk.rank() if dk is not None and dk.rows and dk.cols else 0
    kernel = dims[n] - rank_dk
    dk1 = boundary.get(n + 1)
    if dk1 is None or dk1.rows == 0 or dk1.cols == 0:
        return kernel, ()
    inv = _snf_invariants(dk1)
    torsion = tuple(v for v in inv if v > 1)
    return kernel - len(inv), torsion


def bar_homology(elements: Sequence, mult: Dict, unit,
                 n: int) -> Tuple[int, Tuple[int, ...]]:
    """Integral group homology H_n(G) from the normalized bar resolution.

    C_k has one basis tuple per k-tuple of non-identity elements; the
    differential alternates the drop-first, multiply-adjacent, and drop-last
    maps, with normalization killing tuples that acquire an identity slot.
    """
    nontrivial = [g for g in elements if g != unit]
    basis: Dict[int, List[Tuple]] = {0: [()]}
    for k in range(1, n + 2):
        basis[k] = [t + (g,) for t in basis[k - 1] for g in nontrivial]
    index = {k: {t: i for i, t in enumerate(basis[k])} for k in basis}

    def boundary(k: int) -> sympy.Matrix:
        m = sympy.zeros(len(basis[k - 1]), len(basis[k]))
        for j, t in enumerate(basis[k]):
            def add(tt: Tuple, sign: int) -> None:
                if any(g == unit for g in tt):
                    return
                m[index[k - 1][tt], j] += sign
            add(t[1:], 1)
            for i in range(1, k):
                add(t[:i - 1] + (mult[(t[i - 1], t[i])],) + t[i + 1:],
                    (-1) ** i)
            add(t[:-1], (-1) ** k)
        return m

    bnd = {k: boundary(k) for k in range(1, n + 2)}
    dims = [len(basis[k]) for k in range(n + 2)]
    return homology_of_complex(dims, bnd, n)


def sset_homology(x: SimplicialSet, n: int) -> Tuple[int, Tuple[int, ...]]:
    """H_n of the normalized chains of x, read directly off stored faces."""
    depth = len(x.levels)
    basis = {k: (list(x.nondegenerate(k)) if k < depth else [])
             for k in range(n + 2)}
    index = {k: {s: i for i, s in enumerate(basis[k])} for k in basis}

    def boundary(k: int) -> sympy.Matrix:
        m = sympy.zeros(len(basis[k - 1]), len(basis[k]))
        for j, s in enumerate(basis[k]):
            for i, ref in enumerate(x.faces[s]):
                if ref.word:
                    continue
                m[index[k - 1][ref.base], j] += (-1) ** i
        return m

    bnd = {k: boundary(k) for k in range(1, n + 2)}
    dims = [len(basis[k]) for k in range(n + 2)]
    return homology_of_complex(dims, bnd, n)


def product_nondeg_count(counts_x: Sequence[int], counts_y: Sequence[int],
                         n: int) -> int:
    """Nondegenerate n-simplices of a product, by shuffle counting.

    A nondegenerate pair is (s_U a, s_V b) with U, V disjoint subsets of
    {0..n-1}; choosing U then V inside the complement gives the binomials.
    """
    total = 0
    for p, cx in enumerate(counts_x):
        if p > n or not cx:
            continue
        for q, cy in enumerate(counts_y):
            if q > n or p + q < n or not cy:
                continue
            total += cx * cy * math.comb(n, n - p) * math.comb(p, n - q)
    return total


def edge_path_presentation(x: SimplicialSet, base=None):
    """Edge-path presentation of pi_1 at the component of the base vertex.

    Spanning-tree edges become trivial generators; every nondegenerate
    2-simplex contributes the relation (d_2)(d_0)(d_1)^-1, with degenerate
    edge faces reading as the empty word.  Returns (generators, relators)
    with relators as tuples of 1-based signed generator indices.
    """
    verts = list(x.levels[0])
    edges = list(x.levels[1]) if len(x.levels) > 1 else []
    if base is None:
        base = x.basepoint if x.basepoint is not None else verts[0]
    ends = {}
    for e in edges:
        d0, d1 = x.faces[e]
        ends[e] = (d1.base, d0.base)

    # breadth-first spanning tree of the base component
    parent_edge: Dict = {base: None}
    order = [base]
    seen = {base}
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for e, (a, b) in ends.items():
            for src, dst in ((a, b), (b, a)):
                if src == v and dst not in seen:
                    seen.add(dst)
                    parent_edge[dst] = e
                    order.append(dst)
    tree = {parent_edge[v] for v in order if parent_edge[v] is not None}

    generators = [e for e in edges if e not in tree and ends[e][0] in seen]
    gen_index = {e: i + 1 for i, e in enumerate(generators)}

    def word(ref) -> Tuple[int, ...]:
        if ref.word:
            return ()
        e = ref.base
        if e in tree:
            return ()
        return (gen_index[e],)

    relators = []
    if len(x.levels) > 2:
        for t in x.nondegenerate(2):
            faces = x.faces[t]
            nondeg = [f.base for f in faces if not f.word]
            if not nondeg:
                continue
            if any(ends[e][0] not in seen for e in nondeg):
                continue
            f0, f1, f2 = faces
            rel = word(f2) + word(f0) + tuple(-g for g in reversed(word(f1)))
            if rel:
                relators.append(rel)
    return generators, relators


def abelianization(num_gens: int, relators: Sequence[Tuple[int, ...]]):
    """(free rank, torsion coefficients) of the abelianized presentation."""
    if num_gens == 0:
        return 0, ()
    m = sympy.zeros(num_gens, max(len(relators), 1))
    for j, rel in enumerate(relators):
        for letter in rel:
            m[abs(letter) - 1, j] += 1 if letter > 0 else -1
    inv = _snf_invariants(m)
    return num_gens - len(inv), tuple(v for v in inv if v > 1)


def one_vertex_edge_group(x: SimplicialSet) -> Optional[Dict]:
    """For a one-vertex complex whose 2-simplices give a complete product
    table on nondegenerate edges, return that table as a dict with keys
    'elements', 'mult', 'unit'; otherwise None.

    When it exists, the edge-path group is exactly this finite group (every
    word folds to a single letter), giving an order certificate with no
    coset enumeration.
    """
    if len(x.levels[0]) != 1 or len(x.levels) < 3:
        return None
    unit = ("unit",)
    edges = list(x.levels[1])
    table: Dict[Tuple, object] = {}
    for t in x.nondegenerate(2):
        f0, f1, f2 = x.faces[t]
        if f0.word or f2.word:
            continue
        prod = unit if f1.word else f1.base
        key = (f2.base, f0.base)
        if key in table and table[key] != prod:
            return None
        table[key] = prod
    for a in edges:
        for b in edges:
            if (a, b) not in table:
                return None
    elements = [unit] + edges
    mult = dict(table)
    for g in elements:
        mult[(unit, g)] = g
        mult[(g, unit)] = g
    # reject if not a group: associativity and two-sided inverses
    for a in elements:
        if not any(mult[(a, b)] == unit and mult[(b, a)] == unit
                   for b in elements):
            return None
        for b in elements:
            if mult[(a, b)] not in elements:
                return None
    for a in elements:
        for b in elements:
            for c in elements:
                if mult[(mult[(a, b)], c)] != mult[(a, mult[(b, c)])]:
                    return None
    return {"elements": elements, "mult": mult, "unit": unit}
