"""Integral homology of presented simplicial sets.

Chains are normalized: one basis element per nondegenerate simplex, and a
face that lands on a degenerate simplex contributes zero.  All arithmetic is
over Python ints; invariant factors come from a sparse Smith reduction with
minimum-magnitude pivoting, so results are exact in every degree requested.

homology_map_is_iso decides whether an induced map on H_k is an isomorphism:
equal invariant factors plus surjectivity suffice, because finitely generated
abelian groups are Hopfian.  Surjectivity is a lattice-membership test.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BoundError
from .simplicial import Ref, SimplicialMap, SimplicialSet

Matrix = Dict[Tuple[int, int], int]  # sparse, (row, col) -> nonzero entry


def boundary_matrix(x: SimplicialSet, n: int) -> Tuple[Matrix, int, int]:
    """The boundary C_n -> C_{n-1} on nondegenerate bases; returns (mat, rows, cols)."""
    rows = {s: i for i, s in enumerate(x.nondegenerate(n - 1))}
    cols = x.nondegenerate(n)
    mat: Matrix = {}
    for j, s in enumerate(cols):
        for i in range(n + 1):
            ref = x.faces[s][i]
            if ref.word:
                continue
            key = (rows[ref.base], j)
            mat[key] = mat.get(key, 0) + (1 if i % 2 == 0 else -1)
            if mat[key] == 0:
                del mat[key]
    return mat, len(rows), len(cols)


def smith_invariants(mat: Matrix, nrows: int, ncols: int) -> List[int]:
    """Nonzero invariant factors of an integer matrix (d_1 | d_2 | ...)."""
    rows: Dict[int, Dict[int, int]] = {}
    cols: Dict[int, set] = {}
    for (i, j), v in mat.items():
        rows.setdefault(i, {})[j] = v
        cols.setdefault(j, set()).add(i)

    def drop(i, j):
        del rows[i][j]
        if not rows[i]:
            del rows[i]
        cols[j].discard(i)
        if not cols[j]:
            del cols[j]

    def put(i, j, v):
        if v == 0:
            if i in rows and j in rows[i]:
                drop(i, j)
            return
        rows.setdefault(i, {})[j] = v
        cols.setdefault(j, set()).add(i)

    divisors: List[int] = []
    while rows:
        # pivot of minimal magnitude, then sparsest cross, then index (deterministic)
        best = None
        for i, r in rows.items():
            for j, v in r.items():
                score = (abs(v), len(r) + len(cols[j]), i, j)
                if best is None or score < best:
                    best = score
                    pi, pj = i, j
        # alternately clear the pivot column and row; a nonzero remainder has
        # strictly smaller magnitude than the pivot and takes over, so this stops
        while True:
            piv = rows[pi][pj]
            off_col = [i for i in cols[pj] if i != pi]
            if off_col:
                i = off_col[0]
                q = rows[i][pj] // piv
                for j, v in list(rows[pi].items()):
                    put(i, j, rows.get(i, {}).get(j, 0) - q * v)
                if i in rows and pj in rows.get(i, {}):
                    pi = i
                continue
            off_row = [j for j in rows[pi] if j != pj]
            if off_row:
                j = off_row[0]
                q = rows[pi][j] // piv
                for i in list(cols[pj]):
                    put(i, j, rows.get(i, {}).get(j, 0) - q * rows[i][pj])
                if pi in rows and j in rows.get(pi, {}):
                    pj = j
                continue
            break
        divisors.append(abs(rows[pi][pj]))
        drop(pi, pj)

    # enforce divisibility chain
    divisors.sort()
    changed = True
    while changed:
        changed = False
        for a in range(len(divisors)):
            for b in range(a + 1, len(divisors)):
                x, y = divisors[a], divisors[b]
                if y % x != 0:
                    import math
                    g = math.gcd(x, y)
                    divisors[a], divisors[b] = g, x * y // g
                    changed = True
        divisors.sort()
    return divisors


@dataclass
class HomologyReport:
    """free_rank and torsion (divisibility order) per degree 0..nmax."""
    groups: Tuple[Tuple[int, Tuple[int, ...]], ...]
    nmax: int
    chain_bound: int

    def pretty(self) -> str:
        parts = []
        for k, (rank, tors) in enumerate(self.groups):
            terms = ["Z"] * rank + [f"Z/{t}" for t in tors]
            parts.append(f"H{k} = " + (" + ".join(terms) if terms else "0"))
        return "; ".join(parts)

    def to_json(self):
        return {"groups": [{"degree": k, "free_rank": r, "torsion": list(t)}
                           for k, (r, t) in enumerate(self.groups)],
                "nmax": self.nmax, "chain_bound": self.chain_bound}


def homology(x: SimplicialSet, nmax: int) -> HomologyReport:
    x.require_levels(nmax + 1, "homology")
    groups = []
    ranks = {0: 0}
    invs = {0: []}
    for n in range(1, nmax + 2):
        mat, r, c = boundary_matrix(x, n)
        inv = smith_invariants(mat, r, c)
        ranks[n] = len(inv)
        invs[n] = inv
    for k in range(nmax + 1):
        n_k = len(x.nondegenerate(k))
        rank_dk = ranks.get(k, 0)        # rank of boundary leaving degree k
        rank_dk1 = ranks.get(k + 1, 0)   # rank of boundary entering degree k
        free = n_k - rank_dk - rank_dk1
        torsion = tuple(d for d in invs.get(k + 1, []) if d > 1)
        groups.append((free, torsion))
    return HomologyReport(tuple(groups), nmax, nmax + 1)


def reduced_homology_vanishes(x: SimplicialSet, through: int) -> bool:
    rep = homology(x, through)
    if rep.groups[0] != (1, ()):
        return False
    return all(g == (0, ()) for g in rep.groups[1:])


# ---------------------------------------------------------------------------
# induced maps and isomorphism certificates

def chain_map_matrix(f: SimplicialMap, k: int) -> Matrix:
    rows = {s: i for i, s in enumerate(f.target.nondegenerate(k))}
    mat: Matrix = {}
    for j, s in enumerate(f.source.nondegenerate(k)):
        img = f.assignment[s]
        if img.word:
            continue
        mat[(rows[img.base], j)] = 1
    return mat


def _columns(mat: Matrix, ncols: int) -> List[Dict[int, int]]:
    cols: List[Dict[int, int]] = [dict() for _ in range(ncols)]
    for (i, j), v in mat.items():
        cols[j][i] = v
    return cols


def hermite_basis(vectors: List[Dict[int, int]]) -> Dict[int, Dict[int, int]]:
    """Row-style Hermite basis of the lattice spanned by the given sparse vectors.

    Returns pivot_index -> vector with positive leading entry at pivot_index,
    reduced against each other enough for membership testing.
    """
    basis: Dict[int, Dict[int, int]] = {}
    queue = [dict(v) for v in vectors if v]
    while queue:
        v = queue.pop()
        while v:
            lead = min(v)
            if lead not in basis:
                if v[lead] < 0:
                    v = {i: -c for i, c in v.items()}
                basis[lead] = v
                break
            b = basis[lead]
            q, r = divmod(v[lead], b[lead])
            if q:
                for i, c in b.items():
                    nv = v.get(i, 0) - q * c
                    if nv:
                        v[i] = nv
                    elif i in v:
                        del v[i]
            if lead in v and v[lead] != 0:
                # remainder beats the basis vector: swap and continue
                if abs(v[lead]) < b[lead]:
                    basis[lead], v = (v if v[lead] > 0 else {i: -c for i, c in v.items()}), b
            else:
                continue
    return basis


def lattice_contains(basis: Dict[int, Dict[int, int]], vector: Dict[int, int]) -> bool:
    v = dict(vector)
    while v:
        lead = min(v)
        if lead not in basis:
            return False
        b = basis[lead]
        q, r = divmod(v[lead], b[lead])
        if r != 0:
            return False
        for i, c in b.items():
            nv = v.get(i, 0) - q * c
            if nv:
                v[i] = nv
            elif i in v:
                del v[i]
    return True


def kernel_basis(mat: Matrix, nrows: int, ncols: int) -> List[Dict[int, int]]:
    """Integer basis of ker(mat) by column reduction (Hermite-style, exact)."""
    cols = _columns(mat, ncols)
    # track the transformation: each working column remembers its expression
    work = [(dict(c), {j: 1}) for j, c in enumerate(cols)]
    pivots: Dict[int, Tuple[Dict[int, int], Dict[int, int]]] = {}
    kernel: List[Dict[int, int]] = []
    for col, expr in work:
        col = dict(col)
        expr = dict(expr)
        while col:
            lead = min(col)
            if lead not in pivots:
                if col[lead] < 0:
                    col = {i: -c for i, c in col.items()}
                    expr = {j: -c for j, c in expr.items()}
                pivots[lead] = (col, expr)
                col = None
                break
            pcol, pexpr = pivots[lead]
            q, r = divmod(col[lead], pcol[lead])
            if q:
                for i, c in pcol.items():
                    nv = col.get(i, 0) - q * c
                    if nv:
                        col[i] = nv
                    elif i in col:
                        del col[i]
                for j, c in pexpr.items():
                    nv = expr.get(j, 0) - q * c
                    if nv:
                        expr[j] = nv
                    elif j in expr:
                        del expr[j]
            if lead in col and col[lead] != 0 and abs(col[lead]) < pcol[lead]:
                if col[lead] < 0:
                    col = {i: -c for i, c in col.items()}
                    expr = {j: -c for j, c in expr.items()}
                pivots[lead], (col, expr) = (col, expr), pivots[lead]
        if col is not None and not col:
            if expr:
                kernel.append(expr)
    return kernel


@dataclass
class IsoVerdict:
    degree: int
    same_groups: bool
    surjective: Optional[bool]
    is_iso: Optional[bool]
    note: str = ""


def homology_group(x: SimplicialSet, k: int) -> Tuple[int, Tuple[int, ...]]:
    return homology(x, k).groups[k]


def homology_map_is_iso(f: SimplicialMap, k: int,
                        hx: Optional[HomologyReport] = None,
                        hy: Optional[HomologyReport] = None) -> IsoVerdict:
    """Decide whether H_k(f) is an isomorphism (exact, integer arithmetic)."""
    x, y = f.source, f.target
    gx = (hx or homology(x, k)).groups[k]
    gy = (hy or homology(y, k)).groups[k]
    if gx != gy:
        return IsoVerdict(k, False, None, False, f"groups differ: {gx} vs {gy}")
    if gy == (0, ()):
        return IsoVerdict(k, True, True, True, "both trivial")

    # surjectivity: Z_k(Y) inside f(Z_k(X)) + B_k(Y)
    if k == 0:
        # components: surjective iff every component of Y is hit
        from .simplicial import pi0_components
        comp_y = pi0_components(y)
        hit = {comp_y[f.assignment[v].base] for v in x.nondegenerate(0)}
        surj = hit == set(comp_y.values())
        return IsoVerdict(0, True, surj, surj and len(set(pi0_components(x).values())) == len(hit))

    fmat = chain_map_matrix(f, k)
    dmat_x, rx, cx = boundary_matrix(x, k)
    dmat_y, ry, cy = boundary_matrix(y, k)
    bmat_y, _, by_cols = boundary_matrix(y, k + 1)

    reduced_x = rx == 0 or not dmat_x
    if reduced_x:
        zx = [{j: 1} for j in range(cx)]
    else:
        zx = kernel_basis(dmat_x, rx, cx)
    # push cycles through f
    fcols = _columns(fmat, cx)
    pushed = []
    for z in zx:
        out: Dict[int, int] = {}
        for j, c in z.items():
            for i, v in fcols[j].items():
                nv = out.get(i, 0) + c * v
                if nv:
                    out[i] = nv
                elif i in out:
                    del out[i]
        if out:
            pushed.append(out)
    span = pushed + [c for c in _columns(bmat_y, by_cols) if c]
    basis = hermite_basis(span)
    if not dmat_y:
        zy = [{j: 1} for j in range(cy)]
    else:
        zy = kernel_basis(dmat_y, ry, cy)
    surj = all(lattice_contains(basis, z) for z in zy)
    return IsoVerdict(k, True, surj, surj,
                      "equal groups + surjective (Hopfian)" if surj else "not surjective")
