import time

t0 = time.time()
from loopspace.groups import cyclic, symmetric, trivial_group, identity_hom, Homomorphism
from loopspace.sgroups import constant, eg_dg
from loopspace.simplicial import point, Ref
from loopspace.mapping import iso_search
from loopspace.fast import simplicial_maps
from loopspace.gspaces import (
    GSimplicialSet, trivial_gspace, discrete_gspace, free, forget,
    equivariant_maps, SliceObject, covering_check, borel, monodromy_M,
    restrict, induce, pullback, postcompose, GSet, gset_iso, coset_gset,
    transitive_gsets, covering_monodromy, monodromy_as_group_action,
    natural_end, end_of_regular, slice_maps)

def stamp(msg):
    print(f"[{time.time()-t0:7.2f}s] {msg}")

# --- setup -----------------------------------------------------------------
s3 = symmetric(3)
z2 = cyclic(2)
z3 = cyclic(3)
sg3 = constant(s3, 3)
sgz2 = constant(z2, 3)
stamp("groups built")

# --- GSet layer ------------------------------------------------------------
ts = transitive_gsets(s3)
print("  transitive S3-sets sizes:", [len(t.elements) for t in ts])
assert [len(t.elements) for t in ts] == [6, 3, 2, 1]
assert all(t.is_transitive() for t in ts)
reg = ts[0]
assert gset_iso(reg, reg) is not None
assert gset_iso(ts[1], ts[2]) is None
stamp("GSet layer ok")

# --- natural_end -----------------------------------------------------------
ne3 = natural_end(z3)
print("  natural_end(Z3): order", ne3.monoid_order, "group:", ne3.is_group,
      "comparison iso:", ne3.comparison_iso)
assert ne3.monoid_order == 3 and ne3.is_group and ne3.comparison_iso
stamp("natural_end(Z3) ok")

nes3 = natural_end(s3)
print("  natural_end(S3): order", nes3.monoid_order, "group:", nes3.is_group,
      "comparison iso:", nes3.comparison_iso)
assert nes3.monoid_order == 6 and nes3.is_group and nes3.comparison_iso
stamp("natural_end(S3) ok")

ne_triv = natural_end(s3, objects=[ts[3]])
print("  natural_end(S3, point only): order", ne_triv.monoid_order)
assert ne_triv.monoid_order == 1 and ne_triv.comparison is None
stamp("natural_end(S3, point) ok")

# --- end_of_regular ---------------------------------------------------------
eor = end_of_regular(sgz2, 2)
print("  end_of_regular(Z2): levelwise iso:", eor.levelwise_iso,
      "orders:", [len(g) for g in eor.monoid.levels])
assert eor.levelwise_iso and [len(g) for g in eor.monoid.levels] == [2, 2, 2]
eor3 = end_of_regular(constant(s3, 2), 2)
print("  end_of_regular(S3): levelwise iso:", eor3.levelwise_iso)
assert eor3.levelwise_iso
stamp("end_of_regular ok")

# --- free/forget adjunction --------------------------------------------------
pt = point()
fr = free(pt, sgz2, 2)
print("  free(pt, Z2):", fr.t)
assert fr.t.nondeg_counts() == (2,)
# right adjoint: Hom_G(free(T), X) = Hom(T, forget(X)) against a 2-point X
x2 = discrete_gspace(sgz2, ["a", "b"], lambda g, x: x if g == z2.unit else
                     ("b" if x == "a" else "a"), 2, name="swap2")
lhs = equivariant_maps(fr, x2)
rhs = simplicial_maps(pt, forget(x2))
print("  adjunction counts:", len(lhs), len(rhs))
assert len(lhs) == len(rhs) == 2
us = fr.unit_section()
stamp("free/forget adjunction ok")

# --- borel + covering + monodromy round trip (S3, 3-point coset space) ------
egd = eg_dg(sg3, 2)
tcos = ts[1]   # S3/<transposition>, 3 points
T = discrete_gspace(sg3, tcos.elements, lambda g, x: tcos.act(g, x), 2,
                    name="S3cosets")
stamp("discrete T built")
b = borel(T, egd)
print("  borel total:", b.total, " base:", b.base)
cov = covering_check(b, 2)
print("  covering lifts checked:", cov.lifts_checked)
stamp("borel + covering_check ok")

mono = monodromy_M(b, egd, covering=cov)
MT = mono.gspace
unwrap = lambda sid: sid[1][0].base   # borel vertex sid -> original point
assert sorted(map(str, (unwrap(s) for s in MT.t.levels[0]))) == \
    sorted(map(str, tcos.elements))
# compare the recovered action with the original on level 0
for g in s3.elements:
    for v in MT.t.levels[0]:
        got = MT.act(0, g, Ref(v, ())).base
        assert unwrap(got) == tcos.act(g, unwrap(v)), (g, v, got)
stamp("monodromy_M(borel(T)) == T ok")

# --- covering_monodromy (pi1-presentation action on the fiber) ---------------
cm = covering_monodromy(cov)
print("  monodromy generators:", len(cm.generators), "fiber:", len(cm.fiber))
ga = monodromy_as_group_action(cm, s3, lambda r: r.base[1][0])
assert gset_iso(ga, tcos) is not None
stamp("covering_monodromy recovers the coset action")

# --- borel(monodromy(Y)) ~ Y over dG -----------------------------------------
b2 = borel(MT, egd)
f = iso_search(b2.total, b.total, over=(b2.p, b.p))
assert f is not None and f.is_iso()
stamp("borel(M(Y)) iso Y over dG ok")

# --- slice ops ----------------------------------------------------------------
fib = b.fiber(b.base.levels[0][0])
print("  vertex fiber of borel:", fib.nondeg_counts())
assert fib.nondeg_counts() == (3,)
sm = slice_maps(b, b)
print("  slice self-maps of borel(T):", len(sm))
stamp("slice ops ok")

# --- change of group -----------------------------------------------------------
triv = constant(trivial_group(), 2)
emb = [Homomorphism(triv.levels[n], sgz2.levels[n],
                    table={triv.levels[n].unit: z2.unit}) for n in range(3)]
pt_triv = trivial_gspace(triv, pt, 2)
ind = induce(emb, pt_triv, sgz2)
print("  induce(point, 1 -> Z2):", ind.t)
assert ind.t.nondeg_counts() == (2,)
# adjunction: Hom_H(ind T, X) = Hom_G(T, res X)
resx = restrict(emb, triv, x2)
lhs = equivariant_maps(ind, x2)
rhs = equivariant_maps(pt_triv, resx)
print("  change-of-group adjunction counts:", len(lhs), len(rhs))
assert len(lhs) == len(rhs) == 2
stamp("change of group ok")

# --- base change -----------------------------------------------------------------
# pull the borel covering back along itself; fibers stay 3 points
pb = pullback(b, b.p, 2)
print("  pullback total:", pb.total)
over_y = postcompose(SliceObject(pb.to_total, name="pb"), b.p)
assert over_y.p.target is b.base
fib2 = pb.fiber(pb.base.levels[0][0])
assert len(fib2.levels[0]) == 3
fib3 = over_y.fiber(b.base.levels[0][0])
assert len(fib3.levels[0]) == 9
stamp("base change ok")

print("ALL GSPACES SMOKE CHECKS PASSED")
