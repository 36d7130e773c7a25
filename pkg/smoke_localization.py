import time

t0 = time.time()

from loopspace.cats import FiniteCategory, find_category_iso, one_object_category
from loopspace.groups import cyclic
from loopspace.simplicial import pi0_count
from loopspace.localization import (
    DKVerdict, Functor, HammockLevelwise, Localization, RelativeCategory,
    dk_inverse_check, hammock_space, ho_localize)


def poset_category(objects, covers, name=""):
    """Finite poset as a category: morphisms are ordered pairs x<=y."""
    le = {(x, x) for x in objects}
    for a, b in covers:
        le.add((a, b))
    changed = True
    while changed:
        changed = False
        for (a, b) in list(le):
            for (c, d) in list(le):
                if b == c and (a, d) not in le:
                    le.add((a, d))
                    changed = True
    mors = sorted(f"{a}<={b}" for (a, b) in le)
    src = {f"{a}<={b}": a for (a, b) in le}
    tgt = {f"{a}<={b}": b for (a, b) in le}
    compose = {}
    for (a, b) in le:
        for (c, d) in le:
            if b == c:
                compose[(f"{a}<={b}", f"{c}<={d}")] = f"{a}<={d}"
    identity = {x: f"{x}<={x}" for x in objects}
    return FiniteCategory(objects, mors, src, tgt, compose, identity, name=name)


# ---- interval: localizing the walking arrow at its arrow gives a point ----
interval = poset_category(["0", "1"], [("0", "1")], name="interval")
w01 = "0<=1"
lc, stab = ho_localize(interval, [w01], length_bound=4)
assert stab, "interval localization should stabilize"
for x in interval.objects:
    for y in interval.objects:
        assert len(lc.hom(x, y)) == 1, (x, y, lc.hom(x, y))
print("interval localization: all homs singleton, stabilized", stab)

# stabilization already at bound 2
lc2, stab2 = ho_localize(interval, [w01], length_bound=2)
assert stab2
print("interval stabilizes at length 2")

# hammock pi0 matches
hs = hammock_space(interval, [w01], "0", "0", length_bound=4, dim_bound=2)
print("interval hammock L(0,0) nondeg:", hs.nondeg_counts(), "pi0:", pi0_count(hs))
assert pi0_count(hs) == 1
hs

hs01 = hammock_space(interval, [w01], "0", "1", length_bound=4, dim_bound=2)
assert pi0_count(hs01) == 1
hs10 = hammock_space(interval, [w01], "1", "0", length_bound=4, dim_bound=2)
assert pi0_count(hs10) == 1
print("interval hammock pi0 all 1")

# ---- chain 0 -> 1 -> 2 with bottom arrow marked ----
chain = poset_category(["0", "1", "2"], [("0", "1"), ("1", "2")], name="chain3")
lc3, stab3 = ho_localize(chain, ["0<=1"], length_bound=4)
assert stab3
assert len(lc3.hom("1", "0")) == 1, lc3.hom("1", "0")
assert len(lc3.hom("2", "0")) == 0
assert len(lc3.hom("0", "2")) == 1
print("chain: Hom(1,0) singleton, Hom(2,0) empty ok")
h10 = hammock_space(chain, ["0<=1"], "1", "0", length_bound=4, dim_bound=2)
h20 = hammock_space(chain, ["0<=1"], "2", "0", length_bound=4, dim_bound=2)
assert pi0_count(h10) == 1 and pi0_count(h20) == 0
print("chain hammock pi0 ok (1 and 0)")

# ---- W = identities returns the category itself ----
lid, stabi = ho_localize(chain, [], length_bound=4)
assert stabi
iso = find_category_iso(lid, chain)
assert iso is not None, "identity-marked localization should be iso to C"
for x in chain.objects:
    for y in chain.objects:
        h = hammock_space(chain, [], x, y, length_bound=4, dim_bound=1)
        assert pi0_count(h) == len(chain.hom(x, y)), (x, y)
print("identity marking: localization iso to C, hammock pi0 = hom sizes")

# ---- W = all isos returns a category isomorphic to C ----
z2 = cyclic(2)
z2cat = one_object_category(z2.elements, z2.op, z2.unit, name="BZ2")
lz2, stabz = ho_localize(z2cat, list(z2cat.morphisms), length_bound=4)
assert stabz
assert find_category_iso(lz2, z2cat) is not None
print("all-isos marking: localization iso to C (Z2 as one-object category)")

# ---- diamond poset, marked leg ----
diamond = poset_category(["a", "b", "c", "d"],
                         [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
                         name="diamond")
ld, stabd = ho_localize(diamond, ["a<=b", "b<=d"], length_bound=4)
print("diamond stabilized:", stabd,
      "hom counts:", {(x, y): len(ld.hom(x, y))
                      for x in diamond.objects for y in diamond.objects
                      if ld.hom(x, y)})
for x in diamond.objects:
    for y in diamond.objects:
        h = hammock_space(diamond, ["a<=b", "b<=d"], x, y,
                          length_bound=4, dim_bound=2)
        n = pi0_count(h)
        m = len(ld.hom(x, y))
        assert n == m, (x, y, n, m)
print("diamond: hammock pi0 agrees with localized homs on all 16 pairs")

# ---- dk_inverse_check: interval vs point ----
point = poset_category(["p"], [], name="point")
c_rel = RelativeCategory(interval, [w01])
d_rel = RelativeCategory(point, [])
F = Functor(interval, point, {"0": "p", "1": "p"},
            {"0<=0": "p<=p", "1<=1": "p<=p", w01: "p<=p"}, name="collapse")
G = Functor(point, interval, {"p": "0"}, {"p<=p": "0<=0"}, name="pick0")
eta = {"0": "0<=0", "1": w01}  # components GF(x) -> x
eps = {"p": "p<=p"}
verdict = dk_inverse_check(c_rel, d_rel, F, G, eta, eps, length_bound=4)
print("dk interval~point:", verdict.ok, verdict.stabilized, verdict.failures)
assert verdict.ok and verdict.hypothesis_ok and verdict.stabilized

# violation: same data but nothing marked in C, so eta_1 is unmarked
bad_rel = RelativeCategory(interval, [])
bad = dk_inverse_check(bad_rel, d_rel, F, G, eta, eps, length_bound=4)
assert not bad.ok and not bad.hypothesis_ok
assert any("not marked" in s for s in bad.failures), bad.failures
print("dk violation reported:", bad.failures[0])

# naturality violation report names a witnessing morphism
chain_rel = RelativeCategory(chain, ["0<=1"])
F2 = Functor(chain, point,
             {x: "p" for x in chain.objects},
             {m: "p<=p" for m in chain.morphisms})
G2 = Functor(point, chain, {"p": "0"}, {"p<=p": "0<=0"})
eta2 = {"0": "0<=0", "1": "0<=1", "2": "0<=2"}  # 0<=2 is not marked
bad2 = dk_inverse_check(chain_rel, d_rel, F2, G2, eta2, eps, length_bound=4)
assert not bad2.hypothesis_ok
print("dk chain violation:", bad2.failures)

print("ALL LOCALIZATION SMOKE CHECKS PASSED in %.2fs" % (time.time() - t0))
