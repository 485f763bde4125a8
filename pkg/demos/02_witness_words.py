"""Witness words: making a word survive deep in the derived series.

In a free group the conjugate y x y^-1 never commutes with x, so nested
commutators [w, k w k^-1] stay nontrivial while their length grows by at most 8x.
"""
import random

from rfcert.finite_groups import symmetric_group
from rfcert.separate import normal_closure_derived_depth
from rfcert.witness import MalabelianContext, derived_witness, lcm_witness
from rfcert.words import FreeGroup

F2 = FreeGroup(2)
ctx = MalabelianContext.free(2)
a = F2.parse("x y^-1")

for n in range(4):
    rec = derived_witness(ctx, a, n)
    print(f"level {n}: length {rec.length:>4}   bound 8^n*max(|a|,kappa) = {rec.bound}")
print("level 1 word:", F2.format(derived_witness(ctx, a, 1).word))

# Survival in a quotient: w survives exactly where a does, and lands in D^n of its normal closure.
S5 = symmetric_group(5)
rng = random.Random(3)
rec = derived_witness(ctx, a, 2)
agree = 0
for _ in range(40):
    imgs = (rng.choice(S5.elements), rng.choice(S5.elements))
    pa, pw = S5.evaluate(a, imgs), S5.evaluate(rec.word, imgs)
    assert pw in normal_closure_derived_depth(S5, pa, 2)
    agree += (pa == S5.identity) <= (pw == S5.identity)
print(f"\n40 random maps to S5: dies-with-a held in {agree} of 40")

T = [F2.parse(s) for s in ("x", "x^2", "y", "x y")]
lcm = lcm_witness(ctx, T)
print(f"\nA common multiple of {[F2.format(t) for t in T]}")
print(f"  padded leaves {lcm.levels[0]}, length {lcm.length} (bound {lcm.bound})")
print("  commuting neighbours got conjugators:",
      [F2.format(nd.conjugator) for nd in lcm.nodes if nd.conjugator])
