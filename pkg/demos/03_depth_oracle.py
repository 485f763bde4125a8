"""Brute-force depth: the smallest catalog quotient of F_2 in which a word survives."""
from rfcert.finite_groups import cyclic_group
from rfcert.rfgrowth import (
    Hom, default_catalog, depth, invariant_core, kernel_invariant, nielsen_rules, parse_class,
)
from rfcert.words import FreeGroup

F2 = FreeGroup(2)
cat = default_catalog()
names = F2.names

for text in ["x", "x^2", "[x,y]", "x^2 y^2", "[x^2,y]"]:
    r = depth(2, F2.parse(text), cat)
    print(f"{text:<10} -> {r.target:<8} order {r.order:<4} exhaustive={r.exhaustive}")

print("\nRestricted to products of simple groups of Lie type, [x,y] needs A5:")
print(depth(2, F2.parse("[x,y]"), cat, parse_class("product-of-simple-lie-type")).format(names))

print("\nInvariance under Nielsen moves.")
C2 = cyclic_group(2)
g = C2.gens[0]
rules = nielsen_rules(2)
single = Hom(C2, [g, C2.identity])
print("  kernel of x->1, y->0 in C2 invariant?", kernel_invariant(single, rules))
core = invariant_core(single, rules)
print(f"  its invariant core: orbit of {core.orbit_size} kernels, quotient of order {core.image_order}")

r = depth(2, F2.parse("x"), cat, aut_rules=rules, require_invariant=True)
print(f"  smallest quotient with invariant kernel where x survives: {r.target} (order {r.order})")
