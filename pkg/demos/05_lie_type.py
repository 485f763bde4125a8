"""Small finite groups of Lie type: orders, the exceptions to simplicity, and faithful matrices."""
from rfcert.lietype import (
    TITS_EXCEPTIONS, FrobeniusSemidirect, lie_info, parse_lie_id, rank_ratio, sl_rep,
)

for text in ["A1(4)", "A1(7)", "A2(4)", "B2(3)", "G2(3)", "2B2(8)"]:
    info = lie_info(parse_lie_id(text))
    print(f"{text:<7} order {info['order']:<10} p={info['characteristic']} e={info['extension_degree']}")

print("\nGroups that are not simple modulo their centre:", ", ".join(TITS_EXCEPTIONS))

fs = FrobeniusSemidirect(sl_rep(2, 4))
els = fs.elements()
distinct = len({fs.embed(*x) for x in els})
print(f"\nSL_2(4) extended by its Frobenius acts on F_2^4: {len(els)} elements, {distinct} distinct 4x4 images.")

for ell in (1, 2):
    r = rank_ratio(parse_lie_id("A1(4)"), ell)
    print(f"A1(4)^{ell}: max element order {r.m1}, log|G|/log m1 = {r.ratio:.2f}")
