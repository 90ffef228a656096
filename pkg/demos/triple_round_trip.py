"""Take an algebra apart into its sharp part, meager part and h-map, then rebuild it.

Run with ``python demos/triple_round_trip.py``.
"""
from effalg import (extract_triple, find_isomorphism, generate, oplus_via_triple, parse_triple,
                    reconstruct_tea, serialize_triple, trt_check, verify_triple_theorem)

E = generate("product(chain(2),mo(2))")
print(E.n, "elements; TRT conditions hold:", trt_check(E).is_trt)

T = extract_triple(E)
text = serialize_triple(T)
print(text)

# The rebuild sees only the text above.
T2 = parse_triple(text)
tea = reconstruct_tea(T2)
print("rebuilt", tea.algebra.n, "pairs, e.g.", tea.algebra.labels[:4])
print("isomorphic to the original:", find_isomorphism(E, tea.algebra) is not None)

# Sums of meager elements, computed from the triple alone.
M = T2.meager
for x in range(M.n):
    for y in range(x, M.n):
        got = oplus_via_triple(T2, x, y)
        shown = "undefined" if got is None else f"({T2.sharp.label(got[0])}, {M.label(got[1])})"
        print(f"{M.label(x)} + {M.label(y)} -> {shown}")

# The certified map x -> (largest sharp part, meager rest).
result = verify_triple_theorem(E)
print("certificate holds:", result.holds)
for x, pair in result.certificate[:6]:
    print(f"  {x} -> {pair}")
