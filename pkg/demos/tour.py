"""A walk through the basic structure of a few small effect algebras.

Run with ``python demos/tour.py``.
"""
import numpy as np

from effalg import (blocks, center, decompose, derive, generate, has_rdp, is_homogeneous,
                    meager_set, sharp_set)

# A four-element chain: 0 < a < 2a < 1 with a+a = 2a and a+2a = 1.
chain = generate("chain(3)")
print(chain.labels)
print(chain.table)  # -1 marks an undefined sum

# The order and the complement are read off the table.
d = derive(chain)
print(d.leq.astype(int))
print([chain.label(c) for c in d.complement])

# Only 0 and 1 are sharp; a and 2a lie below each other's complement.
print(chain.names(sorted(sharp_set(chain))))
print(chain.names(sorted(meager_set(chain))))

# The diamond: two atoms a, b with a+a = b+b = 1 and a+b undefined.
diamond = generate("diamond")
print(diamond.table)
print("rdp:", has_rdp(diamond), " homogeneous:", is_homogeneous(diamond))
for b in blocks(diamond):
    print("block:", diamond.names(sorted(b.members)))

# A product with a chain factor has a nontrivial center.
prod = generate("product(chain(2),chain(1))")
print("center:", prod.names(sorted(center(prod))))

# Every element splits into its largest sharp part plus a meager rest.
for x in prod.elements:
    part = decompose(prod, x)
    print(f"{prod.label(x):>6} = {prod.label(part.sharp)} + {prod.label(part.meager)}")

# Tables are plain numpy arrays, so whole-table questions are one-liners.
defined = (prod.table != -1).sum()
print(f"{defined} of {prod.n ** 2} sums are defined ({defined / prod.n ** 2:.0%})")
print("symmetric:", np.array_equal(prod.table, prod.table.T))
