"""Census of all effect algebras with at most seven elements.

Run with ``python demos/census.py``; enumeration of size 7 takes about a second.
"""
import time
import warnings

import numpy as np

from effalg import NonHomogeneousWarning, enumerate_size, property_report, serialize_ea

warnings.simplefilter("ignore", NonHomogeneousWarning)
FLAGS = ["orthoalgebra", "lattice", "mv", "rdp", "homogeneous", "trt"]

print(f"{'n':>2} {'classes':>8} " + " ".join(f"{f:>12}" for f in FLAGS) + "   seconds")
odd_ones = []
for n in range(2, 8):
    start = time.perf_counter()
    algebras = enumerate_size(n)
    reports = [property_report(E) for E in algebras]
    counts = np.array([[r.flags[f] for f in FLAGS] for r in reports]).sum(axis=0)
    print(f"{n:>2} {len(algebras):>8} " + " ".join(f"{c:>12}" for c in counts)
          + f"   {time.perf_counter() - start:.2f}")
    odd_ones += [E for E, r in zip(algebras, reports) if not r.flags["homogeneous"]]

# The smallest algebras that are not homogeneous, hence outside the TRT class.
print(f"\n{len(odd_ones)} non-homogeneous algebras; the first one:")
print(serialize_ea(odd_ones[0]))
print("witness:", property_report(odd_ones[0]).witnesses["homogeneous"])
