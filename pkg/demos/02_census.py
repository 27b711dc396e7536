"""Classify every SK term of a given size by its reduction length."""

from __future__ import annotations

import sys

from clquant import SK, census, count_terms, parse

max_size = int(sys.argv[1]) if len(sys.argv) > 1 else 7

print("n   terms        normal   one-step  exhausted(fuel 100)")
for n in range(max_size + 1):
    res = census(SK, n, 100)
    b = res.by_reduction_length
    print(f"{n:<3} {count_terms(2, n):<12} {b.get(0, 0):<8} {b.get(1, 0):<9} {res.fuel_exhausted}")

# The full histogram of one size, in the CSV layout used by the CLI.
print(census(SK, 5, 100).to_csv())

# Terms containing a given subterm, and simply typeable terms.
res = census(SK, 5, 100, pattern=parse("S S"), typecheck=True)
print(f"size 5: {res.containing_pattern} contain S S, {res.typeable} are typeable")
