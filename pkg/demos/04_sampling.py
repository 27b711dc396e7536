"""Uniform random terms with reproducible seeds."""

from __future__ import annotations

from collections import Counter

from clquant import SK, RandomSource, random_term, to_text
from clquant.sample import remy_tree

# The same (seed, stream) always yields the same term.
for stream in range(3):
    print(stream, to_text(random_term(SK, 8, RandomSource(seed=42, stream_index=stream))))

# Remy's algorithm draws each of the 5 binary trees with 3 inner nodes equally often.
rng = RandomSource(1)
counts = Counter(remy_tree(3, rng).shape() for _ in range(50_000))
for shape, c in counts.most_common():
    print(f"{c / 50_000:.3f}  {shape}")

# Large terms are cheap to draw.
big = random_term(SK, 100_000, RandomSource(7))
print("size", big.size, "head", big.head, "spine arguments", big.nargs)
