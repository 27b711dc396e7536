"""Uniform random terms: Remy trees with independent leaf labels.

Draw protocol, version 1
------------------------
A :class:`RandomSource` is numpy's PCG64 seeded from
``SeedSequence(seed, spawn_key=(stream_index,))``; SeedSequence hashes the
pair, so streams for different indices are independent and a stream's draws
depend on nothing else.

For a size-``n`` term the source is consumed in this order:

1. shape: ``n`` integers, the k-th uniform on ``[0, 4k + 2)`` (one numpy
   call with a vector of upper bounds);
2. labels: ``n + 1`` integers uniform on ``[0, d)``, assigned to the leaves
   left to right, each indexing ``basis.primitives``.

Changing either step changes every sampled term, so it would be version 2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .term import App, Basis, Term

__all__ = [
    "DRAW_PROTOCOL_VERSION",
    "RandomSource",
    "RemyTree",
    "remy_tree",
    "random_term",
]

DRAW_PROTOCOL_VERSION = 1


class RandomSource:
    """A reproducible stream of draws identified by ``(seed, stream_index)``."""

    def __init__(self, seed: int, stream_index: int = 0) -> None:
        if not 0 <= seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if stream_index < 0:
            raise ValueError("stream index must be non-negative")
        self.seed = seed
        self.stream_index = stream_index
        ss = np.random.SeedSequence(seed, spawn_key=(stream_index,))
        self.generator = np.random.Generator(np.random.PCG64(ss))

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed}, stream_index={self.stream_index})"

    def integers(self, high) -> np.ndarray:
        """Uniform integers on ``[0, high)``; ``high`` may be an array."""
        return self.generator.integers(0, high, dtype=np.int64)


@dataclass(frozen=True)
class RemyTree:
    """Plane binary tree in linked form.

    Slots ``0 .. 2n``: odd slots are inner nodes, even slots are leaves. An
    inner node ``i`` has children ``links[i]`` (left) and ``links[i + 1]``
    (right); the root is ``links[0]``.
    """

    n: int
    links: tuple[int, ...]

    @property
    def root(self) -> int:
        return self.links[0]

    def leaf_order(self) -> list[int]:
        """Leaf slots from left to right."""
        out = []
        stack = [self.root]
        links = self.links
        while stack:
            i = stack.pop()
            if i % 2 == 0:
                out.append(i)
            else:
                stack.append(links[i + 1])
                stack.append(links[i])
        return out

    def shape(self):
        """Nested-pair form used by :func:`clquant.enumeration.shapes`."""
        links = self.links
        # postorder with an explicit stack; leaves are None
        values: list = []
        stack = [(self.root, False)]
        while stack:
            i, expanded = stack.pop()
            if i % 2 == 0:
                values.append(None)
            elif expanded:
                right = values.pop()
                left = values.pop()
                values.append((left, right))
            else:
                stack.append((i, True))
                stack.append((links[i + 1], False))
                stack.append((links[i], False))
        return values[0]


def remy_tree(n: int, rng: RandomSource) -> RemyTree:
    """Uniform plane binary tree with ``n`` inner nodes.

    Each step picks one of the ``2k + 1`` existing slots and a side, then
    grafts a new inner node there with a fresh leaf on the chosen side.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    links = [0] * (2 * n + 1)
    if n:
        draws = rng.integers(4 * np.arange(n, dtype=np.int64) + 2).tolist()
        for k, x in enumerate(draws):
            b = x & 1
            j = x >> 1
            inner = 2 * k + 1
            links[inner + b] = inner + 1
            links[inner + 1 - b] = links[j]
            links[j] = inner
    return RemyTree(n, tuple(links))


def random_term(basis: Basis, n: int, rng: RandomSource) -> Term:
    """Uniform size-``n`` term over ``basis`` (protocol version 1)."""
    tree = remy_tree(n, rng)
    prims = basis.leaves()
    labels = rng.integers(np.full(n + 1, basis.d, dtype=np.int64)).tolist()
    label_of = dict(zip(tree.leaf_order(), labels))
    links = tree.links
    values: list[Term] = []
    stack = [(tree.root, False)]
    while stack:
        i, expanded = stack.pop()
        if i % 2 == 0:
            values.append(prims[label_of[i]])
        elif expanded:
            right = values.pop()
            left = values.pop()
            values.append(App(left, right))
        else:
            stack.append((i, True))
            stack.append((links[i + 1], False))
            stack.append((links[i], False))
    return values[0]
