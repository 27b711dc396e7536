"""Exhaustive enumeration of terms and census by reduction length.

Order of :func:`enumerate_terms`: tree shapes first, ranked by the recursive
left-size decomposition (left subtree size 0, 1, ..., n-1, then the left
shape's rank, then the right shape's rank); within one shape, leaf labellings
in lexicographic order, leaves read left to right, labels in basis order.
Index ``i`` of the stream is therefore ``shape_rank * d**(n+1) + labelling``.

Two census engines produce identical buckets:

* ``"exhaustive"`` classifies every enumerated term one by one;
* ``"decompose"`` counts by spine decomposition. A term is ``X a1 .. ak``.
  If ``k < arity(X)`` the head is stuck and the step count is the sum over
  the arguments, so those buckets are convolutions of smaller distributions.
  If ``X`` is a projection rule (like K) the contractum ``a_i a_{m+1} .. a_k``
  ranges over all terms with at least ``k - m`` spine arguments, so those
  buckets are shifted counts as well. Only the remaining redexes (like S,
  which duplicates an argument) are enumerated and reduced.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Iterator

from .reduce import StepCounter
from .simpletypes import infer_principal_type
from .term import App, Basis, Term, contains_subterm

__all__ = [
    "count_terms",
    "shapes",
    "count_shapes",
    "terms_of_shape",
    "enumerate_terms",
    "CensusResult",
    "census",
    "length_distribution",
]


def count_terms(d: int, n: int) -> int:
    """``d**(n+1) * Catalan(n)``: number of size-n terms over ``d`` primitives."""
    if d < 1 or n < 0:
        raise ValueError("need d >= 1 and n >= 0")
    return d ** (n + 1) * math.comb(2 * n, n) // (n + 1)


# --------------------------------------------------------------------------
# Shapes and ordered enumeration

#: A shape is ``None`` (a leaf) or a pair ``(left_shape, right_shape)``.


@lru_cache(maxsize=None)
def shapes(n: int) -> tuple:
    """All plane binary tree shapes with ``n`` inner nodes, in rank order."""
    if n == 0:
        return (None,)
    return tuple(
        (ls, rs)
        for i in range(n)
        for ls in shapes(i)
        for rs in shapes(n - 1 - i)
    )


@lru_cache(maxsize=None)
def count_shapes(n: int) -> int:
    if n == 0:
        return 1
    return sum(count_shapes(i) * count_shapes(n - 1 - i) for i in range(n))


def _shape_size(shape) -> int:
    if shape is None:
        return 0
    return 1 + _shape_size(shape[0]) + _shape_size(shape[1])


_SHAPE_CACHE_SIZE = 6


def terms_of_shape(shape, basis: Basis, _cache: dict | None = None) -> list[Term]:
    """All labellings of ``shape`` in lexicographic order."""
    if shape is None:
        return basis.leaves()
    if _cache is None:
        _cache = {}
    hit = _cache.get(shape)
    if hit is not None:
        return hit
    lefts = terms_of_shape(shape[0], basis, _cache)
    rights = terms_of_shape(shape[1], basis, _cache)
    out = [App(l, r) for l in lefts for r in rights]
    if _shape_size(shape) <= _SHAPE_CACHE_SIZE:
        _cache[shape] = out
    return out


def enumerate_terms(
    basis: Basis, n: int, start: int = 0, stop: int | None = None
) -> Iterator[Term]:
    """Yield the size-n terms with stream index in ``[start, stop)``.

    Every term appears exactly once over the full range. Index ranges let a
    census be sharded without coordination.
    """
    block = basis.d ** (n + 1)
    total = count_shapes(n) * block
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    cache: dict = {}
    first = start // block
    for rank in range(first, (stop - 1) // block + 1):
        shape = shapes(n)[rank]
        lo = max(start - rank * block, 0)
        hi = min(stop - rank * block, block)
        if shape is None:
            yield from basis.leaves()[lo:hi]
            continue
        lefts = terms_of_shape(shape[0], basis, cache)
        rights = terms_of_shape(shape[1], basis, cache)
        nr = len(rights)
        for idx in range(lo, hi):
            yield App(lefts[idx // nr], rights[idx % nr])


@lru_cache(maxsize=None)
def _all_terms(basis: Basis, n: int) -> tuple[Term, ...]:
    return tuple(enumerate_terms(basis, n))


# --------------------------------------------------------------------------
# Census


@dataclass
class CensusResult:
    size: int
    fuel: int
    total: int
    by_reduction_length: dict[int, int]
    fuel_exhausted: int
    normal_forms: int
    typeable: int | None = None
    containing_pattern: int | None = None
    pattern: str | None = None

    def rows(self) -> list[tuple[int, int]]:
        """``(reduction_length, count)`` rows, -1 (fuel exhausted) first."""
        rows = [(-1, self.fuel_exhausted)] if self.fuel_exhausted else []
        rows += sorted(self.by_reduction_length.items())
        return rows

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["reduction_length", "count"])
        writer.writerows(self.rows())
        return buf.getvalue()

    def to_json(self) -> str:
        data = asdict(self)
        data["by_reduction_length"] = {
            str(k): v for k, v in sorted(self.by_reduction_length.items())
        }
        return json.dumps(data, indent=2)


def census(
    basis: Basis,
    n: int,
    fuel: int,
    pattern: Term | None = None,
    typecheck: bool = False,
    method: str = "auto",
    workers: int = 1,
) -> CensusResult:
    """Classify all size-n terms by normal-order reduction length.

    Terms needing more than ``fuel`` steps land in ``fuel_exhausted``. With a
    ``pattern``, terms containing it as a subtree are counted; with
    ``typecheck``, principal-typeable terms are counted (SK basis only).
    ``method`` picks the bucket engine: ``"decompose"``, ``"exhaustive"`` or
    ``"auto"`` (decompose).
    """
    if fuel < 1:
        raise ValueError("fuel must be at least 1")
    if method not in ("auto", "decompose", "exhaustive"):
        raise ValueError(f"unknown census method {method!r}")

    if method == "exhaustive":
        buckets, exhausted, extra = _exhaustive(basis, n, fuel, pattern, typecheck)
    else:
        dist = length_distribution(basis, n, fuel, workers=workers)[n]
        buckets = {k: v for k, v in enumerate(dist[:-1]) if v}
        exhausted = dist[-1]
        extra = {}
        if pattern is not None or typecheck:
            extra = _per_term_extras(basis, n, pattern, typecheck)

    return CensusResult(
        size=n,
        fuel=fuel,
        total=sum(buckets.values()) + exhausted,
        by_reduction_length=buckets,
        fuel_exhausted=exhausted,
        normal_forms=buckets.get(0, 0),
        typeable=extra.get("typeable"),
        containing_pattern=extra.get("containing"),
        pattern=None if pattern is None else str(pattern),
    )


def _per_term_extras(basis, n, pattern, typecheck) -> dict:
    containing = 0
    typeable = 0
    for t in enumerate_terms(basis, n):
        if pattern is not None and contains_subterm(t, pattern):
            containing += 1
        if typecheck and infer_principal_type(t, basis) is not None:
            typeable += 1
    out = {}
    if pattern is not None:
        out["containing"] = containing
    if typecheck:
        out["typeable"] = typeable
    return out


def _exhaustive(basis, n, fuel, pattern, typecheck):
    counter = StepCounter(basis)
    buckets: Counter = Counter()
    exhausted = 0
    for t in enumerate_terms(basis, n):
        k = counter.count(t, fuel)
        if k is None:
            exhausted += 1
        else:
            buckets[k] += 1
    extra = (
        _per_term_extras(basis, n, pattern, typecheck)
        if pattern is not None or typecheck
        else {}
    )
    return dict(sorted(buckets.items())), exhausted, extra


# --------------------------------------------------------------------------
# Decomposition engine
#
# A distribution is a list of fuel + 2 counts: index l <= fuel counts terms
# needing exactly l steps, the last index counts terms needing more.


def _conv(a: list[int], b: list[int], fuel: int) -> list[int]:
    out = [0] * (fuel + 2)
    for i in range(fuel + 1):
        ai = a[i]
        if ai:
            for j in range(fuel + 1 - i):
                if b[j]:
                    out[i + j] += ai * b[j]
    out[-1] = sum(a) * sum(b) - sum(out)
    return out


def _add_into(acc: list[int], d: list[int]) -> None:
    for i, v in enumerate(d):
        if v:
            acc[i] += v


def _shift(d: list[int], fuel: int) -> list[int]:
    """Distribution of ``1 + steps``."""
    return [0] + d[:fuel] + [d[fuel] + d[fuel + 1]]


def length_distribution(
    basis: Basis, n_max: int, fuel: int, workers: int = 1, memo_size: int = 8
) -> list[list[int]]:
    """Step-count distributions of all terms of sizes ``0..n_max``.

    Returns ``dist`` with ``dist[n][l]`` the number of size-n terms needing
    exactly ``l`` normal-order steps (``l <= fuel``) and ``dist[n][-1]`` the
    number needing more than ``fuel``.
    """
    width = fuel + 2
    zero = [0] * width
    delta = [1] + [0] * (width - 1)
    prims = basis.primitives
    max_arity = max(p.arity for p in prims)

    full: list[list[int]] = []  # full[s]
    tuples: dict[tuple[int, int], list[int]] = {(0, 0): delta}  # (k, s) -> dist
    # at_least[s][j]: distribution over size-s terms with >= j spine args
    at_least: list[list[list[int]]] = []

    def tuple_dist(k: int, s: int) -> list[int]:
        key = (k, s)
        hit = tuples.get(key)
        if hit is None:
            if k == 0:
                return zero
            hit = list(zero)
            for i in range(s + 1):
                _add_into(hit, _conv(full[i], tuple_dist(k - 1, s - i), fuel))
            tuples[key] = hit
        return hit

    for n in range(n_max + 1):
        by_args = [list(zero) for _ in range(n + 1)]  # exact spine-arg count
        enumerated: list[tuple[int, tuple[int, ...]]] = []
        for pi, prim in enumerate(prims):
            m = prim.arity
            for k in range(n + 1):
                if k < m:
                    _add_into(by_args[k], tuple_dist(k, n - k))
                elif prim.projection is not None:
                    # discarded args: any m-1 terms; contractum: >= k-m args
                    for dsum in range(n - m + 1):
                        ways = sum(tuple_dist(m - 1, dsum))
                        if ways:
                            rest = at_least[n - m - dsum][k - m]
                            _add_into(
                                by_args[k], [ways * v for v in _shift(rest, fuel)]
                            )
                else:
                    for comp in _compositions(n - k, k):
                        enumerated.append((pi, comp))
        if enumerated:
            redex_dist = _enumerated_redexes(
                basis, enumerated, fuel, workers, memo_size
            )
            for k, d in redex_dist.items():
                _add_into(by_args[k], d)
        total = list(zero)
        for d in by_args:
            _add_into(total, d)
        full.append(total)
        suffix = [list(zero) for _ in range(n + 2)]
        for j in range(n, -1, -1):
            suffix[j] = list(suffix[j + 1])
            _add_into(suffix[j], by_args[j])
        # pad so at_least[s][j] exists for every j up to n_max
        suffix += [zero] * (n_max + max_arity + 1)
        at_least.append(suffix)
    return full


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of ``parts`` naturals summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _enumerated_redexes(basis, jobs, fuel, workers, memo_size) -> dict[int, list[int]]:
    if workers <= 1 or len(jobs) < 2:
        return _redex_worker(basis, jobs, fuel, memo_size)
    shards = [jobs[i::workers] for i in range(workers)]
    merged: dict[int, list[int]] = {}
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_redex_worker, basis, shard, fuel, memo_size)
            for shard in shards
            if shard
        ]
        for fut in futures:
            for k, d in fut.result().items():
                acc = merged.setdefault(k, [0] * (fuel + 2))
                _add_into(acc, d)
    return merged


def _redex_worker(basis, jobs, fuel, memo_size) -> dict[int, list[int]]:
    """Reduce every redex ``X a1 .. ak`` for the given (primitive, sizes) jobs."""
    counter = StepCounter(basis, memo_size=memo_size)
    out: dict[int, list[int]] = {}
    for prim_index, comp in jobs:
        prim = basis.primitives[prim_index]
        m = prim.arity
        k = len(comp)
        acc = out.setdefault(k, [0] * (fuel + 2))
        pools = [_all_terms(basis, s) for s in comp]
        for args in itertools.product(*pools):
            steps = counter.count_spine(
                prim.instantiate(args[:m]), args[m:], fuel - 1
            )
            acc[fuel + 1 if steps is None else steps + 1] += 1
    return out
