"""Monte Carlo normalisation experiments G(s, n, r).

Draw ``s`` uniform size-``n`` terms, reduce each with at most ``r``
normal-order steps and histogram the reduction lengths. Sample ``i`` always
uses stream ``i`` of the seed, so the result does not depend on how samples
are split across workers.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .reduce import StepCounter
from .sample import DRAW_PROTOCOL_VERSION, RandomSource, random_term
from .term import SK, Basis

__all__ = [
    "UNNORMALIZED",
    "ExperimentConfig",
    "ExperimentResult",
    "run_experiment",
    "export_result",
    "parse_coordinates",
    "format_coordinates",
    "result_from_histogram",
    "load_coordinates",
]

#: Export key for samples that ran out of fuel.
UNNORMALIZED = -1


@dataclass(frozen=True)
class ExperimentConfig:
    samples: int
    size: int
    fuel: int
    seed: int = 0
    workers: int = 1
    basis: Basis = SK

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if self.size < 0:
            raise ValueError("size must be non-negative")
        if self.fuel < 1:
            raise ValueError("fuel must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.workers < 1:
            raise ValueError("workers must be positive")

    def to_dict(self) -> dict:
        return {
            "samples": self.samples,
            "size": self.size,
            "fuel": self.fuel,
            "seed": self.seed,
            "workers": self.workers,
            "basis": self.basis.names,
            "draw_protocol": DRAW_PROTOCOL_VERSION,
        }


@dataclass(frozen=True)
class ExperimentResult:
    """Histogram of reduction lengths of normalising samples plus the
    count of samples that exhausted their fuel."""

    lengths: dict[int, int]
    unnormalized: int
    config: ExperimentConfig | None = None
    size: int | None = field(default=None)

    @property
    def normalized(self) -> int:
        return sum(self.lengths.values())

    @property
    def samples(self) -> int:
        return self.normalized + self.unnormalized

    @property
    def fraction_normalized(self) -> float:
        return self.normalized / self.samples

    @property
    def mean_reduction_length(self) -> float:
        """E(X) over normalising samples; NaN when none normalised."""
        if not self.normalized:
            return math.nan
        return sum(k * v for k, v in self.lengths.items()) / self.normalized

    @property
    def log2_n(self) -> float:
        n = self.config.size if self.config is not None else self.size
        if not n:
            return math.nan
        return math.log2(n)

    def histogram(self) -> dict[int, int]:
        """Export view: lengths ascending, ``-1`` first when present."""
        out: dict[int, int] = {}
        if self.unnormalized:
            out[UNNORMALIZED] = self.unnormalized
        for k in sorted(self.lengths):
            out[k] = self.lengths[k]
        return out

    def to_dict(self) -> dict:
        return {
            "histogram": [[k, v] for k, v in self.histogram().items()],
            "normalized": self.normalized,
            "unnormalized": self.unnormalized,
            "fraction_normalized": self.fraction_normalized,
            "mean_reduction_length": _json_float(self.mean_reduction_length),
            "log2_n": _json_float(self.log2_n),
            "config": self.config.to_dict() if self.config is not None else None,
        }


def _json_float(x: float) -> float | None:
    return None if math.isnan(x) else x


def result_from_histogram(
    histogram: dict[int, int], size: int | None = None
) -> ExperimentResult:
    """Rebuild a result from an exported histogram (``-1`` = unnormalised)."""
    lengths = {k: v for k, v in histogram.items() if k != UNNORMALIZED}
    if any(k < 0 for k in lengths):
        raise ValueError("reduction lengths must be non-negative or -1")
    return ExperimentResult(lengths, histogram.get(UNNORMALIZED, 0), size=size)


def _run_range(config: ExperimentConfig, start: int, stop: int):
    counter = StepCounter(config.basis, memo_size=-1)
    lengths: Counter[int] = Counter()
    unnormalized = 0
    for i in range(start, stop):
        t = random_term(config.basis, config.size, RandomSource(config.seed, i))
        steps = counter.count(t, config.fuel)
        if steps is None:
            unnormalized += 1
        else:
            lengths[steps] += 1
    return dict(lengths), unnormalized


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    s, w = config.samples, min(config.workers, config.samples)
    if w == 1:
        parts = [_run_range(config, 0, s)]
    else:
        bounds = [s * k // w for k in range(w + 1)]
        with ProcessPoolExecutor(max_workers=w) as pool:
            futures = [
                pool.submit(_run_range, config, bounds[k], bounds[k + 1])
                for k in range(w)
            ]
            parts = [f.result() for f in futures]
    lengths: Counter[int] = Counter()
    unnormalized = 0
    for part_lengths, part_un in parts:
        lengths.update(part_lengths)
        unnormalized += part_un
    return ExperimentResult(dict(lengths), unnormalized, config)


def export_result(res: ExperimentResult, fmt: str = "csv") -> bytes:
    if fmt == "csv":
        lines = ["reduction_length,count"]
        lines += [f"{k},{v}" for k, v in res.histogram().items()]
        return ("\n".join(lines) + "\n").encode()
    if fmt == "json":
        return (json.dumps(res.to_dict(), indent=2) + "\n").encode()
    raise ValueError(f"unknown export format {fmt!r}")


_COORD = re.compile(r"\((-?\d+),(\d+)\)")


def parse_coordinates(text: str) -> dict[int, int]:
    """Read a plot coordinate list ``(-1,176) (1,110) ...`` into a histogram."""
    hist: dict[int, int] = {}
    for m in _COORD.finditer(text):
        k, v = int(m.group(1)), int(m.group(2))
        if k in hist:
            raise ValueError(f"duplicate reduction length {k}")
        hist[k] = v
    if not hist:
        raise ValueError("no coordinates found")
    return hist


def format_coordinates(res: ExperimentResult) -> str:
    """One ``(length,count)`` pair per line, ``-1`` first."""
    return "".join(f"({k},{v})\n" for k, v in res.histogram().items())


def load_coordinates(path: str | Path, size: int | None = None) -> ExperimentResult:
    return result_from_histogram(parse_coordinates(Path(path).read_text()), size)
