"""Monte Carlo estimate of the fraction of normalising terms."""

from __future__ import annotations

import math

from clquant.datasets import large_run_coordinates
from clquant.experiment import (
    ExperimentConfig,
    export_result,
    parse_coordinates,
    result_from_histogram,
    run_experiment,
)

for n in (100, 1000, 10_000):
    res = run_experiment(ExperimentConfig(samples=300, size=n, fuel=1000, seed=1))
    print(
        f"n={n:<6} normalised {res.fraction_normalized:.3f}  "
        f"E(X)={res.mean_reduction_length:.2f}  log2 n={math.log2(n):.2f}"
    )

print(export_result(res).decode()[:120], "...")

# A recorded run of 1200 terms of size 5*10^7, loaded from its coordinate list.
big = result_from_histogram(parse_coordinates(large_run_coordinates()), size=50_000_000)
print(
    f"recorded run: {big.unnormalized} of {big.samples} did not normalise, "
    f"fraction {big.fraction_normalized:.4f}, E(X)={big.mean_reduction_length:.4f}"
)
