"""Exact coefficients of the counting series and their asymptotics."""

from __future__ import annotations

from fractions import Fraction
import math

from clquant.datasets import r1_grammar, reference_densities
from clquant.series import (
    AsymptoticSpec,
    asymptotic_estimate,
    coeff_C,
    density_from_constant,
    grammar_coeffs,
    r0_series,
    relative_error,
    sum_densities,
)

N = 20

# All terms, normal forms, and terms reducing in exactly one step.
r0 = r0_series(N)
r1 = grammar_coeffs(r1_grammar(), [r0], N)
print("n   C_n                  R0_n              R1_n")
for n in range(0, N + 1, 4):
    print(f"{n:<3} {coeff_C(n):<20} {r0[n]:<17} {r1[n]}")

# R1_n ~ 8^n C~ n^(-3/2); compare the estimate with the exact count.
c_tilde = float(reference_densities()["c_tilde_1_precise"])
spec = AsymptoticSpec(Fraction(1, 8), c_tilde)
for n in (5, 10, 20):
    approx = math.floor(asymptotic_estimate(spec, n))
    print(f"n={n}: estimate {approx}, exact {r1[n]}, relative error {relative_error(r1[n], approx):.4f}")

# Asymptotic density of one-step terms among all terms, and a lower bound
# for the density of normalising terms.
print("density of R1:", density_from_constant(c_tilde))
print("sum of seven densities:", sum_densities(reference_densities()["densities"]))
