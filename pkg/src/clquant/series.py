"""Exact generating-function coefficients and asymptotic densities.

All coefficient work is exact integer arithmetic, driven by the functional
equations of the classes involved:

    T_L = d + z T_L^2                      all terms over d primitives
    C   = 2 + z C^2                        SK-terms (d = 2)
    R0  = 2 + 2 z R0 + z^2 R0^2            SK normal forms
    O   = z^p + 2 z T_L O - z O^2          terms containing a fixed size-p term
    R_n = (1 - 4z - 4z^2)^(-1/2) * sum_alpha z^k C^c prod_i R_i^(r_i)

Floating point only enters in the asymptotic layer
``[z^n] f ~ zeta^(-n) * C~ * n^(-3/2)`` with ``C~ = C-bar / Gamma(-1/2)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

__all__ = [
    "CoefficientStream",
    "catalan",
    "c_series",
    "coeff_C",
    "r0_series",
    "coeff_R0",
    "tl_series",
    "coeff_TL",
    "subterm_series",
    "coeff_subterm",
    "inverse_sqrt_core",
    "ProductionSummary",
    "GrammarData",
    "grammar_coeffs",
    "AsymptoticSpec",
    "GAMMA_MINUS_HALF",
    "asymptotic_estimate",
    "tl_asymptotic_spec",
    "relative_error",
    "density_from_constant",
    "density_lower_bound_L",
    "density_U",
    "sum_densities",
]


class CoefficientStream:
    """Truncated power series ``a_0 + a_1 z + ... + a_N z^N`` (exact).

    Products and powers are truncated to the smaller order of the operands.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable) -> None:
        self.coeffs = tuple(coeffs)
        if not self.coeffs:
            raise ValueError("a stream has at least one coefficient")

    @classmethod
    def zero(cls, order: int) -> CoefficientStream:
        return cls([0] * (order + 1))

    @classmethod
    def one(cls, order: int) -> CoefficientStream:
        return cls([1] + [0] * order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CoefficientStream):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        head = ", ".join(map(str, self.coeffs[:6]))
        more = ", ..." if len(self.coeffs) > 6 else ""
        return f"CoefficientStream([{head}{more}], order={self.order})"

    def truncate(self, order: int) -> CoefficientStream:
        if order > self.order:
            raise ValueError(f"stream only known to order {self.order}")
        return CoefficientStream(self.coeffs[: order + 1])

    def __add__(self, other: CoefficientStream) -> CoefficientStream:
        n = min(len(self), len(other))
        return CoefficientStream(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n]))

    def __sub__(self, other: CoefficientStream) -> CoefficientStream:
        n = min(len(self), len(other))
        return CoefficientStream(a - b for a, b in zip(self.coeffs[:n], other.coeffs[:n]))

    def __mul__(self, other):
        if not isinstance(other, CoefficientStream):
            return CoefficientStream(a * other for a in self.coeffs)
        n = min(len(self), len(other))
        a, b = self.coeffs, other.coeffs
        out = [0] * n
        for i in range(n):
            ai = a[i]
            if ai:
                for j in range(n - i):
                    out[i + j] += ai * b[j]
        return CoefficientStream(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CoefficientStream:
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = CoefficientStream.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, k: int) -> CoefficientStream:
        """Multiply by ``z^k`` keeping the order."""
        if k == 0:
            return self
        n = len(self)
        return CoefficientStream(([0] * k + list(self.coeffs))[:n])


# --------------------------------------------------------------------------
# Closed classes


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    return math.comb(2 * n, n) // (n + 1)


def tl_series(d: int, order: int) -> CoefficientStream:
    """Terms over ``d`` primitives by size, from ``T = d + z T^2``."""
    if d < 1:
        raise ValueError("d must be positive")
    t = [0] * (order + 1)
    t[0] = d
    for n in range(1, order + 1):
        t[n] = sum(t[i] * t[n - 1 - i] for i in range(n))
    return CoefficientStream(t)


def coeff_TL(d: int, n: int) -> int:
    return tl_series(d, n)[n]


def c_series(order: int) -> CoefficientStream:
    """SK-terms by size, ``C(z) = (1 - sqrt(1 - 8z)) / (2z)``."""
    return tl_series(2, order)


def coeff_C(n: int) -> int:
    return c_series(n)[n]


def r0_series(order: int) -> CoefficientStream:
    """SK normal forms: ``R0 = 2 + 2z R0 + z^2 R0^2``."""
    r = [0] * (order + 1)
    r[0] = 2
    for n in range(1, order + 1):
        acc = 2 * r[n - 1]
        m = n - 2
        if m >= 0:
            acc += sum(r[i] * r[m - i] for i in range(m + 1))
        r[n] = acc
    return CoefficientStream(r)


def coeff_R0(n: int) -> int:
    return r0_series(n)[n]


def subterm_series(d: int, p: int, order: int) -> CoefficientStream:
    """Terms containing one fixed term of size ``p >= 1``."""
    if p < 1:
        raise ValueError("pattern size must be at least 1")
    t = tl_series(d, order).coeffs
    o = [0] * (order + 1)
    for n in range(order + 1):
        acc = 1 if n == p else 0
        m = n - 1
        if m >= 0:
            acc += 2 * sum(t[i] * o[m - i] for i in range(m + 1))
            acc -= sum(o[i] * o[m - i] for i in range(m + 1))
        o[n] = acc
    return CoefficientStream(o)


def coeff_subterm(d: int, p: int, n: int) -> int:
    return subterm_series(d, p, n)[n]


def inverse_sqrt_core(order: int) -> CoefficientStream:
    """Expansion of ``(1 - 4z - 4z^2)^(-1/2)``: 1, 2, 8, 32, 136, ...

    With ``f = g^(-1/2)`` and ``g = 1 - 4z - 4z^2`` we have
    ``g f' = (2 + 4z) f``, i.e.
    ``(n+1) f_{n+1} = (4n + 2) f_n + 4n f_{n-1}``.
    """
    f = [0] * (order + 1)
    f[0] = 1
    if order >= 1:
        f[1] = 2
    for n in range(1, order):
        num = (4 * n + 2) * f[n] + 4 * n * f[n - 1]
        q, rem = divmod(num, n + 1)
        assert rem == 0
        f[n + 1] = q
    return CoefficientStream(f)


# --------------------------------------------------------------------------
# Reduction grammars


@dataclass(frozen=True)
class ProductionSummary:
    """One production ``z^k C^c prod_i R_i^(r_i)`` of a reduction grammar."""

    k: int
    c: int
    r: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "r", tuple(self.r))
        if self.k < 0 or self.c < 0 or any(x < 0 for x in self.r):
            raise ValueError("production exponents must be non-negative")


@dataclass(frozen=True)
class GrammarData:
    """Productions of the grammar for terms reducing in exactly ``n`` steps
    that do not refer back to that grammar."""

    n: int
    productions: tuple[ProductionSummary, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "productions", tuple(self.productions))
        if self.n < 1:
            raise ValueError("grammar index must be at least 1")
        for prod in self.productions:
            if len(prod.r) > self.n:
                raise ValueError(
                    f"production references R_{len(prod.r) - 1}, index must be < {self.n}"
                )

    @classmethod
    def from_dict(cls, data: dict) -> GrammarData:
        prods = [
            ProductionSummary(int(p["k"]), int(p["c"]), tuple(int(x) for x in p.get("r", [])))
            for p in data["productions"]
        ]
        return cls(int(data["n"]), tuple(prods))

    @classmethod
    def from_json(cls, path: str | Path) -> GrammarData:
        return cls.from_dict(json.loads(Path(path).read_text()))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "productions": [
                {"k": p.k, "c": p.c, "r": list(p.r)} for p in self.productions
            ],
        }


def grammar_coeffs(
    g: GrammarData, lower: Sequence[CoefficientStream], order: int
) -> CoefficientStream:
    """Coefficients of ``R_n`` to ``order`` from its production summary.

    ``lower[i]`` must hold ``R_i`` to at least ``order`` for every ``i`` a
    production refers to.
    """
    needed = max((len(p.r) for p in g.productions), default=0)
    if len(lower) < needed:
        raise ValueError(f"need R_0..R_{needed - 1}, got {len(lower)} streams")
    lows = [s.truncate(order) for s in lower[:needed]]
    c = c_series(order)
    total = CoefficientStream.zero(order)
    cache: dict[tuple[int, int], CoefficientStream] = {}

    def power(which: int, base: CoefficientStream, e: int) -> CoefficientStream:
        key = (which, e)
        if key not in cache:
            cache[key] = base ** e
        return cache[key]

    for prod in g.productions:
        if prod.k > order:
            continue
        term = power(-1, c, prod.c)
        for i, e in enumerate(prod.r):
            if e:
                term = term * power(i, lows[i], e)
        total = total + term.shift(prod.k)
    return inverse_sqrt_core(order) * total


# --------------------------------------------------------------------------
# Asymptotics and densities

SQRT_PI = math.sqrt(math.pi)
#: Gamma(-1/2) = -2 sqrt(pi)
GAMMA_MINUS_HALF = -2.0 * SQRT_PI


@dataclass(frozen=True)
class AsymptoticSpec:
    """``[z^n] f ~ zeta^(-n) * C~ * n^(-3/2)`` with ``C~ = C-bar / Gamma(-1/2)``."""

    zeta: Fraction
    c_tilde: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "zeta", Fraction(self.zeta))
        if not 0 < self.zeta < 1:
            raise ValueError("singularity must lie in (0, 1)")

    @classmethod
    def from_c_bar(cls, zeta, c_bar: float) -> AsymptoticSpec:
        return cls(Fraction(zeta), c_bar / GAMMA_MINUS_HALF)

    @property
    def c_bar(self) -> float:
        return self.c_tilde * GAMMA_MINUS_HALF


def tl_asymptotic_spec(d: int) -> AsymptoticSpec:
    """Terms over ``d`` primitives: ``zeta = 1/(4d)``, ``C-bar = -2d``."""
    return AsymptoticSpec.from_c_bar(Fraction(1, 4 * d), -2.0 * d)


def asymptotic_estimate(spec: AsymptoticSpec, n: int) -> float:
    """``zeta^(-n) * C~ * n^(-3/2)`` in double precision."""
    if n < 1:
        raise ValueError("n must be positive")
    growth = Fraction(1) / spec.zeta
    if growth.denominator == 1:
        scale = float(growth.numerator ** n)
    else:
        scale = float(growth) ** n
    return scale * spec.c_tilde * n ** -1.5


def relative_error(exact: int, approx: float) -> float:
    if exact == 0:
        raise ZeroDivisionError("relative error undefined for an exact value of 0")
    return abs(exact - approx) / exact


def density_from_constant(c_tilde: float) -> float:
    """Density against all SK-terms of a class with constant ``C~`` at 1/8.

    All SK-terms have ``C-bar = -4``, so the density is ``C-bar / -4``,
    i.e. ``C~ * sqrt(pi) / 2``.
    """
    return c_tilde * SQRT_PI / 2.0


def density_lower_bound_L(d: int, p: int) -> Fraction:
    """Density of ``K' X M`` terms, ``K'`` a size-``p`` stand-in for K."""
    if d < 1 or p < 0:
        raise ValueError("need d >= 1 and p >= 0")
    return Fraction(1, d ** (p + 1) * 4 ** (p + 2))


def density_U(d: int, p: int) -> Fraction:
    """Density of terms whose leftmost leaf was replaced by a size-``p`` term."""
    if d < 1:
        raise ValueError("d must be positive")
    if p < 1:
        raise ValueError("p must be at least 1")
    return Fraction(d, (4 * d) ** p)


def sum_densities(values: Iterable[float]) -> float:
    return sum(values, 0.0)
