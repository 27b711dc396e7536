from __future__ import annotations

import math
from fractions import Fraction

import pytest

from clquant.datasets import r1_grammar, reference_densities
from clquant.enumeration import census
from clquant.series import (
    GAMMA_MINUS_HALF,
    AsymptoticSpec,
    CoefficientStream,
    GrammarData,
    ProductionSummary,
    asymptotic_estimate,
    c_series,
    catalan,
    coeff_C,
    coeff_R0,
    coeff_subterm,
    coeff_TL,
    density_from_constant,
    density_lower_bound_L,
    density_U,
    grammar_coeffs,
    inverse_sqrt_core,
    r0_series,
    relative_error,
    subterm_series,
    sum_densities,
    tl_asymptotic_spec,
)
from clquant.term import SK

from oracles import oracle_series, r1_constant_closed_form
from reference_values import C_COLUMN, R1_REFERENCE, SIZES


class TestStream:
    def test_arithmetic(self):
        a = CoefficientStream([1, 2, 3])
        b = CoefficientStream([0, 1, 0])
        assert (a + b) == CoefficientStream([1, 3, 3])
        assert (a - b) == CoefficientStream([1, 1, 3])
        assert (a * b) == CoefficientStream([0, 1, 2])
        assert (a * 2) == CoefficientStream([2, 4, 6])
        assert a.shift(1) == CoefficientStream([0, 1, 2])
        assert a ** 0 == CoefficientStream.one(2)
        assert a ** 3 == a * a * a

    def test_mixed_orders_truncate(self):
        a = CoefficientStream([1, 2])
        b = CoefficientStream([1, 2, 3])
        assert (a + b).order == 1 and (a * b).order == 1
        with pytest.raises(ValueError):
            a.truncate(2)
        with pytest.raises(ValueError):
            CoefficientStream([])


class TestExactCoefficients:
    @pytest.mark.parametrize("n,want", [(0, 1), (3, 5), (10, 16796)])
    def test_catalan(self, n, want):
        assert catalan(n) == want

    def test_catalan_recurrence(self):
        cs = [1]
        for n in range(30):
            cs.append(sum(cs[i] * cs[n - i] for i in range(n + 1)))
        assert [catalan(n) for n in range(31)] == cs

    def test_c_column(self):
        assert [coeff_C(n) for n in SIZES] == C_COLUMN
        assert coeff_C(0) == 2

    def test_c_against_closed_form(self):
        assert list(c_series(25)) == oracle_series("(1 - sqrt(1 - 8*z)) / (2*z)", 25)

    def test_c_equals_tl(self):
        assert all(coeff_C(n) == coeff_TL(2, n) for n in range(51))

    @pytest.mark.parametrize("d", [1, 2, 3, 5])
    def test_tl(self, d):
        assert [coeff_TL(d, n) for n in range(12)] == [
            d ** (n + 1) * catalan(n) for n in range(12)
        ]
        assert coeff_TL(3, 2) == 54

    def test_r0(self):
        assert [coeff_R0(n) for n in range(3)] == [2, 4, 12]
        want = oracle_series("(1 - 2*z - sqrt(1 - 4*z - 4*z**2)) / (2*z**2)", 25)
        assert list(r0_series(25)) == want

    def test_r0_functional_equation(self):
        r = r0_series(40)
        two = CoefficientStream.one(40) * 2
        assert r == two + (r * 2).shift(1) + (r * r).shift(2)

    @pytest.mark.parametrize("p", [1, 2, 3, 5])
    def test_subterm_against_closed_form(self, p):
        expr = f"(-sqrt(1 - 8*z) + sqrt(1 - 8*z + 4*z**{p + 1})) / (2*z)"
        assert list(subterm_series(2, p, 18)) == oracle_series(expr, 18)

    def test_subterm_examples(self):
        assert coeff_subterm(2, 1, 1) == 1
        assert coeff_subterm(2, 1, 2) == 4
        for p in range(1, 6):
            assert coeff_subterm(2, p, p) == 1
            assert all(coeff_subterm(2, p, n) == 0 for n in range(p))
        with pytest.raises(ValueError):
            coeff_subterm(2, 0, 3)

    def test_inverse_sqrt_core(self):
        core = inverse_sqrt_core(30)
        assert list(core) == oracle_series("1 / sqrt(1 - 4*z - 4*z**2)", 30)
        g = CoefficientStream([1, -4, -4] + [0] * 28)
        assert g * core * core == CoefficientStream.one(30)
        assert core[0] == 1

    def test_inverse_sqrt_is_not_delannoy(self):
        # 1, 3, 13, 63, 321 expand (1 - 6z + z^2)^(-1/2), a different series
        assert list(inverse_sqrt_core(4)) == [1, 2, 8, 32, 136]
        assert oracle_series("1 / sqrt(1 - 6*z + z**2)", 4) == [1, 3, 13, 63, 321]


class TestGrammar:
    def test_empty(self):
        g = GrammarData(1, ())
        assert grammar_coeffs(g, [], 10) == CoefficientStream.zero(10)

    def test_unit_production(self):
        g = GrammarData(1, (ProductionSummary(0, 0, ()),))
        assert grammar_coeffs(g, [], 10) == inverse_sqrt_core(10)

    def test_validation(self):
        with pytest.raises(ValueError):
            GrammarData(1, (ProductionSummary(0, 0, (1, 1)),))
        with pytest.raises(ValueError):
            ProductionSummary(-1, 0)
        with pytest.raises(ValueError):
            grammar_coeffs(GrammarData(2, (ProductionSummary(0, 0, (0, 1)),)), [r0_series(5)], 5)

    def test_json_round_trip(self):
        g = r1_grammar()
        assert GrammarData.from_dict(g.to_dict()) == g

    def test_full_grammar_matches_census(self):
        coeffs = grammar_coeffs(r1_grammar(), [r0_series(8)], 8)
        for n in range(9):
            assert coeffs[n] == census(SK, n, 100).by_reduction_length.get(1, 0)

    def test_k_head_grammar_matches_reference_column(self):
        coeffs = grammar_coeffs(r1_grammar(k_head_only=True), [r0_series(20)], 20)
        assert [coeffs[n] for n in SIZES] == R1_REFERENCE

    def test_grammar_with_higher_index(self):
        # R_2-style production referencing R_1 (use the R_1 stream as the lower one)
        r0 = r0_series(10)
        r1 = grammar_coeffs(r1_grammar(), [r0], 10)
        g = GrammarData(2, (ProductionSummary(1, 0, (0, 1)),))
        want = inverse_sqrt_core(10) * r1.shift(1)
        assert grammar_coeffs(g, [r0, r1], 10) == want


class TestAsymptotics:
    def test_gamma(self):
        assert GAMMA_MINUS_HALF == pytest.approx(math.gamma(-0.5), rel=1e-15)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            AsymptoticSpec(Fraction(2), 1.0)
        with pytest.raises(ValueError):
            asymptotic_estimate(tl_asymptotic_spec(2), 0)

    def test_tl_constant(self):
        spec = tl_asymptotic_spec(2)
        assert spec.c_tilde == pytest.approx(2 / math.sqrt(math.pi), rel=1e-15)
        assert spec.c_bar == pytest.approx(-4.0, rel=1e-15)

    def test_tl_ratio_at_300(self):
        ratio = asymptotic_estimate(tl_asymptotic_spec(2), 300) / coeff_TL(2, 300)
        assert abs(ratio - 1) < 0.01

    def test_tl_convergence(self):
        spec = tl_asymptotic_spec(2)
        errs = [relative_error(coeff_TL(2, n), asymptotic_estimate(spec, n)) for n in (20, 40, 80, 160, 320)]
        assert errs == sorted(errs, reverse=True)
        assert errs[-1] < 0.02

    def test_other_d(self):
        # Catalan(n) = 4^n / (sqrt(pi) n^(3/2)) * (1 - 9/(8n) + O(n^-2))
        spec = tl_asymptotic_spec(3)
        err = relative_error(coeff_TL(3, 250), asymptotic_estimate(spec, 250))
        assert err == pytest.approx(9 / (8 * 250), rel=0.01)

    def test_floor_examples(self):
        spec = AsymptoticSpec(Fraction(1, 8), 0.10111668957132425)
        assert math.floor(asymptotic_estimate(spec, 4)) == 51

    def test_precise_constant_fixture(self):
        fixture = reference_densities()["c_tilde_1_precise"]
        assert fixture == r1_constant_closed_form(38)
        assert abs(float(fixture) - 0.10111668957132425) < 2e-16

    def test_r1_constant_from_coefficients(self):
        # a_n = [z^n] R_1 * n^(3/2) / 8^n = C~ (1 + e_1/n + e_2/n^2 + ...);
        # Richardson extrapolation of order 10 at n = 400 removes e_1..e_10
        import mpmath

        n, order = 400, 10
        coeffs = grammar_coeffs(r1_grammar(), [r0_series(n)], n)
        with mpmath.workdps(40):

            def a(k):
                return mpmath.mpf(coeffs[k]) * mpmath.mpf(k) ** 1.5 / mpmath.mpf(8) ** k

            est = mpmath.fsum(
                a(k) * mpmath.mpf(k) ** order * (-1) ** (n - k)
                / (mpmath.factorial(k - n + order) * mpmath.factorial(n - k))
                for k in range(n - order, n + 1)
            )
            closed = mpmath.mpf(r1_constant_closed_form(38))
            assert abs(est - closed) < 1e-17
            # the 17-digit printed value is 1.7e-16 above the limit
            assert abs(mpmath.mpf("0.10111668957132425") - closed) > 1e-16

    def test_relative_error(self):
        assert relative_error(4, 2) == 0.5
        assert relative_error(7, 7) == 0
        assert relative_error(1152, 296) == 0.7430555555555556
        with pytest.raises(ZeroDivisionError):
            relative_error(0, 1.0)


class TestDensities:
    def test_from_constant(self):
        assert abs(density_from_constant(0.10111668957132425) - 0.08961233291075565) < 1e-6
        assert density_from_constant(0) == 0
        assert density_from_constant(2 / math.sqrt(math.pi)) == pytest.approx(1.0, rel=1e-15)

    def test_lower_bound(self):
        assert density_lower_bound_L(2, 0) == Fraction(1, 32)
        assert density_lower_bound_L(1, 0) == Fraction(1, 16)
        assert density_lower_bound_L(2, 6) == Fraction(1, 2**7 * 4**8)

    def test_upper_bound(self):
        assert density_U(2, 13) == Fraction(1, 2**38)
        assert density_U(1, 1) == Fraction(1, 4)
        assert 0 < 1 - density_U(2, 13) < 1
        with pytest.raises(ValueError):
            density_U(2, 0)

    def test_sum(self):
        ref = reference_densities()
        assert abs(sum_densities(ref["densities"]) - ref["sum"]) < 1e-12
        assert sum_densities([]) == 0
        assert sum_densities([0.5, 0.25]) == 0.75
