"""Tests for the Wiener-Hopf factorisation of 1 - exp(-|p|)"""

import cmath
import math

import pytest

from lnlslab.exceptions import BranchCutError, SpecialFunctionDomainError
from lnlslab.specfun.functions import EULER_GAMMA
from lnlslab.wienerhopf.factorisation import (
    INSTANTON_ACTION,
    factorisation_grid,
    factorisation_residual,
    g_minus,
    g_plus,
    instanton_zero_check,
    spectral_response_integral,
    spectral_response_model,
    symbol_sigma,
    three_factor_identity,
    wh_factors,
    wh_peak_density,
)


@pytest.fixture(scope="module")
def grid():
    yield factorisation_grid()


class TestSymbol:
    def test_values(self):
        assert symbol_sigma(0.0) == 0.0
        assert symbol_sigma(1e-12) == pytest.approx(1e-12, rel=1e-6)
        assert symbol_sigma(-10.0) == pytest.approx(1.0 - math.exp(-10.0), rel=1e-15)


class TestFactors:
    @pytest.mark.parametrize("p", [0.1, -0.1, 1.0, -1.0, 5.0, -5.0, 20.0, -20.0])
    def test_product(self, p):
        value = wh_factors(p)
        assert abs(value.k_plus * value.k_minus - symbol_sigma(p)) <= 1e-10
        assert abs(value.g_plus * value.g_minus - symbol_sigma(p) / abs(p)) <= 1e-10
        assert abs(value.k_minus - value.k_plus.conjugate()) <= 1e-12

    def test_grid(self, grid):
        assert len(grid) == 400
        assert grid["p"].abs().min() >= 1e-3
        assert factorisation_residual(grid) <= 1e-10
        assert grid["conjugate_residual"].max() <= 1e-12
        assert grid["three_factor_residual"].max() <= 1e-11

    def test_grid_exclusion(self):
        frame = factorisation_grid(-1.0, 1.0, 201, exclusion=1e-3)
        assert len(frame) == 200

    def test_normalisation(self):
        value = g_plus(1e-4)
        assert abs(value - 1.0) <= 2e-4
        assert abs(abs(value) - 1.0) <= 1e-4
        assert g_minus(1e-4) == pytest.approx(value.conjugate(), abs=1e-14)

    def test_modulus_expansion(self):
        first = abs(g_plus(0.01)) ** 2
        second = abs(g_plus(0.02)) ** 2
        assert first == pytest.approx(1.0 - 0.005, abs=1e-4)
        assert (second - first) / 0.01 == pytest.approx(-0.5, abs=0.01)

    def test_square_root_onset(self):
        value = wh_factors(1e-6)
        assert abs(value.k_plus) / math.sqrt(1e-6) == pytest.approx(1.0, abs=1e-6)

    def test_analytic_half_planes(self):
        # G+ is regular in the upper half plane, G- in the lower one
        assert cmath.isfinite(g_plus(3.0j))
        assert cmath.isfinite(g_minus(-3.0j))
        mirrored = g_plus(0.5 + 2.0j).conjugate()
        assert g_minus(0.5 - 2.0j) == pytest.approx(mirrored, abs=1e-13)

    @pytest.mark.parametrize(
        "func, z", [(g_plus, 0.0), (g_plus, -2.0j), (g_minus, 0.0), (g_minus, 1.5j)]
    )
    def test_branch_cuts(self, func, z):
        with pytest.raises(BranchCutError):
            func(z)

    @pytest.mark.parametrize("z", [0.0, -1.0j, 1.0j])
    def test_factors_on_cut(self, z):
        with pytest.raises(SpecialFunctionDomainError):
            wh_factors(z)

    @pytest.mark.parametrize("p", [0.5, 3.0, -12.0])
    def test_three_factor_identity(self, p):
        gamma_form, sigma = three_factor_identity(p)
        assert gamma_form == pytest.approx(sigma, rel=1e-11)


class TestPeakDensity:
    def test_small_interval(self):
        assert wh_peak_density(0.5) == pytest.approx(1.0 / math.pi, rel=1e-13)

    def test_large_q(self):
        q_half_width = 1e4
        leading = (math.log(2.0 * q_half_width) + EULER_GAMMA) / math.pi
        difference = wh_peak_density(q_half_width) - leading
        assert difference == pytest.approx(1.0 / (4.0 * math.pi * q_half_width), rel=1e-3)

    def test_domain(self):
        with pytest.raises(ValueError):
            wh_peak_density(0.0)

    @pytest.mark.slow
    def test_against_nystrom(self, ceff_outputs):
        differences = [
            ceff_outputs[q].rho0 - wh_peak_density(q) for q in (50.0, 100.0, 300.0)
        ]
        assert differences[1] == pytest.approx(3.8e-3, abs=1e-3)
        for q_half_width, difference in zip((50.0, 100.0, 300.0), differences):
            assert abs(difference) <= 10.0 / q_half_width
        assert differences[0] > differences[1] > differences[2] > 0

    def test_spectral_response(self):
        assert spectral_response_model(0.0, 10.0) == 0.0
        assert spectral_response_model(1.0, 1e3) == 1.0
        with pytest.raises(ValueError):
            spectral_response_model(-1.0, 10.0)
        with pytest.raises(ValueError):
            spectral_response_model(1.0, 0.0)

    @pytest.mark.parametrize("q_half_width", [1.0, 50.0])
    def test_spectral_response_integral(self, q_half_width):
        assert spectral_response_integral(q_half_width) == pytest.approx(
            wh_peak_density(q_half_width), abs=1e-8
        )


class TestInstanton:
    def test_zero(self):
        residual, action = instanton_zero_check()
        assert residual <= 1e-14
        assert action == INSTANTON_ACTION == pytest.approx(2.0 * math.pi)

    def test_period_and_half_period(self):
        assert instanton_zero_check(complex(0.0, 4.0 * math.pi))[0] <= 1e-14
        assert instanton_zero_check(complex(0.0, math.pi))[0] == pytest.approx(2.0)
