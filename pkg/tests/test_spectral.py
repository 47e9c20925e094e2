"""Tests for the spectrum of the truncated kernel"""

import math

import numpy as np
import pytest

from lnlslab.exceptions import FitRefusedError
from lnlslab.quadrature.gauss_legendre import rule_for
from lnlslab.solver.nystrom import TWO_PI
from lnlslab.spectral.kernel_spectrum import (
    compensated_gap_fit,
    counting_check,
    eigen_spectrum,
    fredholm_analysis,
    gap_density_link,
    gap_ratio,
    sweep_spectra,
    symmetrized_kernel,
    szego_ratio,
    trace_check,
    truncation_audit,
    weighted_kernel,
)


@pytest.fixture(scope="module")
def spectrum_100():
    yield eigen_spectrum(100.0)


@pytest.fixture(scope="module")
def spectrum_200():
    yield eigen_spectrum(200.0)


class TestKernelMatrices:
    def test_symmetrized_kernel_is_symmetric(self):
        matrix = symmetrized_kernel(rule_for(3.0, 40))
        np.testing.assert_array_equal(matrix, matrix.T)

    def test_same_spectrum_as_weighted_kernel(self):
        rule = rule_for(3.0, 40)
        symmetric = np.sort(np.linalg.eigvalsh(symmetrized_kernel(rule)))
        general = np.sort(np.linalg.eigvals(weighted_kernel(rule)).real)
        np.testing.assert_allclose(symmetric, general, atol=1e-12)


class TestEigenSpectrum:
    @pytest.mark.parametrize("q_half_width", [5.0, 50.0])
    def test_trace(self, q_half_width):
        assert trace_check(eigen_spectrum(q_half_width)) <= 1e-10

    def test_ordering(self, spectrum_100):
        eigenvalues = spectrum_100.eigenvalues
        assert eigenvalues.size == spectrum_100.n_points
        assert np.all(np.diff(eigenvalues) <= 0)
        assert eigenvalues[0] < TWO_PI
        assert eigenvalues[-1] > -1e-12
        np.testing.assert_array_equal(spectrum_100.gaps, TWO_PI - eigenvalues)
        assert spectrum_100.leading.size == 4

    def test_summary(self, spectrum_100):
        row = spectrum_100.summary()
        assert list(row)[:6] == [
            "q_half_width",
            "n_points",
            "lambda_0",
            "lambda_1",
            "lambda_2",
            "lambda_3",
        ]
        assert row["gap_ratio"] == pytest.approx(row["delta_1"] / row["delta_0"])
        assert row["trace_residual"] <= 1e-10

    def test_top_k(self):
        assert eigen_spectrum(2.0, n_points=30, top_k=30).leading.size == 30
        with pytest.raises(ValueError):
            eigen_spectrum(2.0, n_points=30, top_k=0)
        with pytest.raises(ValueError):
            eigen_spectrum(2.0, n_points=30, top_k=31)

    def test_leading_eigenvalue_grows_with_q(self):
        spectra = sweep_spectra([20.0, 5.0, 50.0, 10.0], top_k=1)
        leading = [spec.eigenvalues[0] for spec in spectra]
        assert [spec.q_half_width for spec in spectra] == [5.0, 10.0, 20.0, 50.0]
        assert all(later > earlier for earlier, later in zip(leading, leading[1:]))

    def test_compensated_gap_is_bounded(self):
        for spec in sweep_spectra([20.0, 50.0, 100.0], top_k=1):
            assert 1.0 <= spec.q_half_width * spec.gaps[0] <= 20.0

    def test_log_fredholm_decreases(self):
        spectra = sweep_spectra([5.0, 10.0, 20.0], top_k=1)
        values = [spec.log_fredholm for spec in spectra]
        assert values[0] < 0
        assert values[2] < values[1] < values[0]

    def test_truncation_audit(self):
        assert truncation_audit(eigen_spectrum(50.0)) < 1e-10


class TestCounting:
    def test_half_level(self, spectrum_100):
        count, prediction = counting_check(spectrum_100, 0.5)
        assert prediction == pytest.approx(200.0 / math.pi * math.log(2.0))
        assert abs(count - prediction) / prediction <= 0.1

    def test_near_critical_level_is_nearly_empty(self, spectrum_100):
        count, _ = counting_check(spectrum_100, 0.999)
        assert count <= 2

    @pytest.mark.slow
    def test_near_critical_level(self, spectrum_200):
        count, prediction = counting_check(spectrum_200, 0.9)
        assert abs(count - prediction) / prediction <= 0.15

    @pytest.mark.parametrize("mu", [0.0, 1.0, -0.5])
    def test_invalid_level(self, spectrum_100, mu):
        with pytest.raises(ValueError):
            counting_check(spectrum_100, mu)


@pytest.mark.slow
class TestGapAsymptotics:
    def test_gap_ratio(self):
        assert gap_ratio(300.0) == pytest.approx(2.37, abs=0.1)

    def test_compensated_gap_fit(self):
        fit = compensated_gap_fit([20.0, 50.0, 100.0, 200.0, 300.0])
        assert fit.basis_labels == ["1", "log Q"]
        assert fit.residual_max <= 0.1
        assert fit.coefficient("1") == pytest.approx(6.43, abs=0.3)
        assert fit.coefficient("log Q") == pytest.approx(0.15, abs=0.05)

    def test_szego_ratio(self, spectrum_200):
        assert szego_ratio(spectrum_200) == pytest.approx(-math.pi / 6.0, abs=0.02)


class TestFits:
    def test_compensated_gap_fit_refused(self):
        spectra = sweep_spectra([5.0, 10.0, 20.0], top_k=1)
        with pytest.raises(FitRefusedError):
            compensated_gap_fit([], spectra=spectra)
        spectra = sweep_spectra([5.0, 6.0, 8.0, 10.0], top_k=1)
        with pytest.raises(FitRefusedError):
            compensated_gap_fit([], spectra=spectra)

    def test_fredholm_analysis(self):
        fit, szego_slope, alpha_fh = fredholm_analysis([5.0, 10.0, 20.0, 30.0, 50.0])
        assert fit.basis_labels == ["Q", "log Q", "1"]
        assert szego_slope == pytest.approx(-math.pi / 6.0, abs=0.1)
        assert alpha_fh == fit.coefficient("log Q")

    def test_fredholm_analysis_refused(self):
        with pytest.raises(FitRefusedError):
            fredholm_analysis([5.0, 10.0, 20.0, 30.0])


class TestGapDensityLink:
    def test_both_positive(self):
        measured, predicted = gap_density_link(50.0)
        assert measured > 0
        assert predicted > 0

    def test_domain(self):
        with pytest.raises(ValueError):
            gap_density_link(20.0)
