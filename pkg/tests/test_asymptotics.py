"""Tests for the sweep records, the constant extraction and the coefficient fits"""

import math

import numpy as np
import pandas as pd
import pytest

from lnlslab.asymptotics.fits import (
    CONSTANT,
    LOG,
    constant_c_report,
    constrained_fit,
    density_fit,
    density_table,
    least_squares_fit,
    richardson3,
)
from lnlslab.asymptotics.records import (
    SWEEP_COLUMNS,
    FitResult,
    SweepRecord,
    records_from_frame,
    records_to_frame,
    sort_records,
)
from lnlslab.asymptotics.resurgence import (
    TARGET_RATIO,
    coefficient_grid,
    coefficient_records,
    leading_coefficients,
    ratio_test,
    resurgence_fit,
    subtracted_remainder,
)
from lnlslab.exceptions import FitRefusedError
from lnlslab.quadrature.gauss_legendre import is_capped
from lnlslab.solver.nystrom import solve_rescaled
from lnlslab.specfun.functions import C_STAR

SYNTHETIC_COEFFICIENTS = {
    "1/Q^1": 0.14,
    "log Q/Q^1": 0.05,
    "1/Q^2": -0.3,
    "log Q/Q^2": 0.1,
    "1/Q^3": 0.5,
    "log Q/Q^3": -0.2,
}


def synthetic_records(n_max, q_values=None):
    """Records whose subtracted remainder is an exact n_max-term expansion"""
    if q_values is None:
        q_values = coefficient_grid()
    records = []
    for q in q_values:
        remainder = 0.0
        for n in range(1, n_max + 1):
            remainder += (
                SYNTHETIC_COEFFICIENTS[f"1/Q^{n}"]
                + SYNTHETIC_COEFFICIENTS[f"log Q/Q^{n}"] * math.log(q)
            ) / q**n
        c_eff = C_STAR + remainder
        records.append(
            SweepRecord(q, c_eff + math.log(q) / math.pi, math.nan, math.nan, c_eff)
        )
    return records


class TestRecords:
    def test_from_values(self):
        record = SweepRecord.from_values(100.0, 1.874037)
        assert record.c_eff == pytest.approx(1.874037 - math.log(100.0) / math.pi, abs=1e-14)
        assert math.isnan(record.total_density)

    def test_sort_and_duplicates(self):
        records = [SweepRecord.from_values(q, 1.0) for q in (3.0, 1.0, 2.0)]
        assert [r.q_half_width for r in sort_records(records)] == [1.0, 2.0, 3.0]
        with pytest.raises(ValueError):
            sort_records(records + [SweepRecord.from_values(2.0, 1.5)])

    def test_frame_round_trip(self):
        records = [
            SweepRecord.from_values(q, 1.0 + q / 100.0, total_density=q + 0.2, inner_energy=1.0)
            for q in (30.0, 10.0, 20.0)
        ]
        frame = records_to_frame(records)
        assert list(frame.columns) == SWEEP_COLUMNS
        assert list(frame["q_half_width"]) == [10.0, 20.0, 30.0]
        assert records_from_frame(frame) == sort_records(records)

    def test_frame_recomputes_c_eff(self):
        frame = pd.DataFrame({"q_half_width": [10.0], "rho0": [1.2], "c_eff": [99.0]})
        (record,) = records_from_frame(frame)
        assert record.c_eff == pytest.approx(1.2 - math.log(10.0) / math.pi)
        assert math.isnan(record.inner_energy)

    def test_frame_missing_columns(self):
        with pytest.raises(ValueError):
            records_from_frame(pd.DataFrame({"q_half_width": [10.0]}))

    def test_fit_result_coefficient(self):
        fit = FitResult(
            basis_labels=["1", "log Q"],
            coefficients=[0.3, 0.1],
            residual_max=0.0,
            condition_estimate=1.0,
            fit_range=(1.0, 2.0),
        )
        assert fit.coefficient("log Q") == 0.1
        with pytest.raises(KeyError):
            fit.coefficient("1/Q")


class TestRichardson:
    def test_constant_data(self):
        result = richardson3([(10.0, 0.4), (20.0, 0.4), (40.0, 0.4)])
        assert result.c_extrapolated == pytest.approx(0.4, abs=1e-12)
        assert result.a1 == pytest.approx(0.0, abs=1e-10)
        assert result.a0 == pytest.approx(0.0, abs=1e-10)
        assert result.q_triple == (10.0, 20.0, 40.0)

    def test_interpolates_inputs(self):
        samples = [(50.0, 0.411246), (100.0, 0.408166), (200.0, 0.406446)]
        result = richardson3(samples)
        for q, c_eff in samples:
            model = result.c_extrapolated + result.a1 * math.log(q) / q + result.a0 / q
            assert model == pytest.approx(c_eff, abs=1e-12)

    @pytest.mark.parametrize(
        "samples",
        [
            [(10.0, 0.4), (20.0, 0.4)],
            [(20.0, 0.4), (10.0, 0.4), (40.0, 0.4)],
            [(10.0, 0.4), (10.0, 0.4), (40.0, 0.4)],
            [(-1.0, 0.4), (10.0, 0.4), (40.0, 0.4)],
        ],
    )
    def test_invalid_triples(self, samples):
        with pytest.raises(ValueError):
            richardson3(samples)


@pytest.mark.slow
@pytest.mark.paper_table
class TestConstant:
    def test_richardson_table(self, richardson_records):
        result = richardson3(
            [(q, richardson_records[q].c_eff) for q in (50.0, 100.0, 200.0)]
        )
        assert abs(result.c_extrapolated - 0.404364826) <= 5e-7

    def test_report(self, richardson_records):
        report = constant_c_report([], records=list(richardson_records.values()))
        assert report.c_star == C_STAR
        assert len(report.rows) == len(richardson_records)
        assert report.rows[-1]["deviation"] == pytest.approx(1.45e-3, abs=1e-4)
        assert len(report.richardson) == 3
        assert abs(report.richardson[0].c_extrapolated - C_STAR) <= 1e-6
        assert report.constrained.residual_max <= 1e-5
        assert report.to_dict()["constrained"]["basis_labels"] == ["log Q/Q", "1/Q"]

    def test_remainder_positive_and_decreasing(self, richardson_records):
        upper = [r for q, r in richardson_records.items() if q >= 100.0]
        remainder = subtracted_remainder(upper)
        assert all(value > 0 for value in remainder)
        assert all(later < earlier for earlier, later in zip(remainder, remainder[1:]))


class TestConstrainedFit:
    def test_synthetic(self):
        q_values = [50.0, 80.0, 120.0, 200.0, 300.0]
        records = [
            SweepRecord.from_values(
                q, math.log(q) / math.pi + C_STAR + 0.02 * math.log(q) / q + 0.1 / q
            )
            for q in q_values
        ]
        fit = constrained_fit(records)
        assert fit.coefficient("log Q/Q") == pytest.approx(0.02, abs=1e-9)
        assert fit.coefficient("1/Q") == pytest.approx(0.1, abs=1e-8)
        assert fit.residual_max <= 1e-12


class TestDensity:
    def test_synthetic_free_fit(self):
        records = [
            SweepRecord.from_values(q, 1.0, total_density=q + 0.1 * math.log(q) + 0.3)
            for q in (10.0, 20.0, 40.0, 80.0, 160.0, 320.0)
        ]
        fit = density_fit(records)
        assert fit.basis_labels == ["log Q", "1"]
        assert fit.coefficient("log Q") == pytest.approx(0.1, abs=1e-10)
        assert fit.coefficient("1") == pytest.approx(0.3, abs=1e-10)

    def test_refused(self):
        few = [SweepRecord.from_values(q, 1.0, total_density=q) for q in (10.0, 20.0, 100.0)]
        with pytest.raises(FitRefusedError):
            density_fit(few)
        narrow = [
            SweepRecord.from_values(q, 1.0, total_density=q)
            for q in (10.0, 20.0, 30.0, 40.0, 50.0, 60.0)
        ]
        with pytest.raises(FitRefusedError):
            density_fit(narrow)

    def test_free_fit_absorbs_subleading_terms(self):
        a, b, c, d = 1.0 / (2.0 * math.pi), -0.2173, 0.024, 0.152
        records = [
            SweepRecord.from_values(
                q, 1.0, total_density=q + a * math.log(q) + b + (c * math.log(q) + d) / q
            )
            for q in (20.0, 30.0, 50.0, 70.0, 100.0, 150.0, 200.0, 300.0)
        ]
        # the slope of (c log Q + d)/Q against log Q on this grid is about -0.0036
        assert density_fit(records).coefficient("log Q") == pytest.approx(0.1556, abs=2e-4)
        fixed = density_fit(records, fix_a=a)
        assert fixed.coefficient("1") == pytest.approx(b, abs=1e-10)

    @pytest.mark.slow
    @pytest.mark.paper_table
    def test_free_fit(self, density_records):
        fit = density_fit(density_records)
        assert fit.coefficient("log Q") == pytest.approx(0.1556, abs=5e-4)

    @pytest.mark.slow
    @pytest.mark.paper_table
    def test_fixed_a_fit(self, density_records):
        fit = density_fit(density_records, fix_a=1.0 / (2.0 * math.pi))
        assert fit.basis_labels == ["1", "log Q/Q", "1/Q"]
        assert fit.coefficient("1") == pytest.approx(-0.2173, abs=0.002)
        assert fit.residual_max <= 5e-4

    @pytest.mark.slow
    @pytest.mark.paper_table
    def test_table(self, density_records):
        rows = density_table([], records=density_records)
        assert rows[0]["q_half_width"] == 20.0
        assert rows[0]["excess"] == pytest.approx(0.2706, abs=5e-4)
        assert rows[-1]["ratio"] == pytest.approx(0.1212, abs=5e-4)
        ratios = [row["ratio"] for row in rows]
        assert all(later > earlier for earlier, later in zip(ratios, ratios[1:]))
        assert ratios[-1] < TARGET_RATIO


class TestLeastSquares:
    def test_too_few_points(self):
        with pytest.raises(FitRefusedError):
            least_squares_fit([1.0], [1.0], [CONSTANT, LOG])

    def test_degenerate_design(self):
        q_values = [1.0, 2.0, 3.0]
        with pytest.raises(FitRefusedError) as excinfo:
            least_squares_fit(q_values, [1.0, 1.0, 1.0], [CONSTANT, CONSTANT])
        assert excinfo.value.condition_estimate is not None
        fit = least_squares_fit(
            q_values, [1.0, 1.0, 1.0], [CONSTANT, CONSTANT], svd_threshold=1e-10
        )
        assert fit.kept_modes == 1
        assert sum(fit.coefficients) == pytest.approx(1.0)

    def test_deterministic(self):
        q_values = [2.0, 5.0, 9.0, 20.0]
        targets = [0.3, 0.1, -0.2, 0.7]
        first = least_squares_fit(q_values, targets, [CONSTANT, LOG])
        second = least_squares_fit(q_values, targets, [CONSTANT, LOG])
        assert first == second
        assert first.condition_estimate >= 1.0
        assert first.fit_range == (2.0, 20.0)


class TestResurgence:
    def test_grid(self):
        grid = coefficient_grid()
        assert len(grid) == 60
        assert grid[0] == pytest.approx(20.0)
        assert grid[-1] == pytest.approx(500.0)
        assert np.all(np.diff(grid) > 0)

    def test_configured_grid(self, config, helpers):
        config.load_config(helpers.get_data_path("test_configs", "valid_config.yml"))
        grid = coefficient_grid()
        assert len(grid) == 45
        assert grid[0] == pytest.approx(30.0)
        assert grid[-1] == pytest.approx(400.0)

    def test_two_term_recovery(self):
        fit = resurgence_fit(synthetic_records(2), n_max=2)
        assert fit.basis_labels == ["1/Q^1", "log Q/Q^1", "1/Q^2", "log Q/Q^2"]
        for label, value in zip(fit.basis_labels, fit.coefficients):
            assert value == pytest.approx(SYNTHETIC_COEFFICIENTS[label], abs=1e-8)
        assert len(fit.spread) == 4
        assert all(fit.stable)

    def test_three_term_recovery(self):
        fit = resurgence_fit(synthetic_records(3), n_max=3)
        assert fit.residual_max <= 1e-12
        for label, value in zip(fit.basis_labels, fit.coefficients):
            assert value == pytest.approx(SYNTHETIC_COEFFICIENTS[label], abs=1e-4)
        assert leading_coefficients(fit) == [
            fit.coefficient("1/Q^1"),
            fit.coefficient("1/Q^2"),
            fit.coefficient("1/Q^3"),
        ]

    def test_too_few_records(self):
        records = synthetic_records(2, coefficient_grid(n_records=39))
        with pytest.raises(ValueError):
            resurgence_fit(records, n_max=2)

    def test_everything_truncated(self):
        records = [SweepRecord.from_values(q, math.log(q) / math.pi + C_STAR) for q in coefficient_grid()]
        with pytest.raises(FitRefusedError):
            resurgence_fit(records, n_max=2, svd_threshold=2.0)

    def test_records_use_uncapped_rule(self, config, helpers):
        config.load_config(helpers.get_data_path("test_configs", "low_cap_config.yml"))
        assert is_capped(20.0)
        record = coefficient_records([20.0], workers=1)[0]
        # round(10 * 20) + 400 nodes, above the cap of 500
        uncapped = solve_rescaled(20.0, n_points=600)
        assert record.rho0 == uncapped.rho0
        assert record.rho0 != solve_rescaled(20.0).rho0
        with pytest.raises(ValueError):
            coefficient_records([])

    @pytest.mark.slow
    def test_solved_sweep_coefficients(self, coefficient_sweep):
        fit = resurgence_fit(coefficient_sweep, n_max=5, svd_threshold=1e-6)
        leading = leading_coefficients(fit)
        assert 0.07 <= leading[0] <= 0.28
        assert [math.copysign(1.0, value) for value in leading[:4]] == [1.0, -1.0, 1.0, -1.0]

    @pytest.mark.slow
    def test_solved_sweep_high_orders_unstable(self, coefficient_sweep):
        fit = resurgence_fit(coefficient_sweep, n_max=6, svd_threshold=1e-6)
        assert not fit.stable[fit.basis_labels.index("1/Q^6")]


class TestRatioTest:
    def test_factorial_model(self):
        coefficients = [
            math.factorial(n) * (-2.0 * math.pi) ** (-n) for n in range(1, 11)
        ]
        ratios = ratio_test(coefficients)
        assert len(ratios) == 9
        for n, value in enumerate(ratios, start=1):
            assert value == pytest.approx(TARGET_RATIO * (n + 1) / n, rel=1e-12)
        assert abs(ratios[-1] - TARGET_RATIO) < abs(ratios[0] - TARGET_RATIO)

    def test_invalid(self):
        with pytest.raises(ValueError):
            ratio_test([0.1, -0.2])
        with pytest.raises(ValueError):
            ratio_test([0.1, 0.0, 0.3])
