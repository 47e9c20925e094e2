"""Perturbative coefficients of the subtracted peak density.

After removing log(Q)/pi + C*, the remainder is fitted to

    R0(Q) = sum_{n=1}^{n_max} (a_n0 + a_n1 log Q) / Q^n

by truncated-SVD least squares. High orders are poorly determined, so every
coefficient carries a stability flag from a refit on a nested Q range.
"""

# pylint: disable=logging-fstring-interpolation

import logging
import math
from typing import Optional, Sequence

import numpy as np

from lnlslab.asymptotics.fits import least_squares_fit, nested_range_spread, power_basis
from lnlslab.asymptotics.records import FitResult, SweepRecord, sort_records
from lnlslab.configuration.configuration import CONFIG
from lnlslab.quadrature.gauss_legendre import uncapped_n
from lnlslab.solver.nystrom import solve_rescaled
from lnlslab.specfun.functions import C_STAR
from lnlslab.utils.general import map_over_q

logger = logging.getLogger(__name__)

MIN_RECORDS = 40
TARGET_RATIO = 1.0 / (2.0 * math.pi)


def subtracted_remainder(records: Sequence[SweepRecord]) -> list[float]:
    """rho0 - log(Q)/pi - C* for each record, in ascending Q"""
    return [record.c_eff - C_STAR for record in sort_records(records)]


def resurgence_fit(
    records: Sequence[SweepRecord],
    n_max: Optional[int] = None,
    svd_threshold: Optional[float] = None,
    min_records: int = MIN_RECORDS,
) -> FitResult:
    """Fits the subtracted remainder to n_max coefficient pairs

    Args:
        records (Sequence[SweepRecord]): sweep records, at least min_records
        n_max (Optional[int], optional): number of inverse powers, configured default
        svd_threshold (Optional[float], optional): relative SVD cut, configured default
        min_records (int, optional): smallest accepted sweep. Defaults to 40.

    Raises:
        ValueError: fewer than min_records records

    Returns:
        FitResult: basis 1/Q^n, log Q/Q^n with spread and stability per coefficient
    """
    n_max = CONFIG.resurgence_n_max if n_max is None else n_max
    threshold = CONFIG.svd_threshold if svd_threshold is None else svd_threshold
    ordered = sort_records(records)
    if len(ordered) < min_records:
        raise ValueError(
            f"The coefficient fit needs at least {min_records} records, got {len(ordered)}"
        )
    q_values = [record.q_half_width for record in ordered]
    remainder = subtracted_remainder(ordered)
    basis = power_basis(n_max)
    fit = least_squares_fit(q_values, remainder, basis, svd_threshold=threshold)
    fit = nested_range_spread(q_values, remainder, basis, fit, svd_threshold=threshold)
    logger.info(
        f"coefficient fit n_max={n_max}: {fit.kept_modes} of {len(basis)} modes kept, "
        f"residual {fit.residual_max:.2e}"
    )
    return fit


def leading_coefficients(fit: FitResult) -> list[float]:
    """a_n0 for n = 1..n_max, the coefficients of 1/Q^n"""
    n_max = len(fit.basis_labels) // 2
    return [fit.coefficient(f"1/Q^{n}") for n in range(1, n_max + 1)]


def ratio_test(coefficients: Sequence[float]) -> list[float]:
    """-a_(n+1)0 / (n a_n0) for n = 1..len - 1, to be compared with 1/(2 pi)

    Args:
        coefficients (Sequence[float]): a_10, a_20, ... at least three

    Raises:
        ValueError: fewer than three coefficients, or a zero coefficient

    Returns:
        list[float]: the ratios
    """
    if len(coefficients) < 3:
        raise ValueError(f"The ratio test needs three coefficients, got {len(coefficients)}")
    values = np.asarray(coefficients, dtype=np.float64)
    if np.any(values[:-1] == 0):
        raise ValueError("The ratio test is undefined for a vanishing coefficient")
    n = np.arange(1, values.size, dtype=np.float64)
    return [float(r) for r in -values[1:] / (n * values[:-1])]


def coefficient_grid(
    q_min: Optional[float] = None,
    q_max: Optional[float] = None,
    n_records: Optional[int] = None,
) -> list[float]:
    """Log-spaced Q grid of the coefficient fit, configured defaults"""
    low, high = CONFIG.resurgence_q_range
    low = low if q_min is None else q_min
    high = high if q_max is None else q_max
    count = CONFIG.resurgence_n_records if n_records is None else n_records
    return [float(q) for q in np.geomspace(low, high, count)]


def _uncapped_record(q_half_width: float) -> SweepRecord:
    return SweepRecord.from_output(
        solve_rescaled(q_half_width, n_points=uncapped_n(q_half_width))
    )


def coefficient_records(
    q_values: Optional[Sequence[float]] = None, workers: Optional[int] = None
) -> list[SweepRecord]:
    """Solves the coefficient grid with N(Q) = round(n_slope Q) + n_offset, no cap.

    A capped rule at large Q leaves a quadrature error in rho0 that swamps
    the higher orders of the fit.

    Args:
        q_values (Optional[Sequence[float]], optional): half-widths,
            coefficient_grid() by default
        workers (Optional[int], optional): pool size, configured default

    Returns:
        list[SweepRecord]: one record per Q, ascending
    """
    q_list = coefficient_grid() if q_values is None else list(q_values)
    if not q_list:
        raise ValueError("At least one value of Q is required.")
    workers = CONFIG.workers if workers is None else workers
    logger.info(
        f"Solving {len(q_list)} values of Q for the coefficient fit, "
        f"largest N = {uncapped_n(max(q_list))}"
    )
    return map_over_q(_uncapped_record, q_list, workers)
