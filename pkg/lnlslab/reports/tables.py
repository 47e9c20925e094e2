"""Reproduction of the reference tables shipped under etc/golden"""

# pylint: disable=logging-fstring-interpolation

import logging
from typing import Any, Callable, Optional

import pandas as pd

from lnlslab.asymptotics.fits import density_table, richardson3
from lnlslab.asymptotics.records import SweepRecord
from lnlslab.asymptotics.resurgence import (
    coefficient_records,
    leading_coefficients,
    resurgence_fit,
)
from lnlslab.configuration.configuration import CONFIG
from lnlslab.solver.sweep import sweep_solve
from lnlslab.specfun.functions import C_STAR
from lnlslab.spectral.kernel_spectrum import sweep_spectra
from lnlslab.utils.df_utils import compare_with_golden
from lnlslab.utils.general import timed
from lnlslab.utils.io_utils import load_golden

logger = logging.getLogger(__name__)


def _golden_q(golden: dict[str, Any], columns: tuple[str, ...]) -> list[float]:
    """Every distinct Q named in the key columns of a golden table"""
    return sorted({float(row[column]) for row in golden["rows"] for column in columns})


def _records(q_values: list[float], workers: Optional[int]) -> list[SweepRecord]:
    return [SweepRecord.from_output(out) for out in sweep_solve(q_values, workers=workers)]


def ceff_table(golden: dict[str, Any], workers: Optional[int] = None) -> pd.DataFrame:
    """C_eff at the golden half-widths with the default rule"""
    outputs = sweep_solve(_golden_q(golden, ("q_half_width",)), workers=workers)
    return pd.DataFrame(
        [
            {
                "q_half_width": out.q_half_width,
                "n_points": out.n_points,
                "c_eff": out.c_eff,
                "deviation": out.c_eff - C_STAR,
                "capped": out.capped,
            }
            for out in outputs
        ]
    )


def richardson_table(golden: dict[str, Any], workers: Optional[int] = None) -> pd.DataFrame:
    """Three-point extrapolations for every golden triple, from one shared sweep"""
    records = _records(_golden_q(golden, ("q1", "q2", "q3")), workers)
    c_eff = {record.q_half_width: record.c_eff for record in records}
    rows = []
    for row in golden["rows"]:
        triple = [float(row[column]) for column in ("q1", "q2", "q3")]
        result = richardson3([(q, c_eff[q]) for q in triple])
        rows.append(
            {
                "q1": triple[0],
                "q2": triple[1],
                "q3": triple[2],
                "c_extrapolated": result.c_extrapolated,
                "a1": result.a1,
                "a0": result.a0,
                "deviation": result.c_extrapolated - C_STAR,
            }
        )
    return pd.DataFrame(rows)


def eigenvalue_table(golden: dict[str, Any], workers: Optional[int] = None) -> pd.DataFrame:
    """Leading eigenvalues and gaps at the golden half-widths"""
    spectra = sweep_spectra(_golden_q(golden, ("q_half_width",)), workers=workers)
    return pd.DataFrame([spec.summary() for spec in spectra])


def density_excess_table(
    golden: dict[str, Any], workers: Optional[int] = None
) -> pd.DataFrame:
    """D(Q) - Q and its ratio to log Q at the golden half-widths"""
    q_values = _golden_q(golden, ("q_half_width",))
    return pd.DataFrame(density_table(q_values, workers=workers))


def coefficient_table(
    golden: dict[str, Any], workers: Optional[int] = None
) -> pd.DataFrame:
    """a_n0 from the uncapped coefficient sweep, with range-stability flags"""
    fit = resurgence_fit(coefficient_records(workers=workers))
    rows = []
    for n, value in enumerate(leading_coefficients(fit), start=1):
        index = fit.basis_labels.index(f"1/Q^{n}")
        stable = fit.stable[index] if fit.stable else False
        rows.append(
            {
                "n": n,
                "a_n0": value,
                "spread": fit.spread[index] if fit.spread else float("nan"),
                "stable": stable,
                "status": "stable" if stable else "unstable",
            }
        )
    return pd.DataFrame(rows)


TABLE_BUILDERS: dict[str, Callable[[dict[str, Any], Optional[int]], pd.DataFrame]] = {
    "ceff": ceff_table,
    "richardson": richardson_table,
    "eigenvalues": eigenvalue_table,
    "density": density_excess_table,
    "coefficients": coefficient_table,
}


@timed
def build_table(
    name: str, workers: Optional[int] = None
) -> tuple[pd.DataFrame, pd.DataFrame]:
    """Computes a reference table and compares it cell by cell with its golden file

    Args:
        name (str): one of ceff, richardson, eigenvalues, density, coefficients
        workers (Optional[int], optional): sweep pool size, configured default

    Raises:
        ValueError: unknown table name

    Returns:
        tuple[pd.DataFrame, pd.DataFrame]: (computed table, comparison)
    """
    golden = load_golden(name)
    computed = TABLE_BUILDERS[name](golden, workers)
    comparison = compare_with_golden(computed, golden, scale=CONFIG.tolerance_scale)
    failed = int((~comparison["passed"]).sum())
    if failed:
        logger.warning(f"Table {name}: {failed} of {len(comparison)} cells outside tolerance")
    else:
        logger.info(f"Table {name}: all {len(comparison)} cells within tolerance")
    return computed, comparison
