"""Least-squares and Richardson extraction of the asymptotic constants"""

# pylint: disable=logging-fstring-interpolation

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
import numpy.typing as npt
from dataclasses_json import dataclass_json
from scipy.linalg import svd  # type: ignore

from lnlslab.asymptotics.records import (
    FitResult,
    RichardsonResult,
    SweepRecord,
    sort_records,
)
from lnlslab.exceptions import FitRefusedError
from lnlslab.solver.sweep import sweep_solve
from lnlslab.specfun.functions import C_STAR

logger = logging.getLogger(__name__)

FIT_CONDITION_LIMIT = 1e10
STABILITY_SPREAD = 0.5
INVERSE_TWO_PI = 1.0 / (2.0 * math.pi)

Array = npt.NDArray[np.float64]
BasisFunction = tuple[str, Callable[[Array], Array]]

CONSTANT: BasisFunction = ("1", np.ones_like)
LINEAR: BasisFunction = ("Q", lambda q: q)
LOG: BasisFunction = ("log Q", np.log)
LOG_OVER_Q: BasisFunction = ("log Q/Q", lambda q: np.log(q) / q)
INVERSE: BasisFunction = ("1/Q", lambda q: 1.0 / q)


def power_basis(n_max: int) -> list[BasisFunction]:
    """1/Q^n and log Q/Q^n for n = 1..n_max, interleaved"""
    basis: list[BasisFunction] = []
    for n in range(1, n_max + 1):
        basis.append((f"1/Q^{n}", lambda q, n=n: q ** (-float(n))))
        basis.append((f"log Q/Q^{n}", lambda q, n=n: np.log(q) * q ** (-float(n))))
    return basis


def least_squares_fit(
    q_values: Sequence[float],
    targets: Sequence[float],
    basis: Sequence[BasisFunction],
    condition_limit: float = FIT_CONDITION_LIMIT,
    svd_threshold: Optional[float] = None,
) -> FitResult:
    """SVD least squares of targets against basis functions of Q.

    Columns are scaled to unit norm before the SVD. Without svd_threshold the
    fit is refused when the scaled design is worse conditioned than
    condition_limit; with it, modes below svd_threshold times the largest
    singular value are dropped instead.

    Args:
        q_values (Sequence[float]): abscissae
        targets (Sequence[float]): data
        basis (Sequence[BasisFunction]): (label, function) pairs
        condition_limit (float, optional): refusal limit. Defaults to 1e10.
        svd_threshold (Optional[float], optional): relative truncation threshold

    Raises:
        FitRefusedError: too few points, ill-conditioned design or nothing kept

    Returns:
        FitResult: the fit
    """
    q = np.asarray(q_values, dtype=np.float64)
    y = np.asarray(targets, dtype=np.float64)
    if q.size < len(basis):
        raise FitRefusedError(
            f"{q.size} points cannot determine {len(basis)} coefficients"
        )
    design = np.column_stack([func(q) for _, func in basis])
    norms = np.linalg.norm(design, axis=0)
    if np.any(norms == 0):
        raise FitRefusedError("a basis column vanishes on the data")
    left, singular, right_t = svd(design / norms, full_matrices=False)
    condition = (
        math.inf if singular[-1] == 0 else float(singular[0] / singular[-1])
    )

    if svd_threshold is None:
        if condition > condition_limit:
            raise FitRefusedError(
                f"design condition exceeds {condition_limit:.1e}", condition
            )
        keep = np.ones_like(singular, dtype=bool)
    else:
        keep = singular >= svd_threshold * singular[0]
        if not np.any(keep) or singular[0] == 0:
            raise FitRefusedError(
                "every singular value is below the truncation threshold", condition
            )

    scaled = right_t[keep].T @ ((left[:, keep].T @ y) / singular[keep])
    coefficients = scaled / norms
    residual = y - design @ coefficients
    logger.debug(
        f"fit on {q.size} points, basis {[label for label, _ in basis]}: "
        f"condition {condition:.3e}, kept {int(np.sum(keep))} modes"
    )
    return FitResult(
        basis_labels=[label for label, _ in basis],
        coefficients=[float(c) for c in coefficients],
        residual_max=float(np.max(np.abs(residual))),
        condition_estimate=max(condition, 1.0),
        fit_range=(float(np.min(q)), float(np.max(q))),
        kept_modes=int(np.sum(keep)),
    )


def nested_range_spread(
    q_values: Sequence[float],
    targets: Sequence[float],
    basis: Sequence[BasisFunction],
    full_fit: FitResult,
    svd_threshold: Optional[float] = None,
) -> FitResult:
    """Refits on the upper three quarters of the Q range and records the spread.

    Args:
        q_values (Sequence[float]): abscissae of the full fit
        targets (Sequence[float]): data of the full fit
        basis (Sequence[BasisFunction]): basis of the full fit
        full_fit (FitResult): the fit over every point
        svd_threshold (Optional[float], optional): as for the full fit

    Returns:
        FitResult: full_fit with spread and stable filled in
    """
    q = np.asarray(q_values, dtype=np.float64)
    y = np.asarray(targets, dtype=np.float64)
    order = np.argsort(q)
    start = len(order) // 4
    inner = order[start:]
    nested = least_squares_fit(
        q[inner], y[inner], basis, math.inf, svd_threshold=svd_threshold
    )
    spread = []
    for full_value, nested_value in zip(full_fit.coefficients, nested.coefficients):
        scale = abs(full_value) if full_value != 0 else 1.0
        spread.append(abs(full_value - nested_value) / scale)
    full_fit.spread = spread
    full_fit.stable = [value < STABILITY_SPREAD for value in spread]
    return full_fit


def richardson3(samples: Sequence[tuple[float, float]]) -> RichardsonResult:
    """Exact interpolation of C + a1 log(Q)/Q + a0/Q through three points

    Args:
        samples (Sequence[tuple[float, float]]): three (Q, C_eff) pairs, ascending Q

    Raises:
        ValueError: not three distinct ascending positive Q values

    Returns:
        RichardsonResult: (C, a1, a0)
    """
    if len(samples) != 3:
        raise ValueError(f"Richardson extrapolation needs three samples, got {len(samples)}")
    q = np.array([sample[0] for sample in samples], dtype=np.float64)
    c_eff = np.array([sample[1] for sample in samples], dtype=np.float64)
    if np.any(q <= 0) or not np.all(np.diff(q) > 0):
        raise ValueError(f"The Q triple {tuple(q)} must be positive and strictly ascending")
    system = np.column_stack([np.ones(3), np.log(q) / q, 1.0 / q])
    try:
        c_value, a1, a0 = np.linalg.solve(system, c_eff)
    except np.linalg.LinAlgError as exc:
        raise ValueError(f"The Q triple {tuple(q)} gives a singular system") from exc
    return RichardsonResult(
        c_extrapolated=float(c_value),
        a1=float(a1),
        a0=float(a0),
        q_triple=(float(q[0]), float(q[1]), float(q[2])),
    )


def constrained_fit(
    records: Sequence[SweepRecord], c_fixed: float = C_STAR
) -> FitResult:
    """C fixed, (a1, a0) fitted: C_eff - c_fixed against {log Q/Q, 1/Q}"""
    ordered = sort_records(records)
    q = [record.q_half_width for record in ordered]
    residual = [record.c_eff - c_fixed for record in ordered]
    return least_squares_fit(q, residual, [LOG_OVER_Q, INVERSE])


@dataclass_json
@dataclass
class ConstantReport:
    """C_eff rows, the best Richardson triples and the fit with C = C*"""

    rows: list[dict] = field(default_factory=list)
    richardson: list[RichardsonResult] = field(default_factory=list)
    constrained: Optional[FitResult] = None
    c_star: float = C_STAR


def constant_c_report(
    q_values: Sequence[float],
    records: Optional[Sequence[SweepRecord]] = None,
    n_best: int = 3,
    workers: Optional[int] = None,
) -> ConstantReport:
    """Tabulates C_eff(Q) and its extrapolations towards C*

    Args:
        q_values (Sequence[float]): half-widths, at least three
        records (Optional[Sequence[SweepRecord]], optional): precomputed sweep,
          solved here when absent
        n_best (int, optional): number of Richardson triples reported. Defaults to 3.
        workers (Optional[int], optional): sweep pool size

    Raises:
        ValueError: fewer than three values of Q

    Returns:
        ConstantReport: the report
    """
    if records is None:
        records = [SweepRecord.from_output(out) for out in sweep_solve(q_values, workers=workers)]
    ordered = sort_records(records)
    if len(ordered) < 3:
        raise ValueError("The constant report needs at least three values of Q")

    rows = [
        {
            "q_half_width": record.q_half_width,
            "c_eff": record.c_eff,
            "deviation": record.c_eff - C_STAR,
        }
        for record in ordered
    ]
    triples = [
        richardson3([(r.q_half_width, r.c_eff) for r in triple])
        for triple in itertools.combinations(ordered, 3)
    ]
    triples.sort(key=lambda result: abs(result.c_extrapolated - C_STAR))
    return ConstantReport(
        rows=rows,
        richardson=triples[:n_best],
        constrained=constrained_fit(ordered),
    )


def density_fit(
    records: Sequence[SweepRecord], fix_a: Optional[float] = None
) -> FitResult:
    """Fits D(Q) - Q = a log Q + b (+ c log Q/Q + d/Q when a is fixed)

    Args:
        records (Sequence[SweepRecord]): at least six, spanning a factor 10 in Q
        fix_a (Optional[float], optional): fixed a, e.g. 1/(2 pi); free when absent

    Raises:
        FitRefusedError: too few records, too narrow a range or ill-conditioned design

    Returns:
        FitResult: basis ["log Q", "1"] or ["1", "log Q/Q", "1/Q"]
    """
    ordered = sort_records(records)
    if len(ordered) < 6:
        raise FitRefusedError(f"the density fit needs six records, got {len(ordered)}")
    q = np.array([record.q_half_width for record in ordered])
    if q[-1] < 10.0 * q[0]:
        raise FitRefusedError(
            f"Q spans [{q[0]:g}, {q[-1]:g}], less than a factor of ten"
        )
    excess = np.array([record.total_density for record in ordered]) - q
    if fix_a is None:
        return least_squares_fit(q, excess, [LOG, CONSTANT])
    return least_squares_fit(q, excess - fix_a * np.log(q), [CONSTANT, LOG_OVER_Q, INVERSE])


def density_table(
    q_values: Sequence[float],
    records: Optional[Sequence[SweepRecord]] = None,
    workers: Optional[int] = None,
) -> list[dict]:
    """Rows (Q, D - Q, (D - Q)/log Q)

    Args:
        q_values (Sequence[float]): half-widths, each > 1
        records (Optional[Sequence[SweepRecord]], optional): precomputed sweep
        workers (Optional[int], optional): sweep pool size

    Returns:
        list[dict]: one row per Q, ascending
    """
    if records is None:
        records = [SweepRecord.from_output(out) for out in sweep_solve(q_values, workers=workers)]
    rows = []
    for record in sort_records(records):
        excess = record.total_density - record.q_half_width
        rows.append(
            {
                "q_half_width": record.q_half_width,
                "excess": excess,
                "ratio": excess / math.log(record.q_half_width),
            }
        )
    return rows
