"""Spectrum of the Lorentzian kernel truncated to [-Q, Q]"""

# pylint: disable=logging-fstring-interpolation

import logging
import math
from dataclasses import dataclass, field
from functools import partial
from time import perf_counter
from typing import Any, Optional, Sequence

import numpy as np
import numpy.typing as npt
from scipy.linalg import LinAlgError, eigh  # type: ignore

from lnlslab.asymptotics.fits import CONSTANT, LINEAR, LOG, least_squares_fit
from lnlslab.asymptotics.records import FitResult
from lnlslab.configuration.configuration import CONFIG
from lnlslab.exceptions import EigenSolverError, FitRefusedError
from lnlslab.quadrature.gauss_legendre import QuadratureRule, rule_for
from lnlslab.solver.nystrom import TWO_PI, lorentzian, solve_rescaled
from lnlslab.utils.general import map_over_q

logger = logging.getLogger(__name__)

DEFAULT_TOP_K = 4
TRUNCATION_FLOOR = 1e-12


@dataclass
class SpectrumOutput:
    """Full spectrum of the discretised kernel, largest eigenvalue first

    gaps are 2 pi - eigenvalues; log_fredholm is sum log(1 - lambda/2 pi)
    over every eigenvalue.
    """

    q_half_width: float
    n_points: int
    eigenvalues: npt.NDArray[np.float64] = field(repr=False)
    gaps: npt.NDArray[np.float64] = field(repr=False)
    log_fredholm: float
    top_k: int = DEFAULT_TOP_K

    @property
    def leading(self) -> npt.NDArray[np.float64]:
        """the top_k largest eigenvalues"""
        return self.eigenvalues[: self.top_k]

    def summary(self) -> dict[str, Any]:
        """Scalar columns of one spectrum, in output order"""
        row: dict[str, Any] = {
            "q_half_width": self.q_half_width,
            "n_points": self.n_points,
        }
        for index, value in enumerate(self.leading):
            row[f"lambda_{index}"] = float(value)
        row["delta_0"] = float(self.gaps[0])
        row["delta_1"] = float(self.gaps[1]) if self.gaps.size > 1 else math.nan
        row["q_delta_0"] = self.q_half_width * float(self.gaps[0])
        row["gap_ratio"] = row["delta_1"] / row["delta_0"]
        row["log_fredholm"] = self.log_fredholm
        row["szego_ratio"] = szego_ratio(self)
        row["trace_residual"] = trace_check(self)
        return row


def symmetrized_kernel(rule: QuadratureRule) -> npt.NDArray[np.float64]:
    """sqrt(w_i) K(xi_i - xi_j) sqrt(w_j), symmetric bit for bit

    Args:
        rule (QuadratureRule): rule on [-Q, Q]

    Returns:
        npt.NDArray[np.float64]: N x N symmetric matrix
    """
    root = np.sqrt(rule.weights)
    return np.outer(root, root) * lorentzian(rule.nodes[:, None] - rule.nodes[None, :])


def weighted_kernel(rule: QuadratureRule) -> npt.NDArray[np.float64]:
    """K(xi_i - xi_j) w_j, the unsymmetrised Nystrom matrix"""
    return lorentzian(rule.nodes[:, None] - rule.nodes[None, :]) * rule.weights[None, :]


def eigen_spectrum(
    q_half_width: float,
    n_points: Optional[int] = None,
    top_k: int = DEFAULT_TOP_K,
) -> SpectrumOutput:
    """Full dense spectrum of the truncated kernel

    Args:
        q_half_width (float): Q > 0
        n_points (Optional[int], optional): explicit N, else the default rule
        top_k (int, optional): number of leading eigenvalues reported. Defaults to 4.

    Raises:
        ValueError: top_k outside [1, N]
        EigenSolverError: the symmetric eigensolver failed

    Returns:
        SpectrumOutput: eigenvalues in descending order
    """
    rule = rule_for(q_half_width, n_points)
    if not 1 <= top_k <= rule.n_points:
        raise ValueError(f"top_k must lie in [1, {rule.n_points}], got {top_k}")
    start = perf_counter()
    try:
        ascending = eigh(
            symmetrized_kernel(rule), eigvals_only=True, check_finite=False
        )
    except (LinAlgError, ValueError) as exc:
        raise EigenSolverError(q_half_width, str(exc)) from exc
    eigenvalues = np.ascontiguousarray(ascending[::-1])
    log_fredholm = math.fsum(np.log1p(-eigenvalues / TWO_PI))
    logger.debug(
        f"eigh Q={q_half_width} N={rule.n_points}: lambda_0={eigenvalues[0]:.10f}, "
        f"{perf_counter() - start:.3f} s"
    )
    return SpectrumOutput(
        q_half_width=float(q_half_width),
        n_points=rule.n_points,
        eigenvalues=eigenvalues,
        gaps=TWO_PI - eigenvalues,
        log_fredholm=log_fredholm,
        top_k=top_k,
    )


def sweep_spectra(
    q_values: Sequence[float],
    n_points: Optional[int] = None,
    top_k: int = DEFAULT_TOP_K,
    workers: Optional[int] = None,
) -> list[SpectrumOutput]:
    """eigen_spectrum at every Q, ascending"""
    pool = CONFIG.workers if workers is None else workers
    return map_over_q(
        partial(eigen_spectrum, n_points=n_points, top_k=top_k), q_values, pool
    )


def trace_check(spec: SpectrumOutput) -> float:
    """|sum lambda_n - 4Q| / 4Q"""
    expected = 4.0 * spec.q_half_width
    return abs(math.fsum(spec.eigenvalues) - expected) / expected


def counting_check(spec: SpectrumOutput, mu: float) -> tuple[int, float]:
    """#{lambda_n/2 pi > mu} against (2Q/pi) log(1/mu)

    Args:
        spec (SpectrumOutput): a full spectrum
        mu (float): level in (0, 1)

    Raises:
        ValueError: mu outside (0, 1)

    Returns:
        tuple[int, float]: (count, prediction)
    """
    if not 0 < mu < 1:
        raise ValueError(f"mu must lie in (0, 1), got {mu}")
    count = int(np.count_nonzero(spec.eigenvalues / TWO_PI > mu))
    prediction = 2.0 * spec.q_half_width / math.pi * math.log(1.0 / mu)
    return count, prediction


def gap_ratio(q_half_width: float, n_points: Optional[int] = None) -> float:
    """Delta_1 / Delta_0"""
    spec = eigen_spectrum(q_half_width, n_points, top_k=2)
    return float(spec.gaps[1] / spec.gaps[0])


def szego_ratio(spec: SpectrumOutput) -> float:
    """log F(Q) / 2Q, which tends to -pi/6"""
    return spec.log_fredholm / (2.0 * spec.q_half_width)


def truncation_audit(spec: SpectrumOutput, floor: float = TRUNCATION_FLOOR) -> float:
    """|change of log F| from the eigenvalues below floor"""
    small = spec.eigenvalues[spec.eigenvalues < floor]
    return abs(math.fsum(np.log1p(-small / TWO_PI)))


def compensated_gap_fit(
    q_values: Sequence[float],
    spectra: Optional[Sequence[SpectrumOutput]] = None,
    workers: Optional[int] = None,
) -> FitResult:
    """Least squares of Q Delta_0(Q) against {1, log Q}

    Args:
        q_values (Sequence[float]): at least four, spanning a factor ten
        spectra (Optional[Sequence[SpectrumOutput]], optional): precomputed spectra
        workers (Optional[int], optional): sweep pool size

    Raises:
        FitRefusedError: fewer than four Q or too narrow a range

    Returns:
        FitResult: coefficients labelled "1" (c0) and "log Q" (c1)
    """
    if spectra is None:
        spectra = sweep_spectra(q_values, top_k=2, workers=workers)
    q = np.array([spec.q_half_width for spec in spectra])
    if q.size < 4:
        raise FitRefusedError(f"the gap fit needs four values of Q, got {q.size}")
    if q.max() < 10.0 * q.min():
        raise FitRefusedError(
            f"Q spans [{q.min():g}, {q.max():g}], less than a factor of ten"
        )
    compensated = [spec.q_half_width * float(spec.gaps[0]) for spec in spectra]
    return least_squares_fit(q, compensated, [CONSTANT, LOG])


def fredholm_analysis(
    q_values: Sequence[float],
    spectra: Optional[Sequence[SpectrumOutput]] = None,
    workers: Optional[int] = None,
) -> tuple[FitResult, float, float]:
    """Fits log F(Q) against {Q, log Q, 1}.

    The Szego slope is reported as the coefficient of Q divided by two, to be
    compared with -pi/6; the Fisher-Hartwig exponent is the coefficient of
    log Q and no closed form is claimed for the constant.

    Args:
        q_values (Sequence[float]): at least five
        spectra (Optional[Sequence[SpectrumOutput]], optional): precomputed spectra
        workers (Optional[int], optional): sweep pool size

    Raises:
        FitRefusedError: fewer than five Q, or condition above 1e10

    Returns:
        tuple[FitResult, float, float]: (fit, szego_slope, alpha_fh)
    """
    if spectra is None:
        spectra = sweep_spectra(q_values, top_k=1, workers=workers)
    if len(spectra) < 5:
        raise FitRefusedError(f"the determinant fit needs five values of Q, got {len(spectra)}")
    q = [spec.q_half_width for spec in spectra]
    fit = least_squares_fit(q, [spec.log_fredholm for spec in spectra], [LINEAR, LOG, CONSTANT])
    return fit, fit.coefficient("Q") / 2.0, fit.coefficient("log Q")


def gap_density_link(
    q_half_width: float, n_points: Optional[int] = None
) -> tuple[float, float]:
    """Measured Delta_0 next to pi/(Q rho0(Q))

    Args:
        q_half_width (float): Q >= 50
        n_points (Optional[int], optional): explicit N

    Raises:
        ValueError: Q < 50

    Returns:
        tuple[float, float]: (gap_measured, gap_predicted)
    """
    if q_half_width < 50:
        raise ValueError(f"The gap-density link needs Q >= 50, got {q_half_width}")
    spec = eigen_spectrum(q_half_width, n_points, top_k=1)
    out = solve_rescaled(q_half_width, n_points)
    return float(spec.gaps[0]), math.pi / (q_half_width * out.rho0)
