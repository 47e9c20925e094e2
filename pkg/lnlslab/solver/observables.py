"""Observables derived from the rescaled solution"""

# pylint: disable=logging-fstring-interpolation

import logging
import math
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np
from dataclasses_json import dataclass_json

from lnlslab.solver.nystrom import (
    TWO_PI,
    SolveOutput,
    nystrom_interpolate,
    solve_love,
    solve_rescaled,
)
from lnlslab.specfun.functions import EULER_GAMMA, harmonic, re_digamma_one_plus_i

logger = logging.getLogger(__name__)

BULK_MARGIN = 5.0


@dataclass_json
@dataclass
class PhysicalObservables:
    """Ground state in physical variables lambda = kappa * xi"""

    kappa: float
    fermi_q: float
    peak_density_physical: float
    energy_per_site: float
    density: float


def energy_identity_residual(out: SolveOutput) -> float:
    """|E_inner - (2 pi rho0 - 2)|"""
    return abs(out.inner_energy - (TWO_PI * out.rho0 - 2.0))


def mode_sum_energy(q_half_width: float) -> float:
    """2 (H_{floor(2Q)+1} - 1)

    Args:
        q_half_width (float): Q > 0

    Raises:
        ValueError: Q <= 0

    Returns:
        float: mode-sum estimate of E_inner(Q)
    """
    if q_half_width <= 0:
        raise ValueError(f"The half-width must be positive, got {q_half_width}")
    return 2.0 * (harmonic(int(math.floor(2.0 * q_half_width)) + 1) - 1.0)


def inner_profile_approx(xi: Any, q_half_width: float) -> Any:
    """(1/pi) [log(2Q) - Re psi(1 + i xi)], valid for |xi| << Q

    Args:
        xi (Any): rapidity, scalar or array
        q_half_width (float): Q > 1

    Raises:
        ValueError: Q <= 1

    Returns:
        Any: approximate rho(xi), same shape as xi
    """
    if q_half_width <= 1:
        raise ValueError(f"The inner profile needs Q > 1, got {q_half_width}")
    values = (math.log(2.0 * q_half_width) - np.asarray(re_digamma_one_plus_i(xi))) / math.pi
    if np.ndim(xi) == 0:
        return float(values)
    return values


def outer_profile_approx(xi: Any, q_half_width: float) -> Any:
    """Composite inner/outer profile on |xi| <= Q.

    The outer solution (1/pi) arcsech(|xi|/Q) is matched to the inner one,
    which amounts to adding (1/pi) log[(1 + sqrt(1 - (xi/Q)^2))/2] to the
    inner profile.

    Args:
        xi (Any): rapidity, scalar or array, |xi| <= Q
        q_half_width (float): Q > 1

    Raises:
        ValueError: some |xi| > Q

    Returns:
        Any: approximate rho(xi), same shape as xi
    """
    ratio = np.abs(np.asarray(xi, dtype=np.float64)) / q_half_width
    if np.any(ratio > 1.0):
        raise ValueError("The outer profile is only defined for |xi| <= Q")
    correction = np.log((1.0 + np.sqrt(1.0 - ratio * ratio)) / 2.0) / math.pi
    values = np.asarray(inner_profile_approx(xi, q_half_width)) + correction
    if np.ndim(xi) == 0:
        return float(values)
    return values


def bulk_sample(out: SolveOutput, margin: float = BULK_MARGIN) -> float:
    """Quadrature-weighted mean of rho over margin <= |xi| <= Q - margin

    Args:
        out (SolveOutput): a solve with Q > 2 * margin
        margin (float, optional): excluded width at the centre and the edges

    Raises:
        ValueError: the bulk window is empty

    Returns:
        float: mean bulk density, which tends to 1/2
    """
    magnitude = np.abs(out.nodes)
    mask = (magnitude >= margin) & (magnitude <= out.q_half_width - margin)
    if not np.any(mask):
        raise ValueError(
            f"No nodes in the bulk window for Q = {out.q_half_width}, margin = {margin}"
        )
    weights = out.weights[mask]
    return float(np.dot(out.rho_at_nodes[mask], weights) / np.sum(weights))


def r_integral_check(
    q_half_width: float, n_points: Optional[int] = None
) -> tuple[float, float]:
    """R(Q) = sum_j (f_j - f0) w_j/(1 + xi_j^2) against -pi + 2(1 + D)/Q

    Args:
        q_half_width (float): Q, at least 10
        n_points (Optional[int], optional): explicit N

    Raises:
        ValueError: Q < 10

    Returns:
        tuple[float, float]: (R, |R - (-pi + 2(1 + D)/Q)|)
    """
    if q_half_width < 10:
        raise ValueError(f"The R-integral expansion needs Q >= 10, got {q_half_width}")
    love = solve_love(q_half_width, n_points)
    out = solve_rescaled(q_half_width, n_points)
    lorentz_weights = love.weights / (1.0 + love.nodes * love.nodes)
    r_value = math.fsum((love.f_at_nodes - love.f0) * lorentz_weights)
    predicted = -math.pi + 2.0 * (1.0 + out.total_density) / q_half_width
    return r_value, abs(r_value - predicted)


def to_physical(out: SolveOutput, kappa: float) -> PhysicalObservables:
    """Maps a rescaled solve to physical variables

    Args:
        out (SolveOutput): a solve at half-width Q
        kappa (float): coupling > 0

    Raises:
        ValueError: kappa <= 0

    Returns:
        PhysicalObservables: q = kappa Q, rho(0) = rho0/kappa, e = -E_inner/kappa
    """
    if not kappa > 0:
        raise ValueError(f"The coupling must be positive, got {kappa}")
    return PhysicalObservables(
        kappa=kappa,
        fermi_q=kappa * out.q_half_width,
        peak_density_physical=out.rho0 / kappa,
        energy_per_site=-out.inner_energy / kappa,
        density=out.total_density,
    )


def energy_fixed_fermi(kappa: float, fermi_q: float) -> float:
    """Leading energy per site at fixed Fermi boundary: -(2/kappa)[log(2q/kappa) + gamma_E - 1]"""
    return -(2.0 / kappa) * (math.log(2.0 * fermi_q / kappa) + EULER_GAMMA - 1.0)


def energy_fixed_density(kappa: float, density: float) -> float:
    """Leading energy per site at fixed density D: -(2/kappa)[log(2D) + gamma_E - 1]"""
    return -(2.0 / kappa) * (math.log(2.0 * density) + EULER_GAMMA - 1.0)


def edge_profile(out: SolveOutput, s: Any, s_ref: float = 10.0) -> Any:
    """rho(Q - s)/rho(Q - s_ref), the edge profile normalised at depth s_ref

    Args:
        out (SolveOutput): a solve
        s (Any): depth below the edge, scalar or array, 0 <= s <= 2Q
        s_ref (float, optional): normalisation depth. Defaults to 10.

    Raises:
        ValueError: a depth lies outside [0, 2Q]

    Returns:
        Any: normalised profile, same shape as s
    """
    depths = np.asarray(s, dtype=np.float64)
    limit = 2.0 * out.q_half_width
    if np.any(depths < 0) or np.any(depths > limit) or not 0 <= s_ref <= limit:
        raise ValueError(f"Edge depths must lie in [0, {limit}]")
    reference = nystrom_interpolate(out, out.q_half_width - s_ref)
    values = np.asarray(nystrom_interpolate(out, out.q_half_width - depths)) / reference
    if depths.ndim == 0:
        return float(values)
    return values
