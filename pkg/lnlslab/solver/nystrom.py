"""Nystrom discretisation of the rescaled ground-state equation and its Love dual.

The rescaled density solves

    2 pi rho(xi) - int_{-Q}^{Q} K(xi - eta) rho(eta) d eta = K(xi),  K(x) = 2/(1 + x^2)

and the Love function solves f - (1/2 pi) K f = 1 on the same interval.
Both are discretised on one Gauss-Legendre rule, so the exact identities
between them (energy identity, duality, peak identity) hold to rounding.
"""

# pylint: disable=logging-fstring-interpolation

import logging
import math
from dataclasses import dataclass, field
from time import perf_counter
from typing import Any, Optional

import numpy as np
import numpy.typing as npt
from scipy.linalg import get_lapack_funcs, lu_factor, lu_solve  # type: ignore

from lnlslab.configuration.configuration import CONFIG
from lnlslab.exceptions import IllConditionedSystemError
from lnlslab.quadrature.gauss_legendre import QuadratureRule, is_capped, rule_for

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


def lorentzian(x: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    """K(x) = 2/(1 + x^2)"""
    return 2.0 / (1.0 + x * x)


@dataclass
class SolveOutput:
    """Discrete rescaled density on a rule and the observables read off it

    rho0 and inner_energy come from the same quadrature sum, so
    inner_energy = 2 pi rho0 - 2 up to rounding.
    """

    q_half_width: float
    n_points: int
    nodes: npt.NDArray[np.float64] = field(repr=False)
    weights: npt.NDArray[np.float64] = field(repr=False)
    rho_at_nodes: npt.NDArray[np.float64] = field(repr=False)
    rho0: float
    total_density: float
    inner_energy: float
    condition_estimate: float
    capped: bool = False
    wall_time: float = 0.0

    @property
    def c_eff(self) -> float:
        """rho0 - log(Q)/pi"""
        return self.rho0 - math.log(self.q_half_width) / math.pi

    def summary(self) -> dict[str, Any]:
        """Scalar columns of one solve, in output order"""
        return {
            "q_half_width": self.q_half_width,
            "n_points": self.n_points,
            "rho0": self.rho0,
            "total_density": self.total_density,
            "inner_energy": self.inner_energy,
            "c_eff": self.c_eff,
            "energy_residual": abs(
                self.inner_energy - (TWO_PI * self.rho0 - 2.0)
            ),
            "condition_estimate": self.condition_estimate,
            "capped": self.capped,
        }


@dataclass
class LoveOutput:
    """Discrete Love function on a rule"""

    q_half_width: float
    n_points: int
    nodes: npt.NDArray[np.float64] = field(repr=False)
    weights: npt.NDArray[np.float64] = field(repr=False)
    f_at_nodes: npt.NDArray[np.float64] = field(repr=False)
    f0: float
    condition_estimate: float


def assemble_system(
    rule: QuadratureRule,
) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """Nystrom matrix A_ij = 2 pi delta_ij - K(xi_i - xi_j) w_j and rhs K(xi_i)

    Args:
        rule (QuadratureRule): rule on [-Q, Q]

    Returns:
        tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]: (matrix, rhs)
    """
    nodes = rule.nodes
    kernel = lorentzian(nodes[:, None] - nodes[None, :])
    matrix = -kernel * rule.weights[None, :]
    matrix[np.diag_indices_from(matrix)] += TWO_PI
    return matrix, lorentzian(nodes)


def dense_solve(
    matrix: npt.NDArray[np.float64],
    rhs: npt.NDArray[np.float64],
    condition_limit: Optional[float] = None,
    refinement_steps: Optional[int] = None,
) -> tuple[npt.NDArray[np.float64], float]:
    """LU solve with partial pivoting and iterative refinement

    Args:
        matrix (npt.NDArray[np.float64]): square system matrix
        rhs (npt.NDArray[np.float64]): right-hand side
        condition_limit (Optional[float], optional): defaults to the configured limit
        refinement_steps (Optional[int], optional): defaults to the configured count

    Raises:
        IllConditionedSystemError: the 1-norm condition estimate exceeds the limit

    Returns:
        tuple[npt.NDArray[np.float64], float]: (solution, condition estimate)
    """
    limit = CONFIG.condition_limit if condition_limit is None else condition_limit
    steps = CONFIG.refinement_steps if refinement_steps is None else refinement_steps

    lu_piv = lu_factor(matrix, check_finite=False)
    (gecon,) = get_lapack_funcs(("gecon",), (lu_piv[0],))
    rcond, _ = gecon(lu_piv[0], np.linalg.norm(matrix, 1), norm="1")
    condition = math.inf if rcond == 0.0 else 1.0 / float(rcond)
    logger.debug(f"LU of {matrix.shape[0]}x{matrix.shape[0]}: condition {condition:.3e}")
    if not condition <= limit:
        raise IllConditionedSystemError(condition, limit)

    solution = lu_solve(lu_piv, rhs, check_finite=False)
    for _ in range(steps):
        solution = solution + lu_solve(lu_piv, rhs - matrix @ solution, check_finite=False)
    return solution, condition


def solve_rescaled(q_half_width: float, n_points: Optional[int] = None) -> SolveOutput:
    """Solves the rescaled equation on [-Q, Q]

    Args:
        q_half_width (float): Q > 0
        n_points (Optional[int], optional): explicit N, else the default rule

    Returns:
        SolveOutput: density at the nodes and its observables
    """
    start = perf_counter()
    capped = n_points is None and is_capped(q_half_width)
    if capped:
        logger.warning(
            f"Q = {q_half_width} uses the capped rule N = {CONFIG.n_cap}; "
            "convergence in N is degraded"
        )
    rule = rule_for(q_half_width, n_points)
    matrix, rhs = assemble_system(rule)
    rho, condition = dense_solve(matrix, rhs)

    driven = 2.0 * rho * rule.weights / (1.0 + rule.nodes * rule.nodes)
    inner_energy = math.fsum(driven)
    rho0 = (2.0 + inner_energy) / TWO_PI
    total_density = math.fsum(rho * rule.weights)

    wall_time = perf_counter() - start
    logger.debug(
        f"solve Q={q_half_width} N={rule.n_points}: rho0={rho0:.15g}, "
        f"{wall_time:.3f} s"
    )
    return SolveOutput(
        q_half_width=float(q_half_width),
        n_points=rule.n_points,
        nodes=rule.nodes,
        weights=rule.weights,
        rho_at_nodes=rho,
        rho0=rho0,
        total_density=total_density,
        inner_energy=inner_energy,
        condition_estimate=condition,
        capped=capped,
        wall_time=wall_time,
    )


def solve_love(q_half_width: float, n_points: Optional[int] = None) -> LoveOutput:
    """Solves f - (1/2 pi) K f = 1 on [-Q, Q]

    Args:
        q_half_width (float): Q > 0
        n_points (Optional[int], optional): explicit N, else the default rule

    Returns:
        LoveOutput: Love function at the nodes and f(0)
    """
    rule = rule_for(q_half_width, n_points)
    matrix, _ = assemble_system(rule)
    f_values, condition = dense_solve(matrix / TWO_PI, np.ones(rule.n_points))
    f0 = 1.0 + math.fsum(
        f_values * rule.weights / (1.0 + rule.nodes * rule.nodes)
    ) / math.pi
    return LoveOutput(
        q_half_width=float(q_half_width),
        n_points=rule.n_points,
        nodes=rule.nodes,
        weights=rule.weights,
        f_at_nodes=f_values,
        f0=f0,
        condition_estimate=condition,
    )


def nystrom_interpolate(out: SolveOutput, xi: Any) -> Any:
    """Natural Nystrom interpolant of the density at arbitrary rapidities

    Args:
        out (SolveOutput): a solve
        xi (Any): rapidity, scalar or array

    Returns:
        Any: rho(xi), same shape as xi
    """
    points = np.asarray(xi, dtype=np.float64)
    flat = points.reshape(-1)
    kernel = lorentzian(flat[:, None] - out.nodes[None, :])
    values = (lorentzian(flat) + kernel @ (out.rho_at_nodes * out.weights)) / TWO_PI
    if points.ndim == 0:
        return float(values[0])
    return values.reshape(points.shape)


def love_duality(love: LoveOutput) -> float:
    """(1/pi) sum_j f_j w_j/(1 + xi_j^2), which equals D(Q)"""
    return math.fsum(
        love.f_at_nodes * love.weights / (1.0 + love.nodes * love.nodes)
    ) / math.pi
