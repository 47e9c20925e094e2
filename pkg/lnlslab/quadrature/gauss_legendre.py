"""Gauss-Legendre rules on [-1, 1] and their affine maps to [-Q, Q]"""

# pylint: disable=logging-fstring-interpolation

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from time import perf_counter
from typing import Optional

import numpy as np
import numpy.typing as npt

from lnlslab.configuration.configuration import CONFIG
from lnlslab.exceptions import QuadratureConvergenceError

logger = logging.getLogger(__name__)

MAX_POINTS = 20000
MAX_NEWTON_ITERATIONS = 100
NEWTON_TOLERANCE = 1e-14


@dataclass(frozen=True)
class QuadratureRule:
    """An N-point rule on [-q_half_width, q_half_width]

    Nodes ascend and are symmetric about 0; weights are positive, symmetric
    and sum to 2 * q_half_width. The arrays are read-only so cached rules can
    be shared between solves.
    """

    q_half_width: float
    nodes: npt.NDArray[np.float64] = field(repr=False)
    weights: npt.NDArray[np.float64] = field(repr=False)

    @property
    def n_points(self) -> int:
        """number of nodes"""
        return int(self.nodes.size)


def _legendre_with_derivative(
    n: int, x: npt.NDArray[np.float64]
) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """P_n(x) and P_n'(x) by the three-term recurrence, for |x| < 1"""
    p_prev = np.ones_like(x)
    p_curr = x.copy()
    for k in range(2, n + 1):
        p_prev, p_curr = p_curr, ((2 * k - 1) * x * p_curr - (k - 1) * p_prev) / k
    derivative = n * (x * p_curr - p_prev) / (x * x - 1.0)
    return p_curr, derivative


@lru_cache(maxsize=64)
def _reference_rule(n: int) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """Nodes and weights on [-1, 1], cached by n"""
    if n == 1:
        nodes, weights = np.array([0.0]), np.array([2.0])
    else:
        start = perf_counter()
        half = (n + 1) // 2
        k = np.arange(1, half + 1, dtype=np.float64)
        # Tricomi's asymptotic guess, largest root first
        x = (1.0 - 1.0 / (8.0 * n * n) + 1.0 / (8.0 * n**3)) * np.cos(
            math.pi * (4.0 * k - 1.0) / (4.0 * n + 2.0)
        )
        if n % 2 == 1:
            x[-1] = 0.0

        for iteration in range(1, MAX_NEWTON_ITERATIONS + 1):
            value, derivative = _legendre_with_derivative(n, x)
            step = value / derivative
            x = x - step
            if np.max(np.abs(step)) < NEWTON_TOLERANCE:
                break
        else:
            raise QuadratureConvergenceError(n, MAX_NEWTON_ITERATIONS)
        # one polishing step at the converged roots
        value, derivative = _legendre_with_derivative(n, x)
        x = x - value / derivative
        if n % 2 == 1:
            x[-1] = 0.0
        _, derivative = _legendre_with_derivative(n, x)
        half_weights = 2.0 / ((1.0 - x * x) * derivative * derivative)

        # x holds the non-negative half in descending order
        mirror = half - 1 if n % 2 == 1 else half
        nodes = np.concatenate([-x, x[:mirror][::-1]])
        weights = np.concatenate([half_weights, half_weights[:mirror][::-1]])
        logger.debug(
            f"Gauss-Legendre n={n}: {iteration} Newton iterations, "
            f"{perf_counter() - start:.3f} s"
        )

    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_legendre(n: int) -> QuadratureRule:
    """The n-point Gauss-Legendre rule on [-1, 1]

    Args:
        n (int): number of nodes, 1 <= n <= 20000

    Raises:
        ValueError: n outside [1, 20000]
        QuadratureConvergenceError: Newton iteration did not converge

    Returns:
        QuadratureRule: rule with q_half_width = 1
    """
    if not 1 <= n <= MAX_POINTS:
        raise ValueError(f"n must lie in [1, {MAX_POINTS}], got {n}")
    nodes, weights = _reference_rule(int(n))
    return QuadratureRule(q_half_width=1.0, nodes=nodes, weights=weights)


def map_to_interval(rule: QuadratureRule, q_half_width: float) -> QuadratureRule:
    """Rescales a rule to [-Q, Q]

    Args:
        rule (QuadratureRule): rule on [-R, R]
        q_half_width (float): Q > 0

    Raises:
        ValueError: Q is not positive and finite

    Returns:
        QuadratureRule: rule on [-Q, Q]
    """
    if not (math.isfinite(q_half_width) and q_half_width > 0):
        raise ValueError(f"The half-width must be positive, got {q_half_width}")
    scale = q_half_width / rule.q_half_width
    nodes = rule.nodes * scale
    weights = rule.weights * scale
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(q_half_width=float(q_half_width), nodes=nodes, weights=weights)


def uncapped_n(q_half_width: float) -> int:
    """round(n_slope * Q) + n_offset without the cap, for the coefficient fit"""
    if not (math.isfinite(q_half_width) and q_half_width > 0):
        raise ValueError(f"The half-width must be positive, got {q_half_width}")
    return int(math.floor(CONFIG.n_slope * q_half_width + 0.5)) + CONFIG.n_offset


def default_n(q_half_width: float, override: Optional[int] = None) -> int:
    """N(Q) = round(n_slope * Q) + n_offset, capped at n_cap.

    Non-integer n_slope * Q is rounded half-up. An explicit override is returned
    as is, even above the cap.

    Args:
        q_half_width (float): Q > 0
        override (Optional[int], optional): explicit N. Defaults to None.

    Raises:
        ValueError: Q not positive, or override < 1

    Returns:
        int: number of quadrature nodes
    """
    if override is not None:
        if override < 1:
            raise ValueError(f"The number of nodes must be at least 1, got {override}")
        return int(override)
    n_points = uncapped_n(q_half_width)
    if n_points > CONFIG.n_cap:
        logger.debug(f"N({q_half_width}) = {n_points} capped at {CONFIG.n_cap}")
        return CONFIG.n_cap
    return n_points


def is_capped(q_half_width: float) -> bool:
    """True when the default rule for Q hits the cap"""
    return uncapped_n(q_half_width) > CONFIG.n_cap


def rule_for(q_half_width: float, n_points: Optional[int] = None) -> QuadratureRule:
    """The default (or explicit) N-point rule mapped to [-Q, Q]

    Args:
        q_half_width (float): Q > 0
        n_points (Optional[int], optional): explicit N. Defaults to None.

    Returns:
        QuadratureRule: rule on [-Q, Q]
    """
    n = default_n(q_half_width, n_points)
    return map_to_interval(gauss_legendre(n), q_half_width)
