"""Integral identities of the special functions, evaluated by adaptive quadrature"""

# pylint: disable=logging-fstring-interpolation

import logging
import math
from typing import Callable

import numpy as np
from scipy import integrate  # type: ignore

from lnlslab.specfun.functions import (
    EULER_GAMMA,
    log_gamma_complex,
    profile_phi,
    re_digamma_one_plus_i,
)

logger = logging.getLogger(__name__)

QUAD_OPTIONS = {"epsabs": 1e-13, "epsrel": 1e-12, "limit": 200}


def _decade_breakpoints(lower: float, upper: float) -> list[float]:
    """lower, then every power of ten strictly inside (lower, upper), then upper"""
    points = [lower]
    decade = 10.0 ** math.floor(math.log10(lower) + 1.0) if lower > 0 else 1.0
    while decade < upper:
        if decade > lower:
            points.append(decade)
        decade *= 10.0
    points.append(upper)
    return points


def integrate_by_decades(
    func: Callable[[float], float], lower: float, upper: float
) -> float:
    """Adaptive quadrature of func on [lower, upper] split at powers of ten

    Args:
        func (Callable[[float], float]): smooth integrand
        lower (float): left end
        upper (float): right end

    Returns:
        float: the integral
    """
    points = _decade_breakpoints(lower, upper)
    pieces = []
    for left, right in zip(points[:-1], points[1:]):
        value, error = integrate.quad(func, left, right, **QUAD_OPTIONS)
        logger.debug(f"quad on [{left:g}, {right:g}]: {value:.16g} +- {error:.1e}")
        pieces.append(value)
    return math.fsum(pieces)


def stirling_im_log_gamma(length: float) -> float:
    """Leading Stirling form of Im log Gamma(1 + iL): L log L - L + pi/4"""
    return length * math.log(length) - length + math.pi / 4.0


def im_log_gamma_integral_check(length: float) -> tuple[float, float]:
    """Compares the integral of Re psi(1 + i xi) on [0, L] with Im log Gamma(1 + iL)

    Args:
        length (float): L > 0

    Raises:
        ValueError: L <= 0

    Returns:
        tuple[float, float]: (quadrature, Im log_gamma_complex(1 + iL))
    """
    if length <= 0:
        raise ValueError(f"L must be positive, got {length}")
    lhs = integrate_by_decades(re_digamma_one_plus_i, 0.0, length)
    rhs = log_gamma_complex(complex(1.0, length)).imag
    return lhs, rhs


def digamma_identity_check(length: float = 1e4) -> tuple[float, float]:
    """Integral of [Re psi(1 + i xi) + gamma_E]/(1 + xi^2) over the half line.

    Quadrature on [0, L]; the tail uses Re psi(1 + i xi) = log xi + 1/(12 xi^2)
    + O(xi^-4) integrated against 1/xi^2 - 1/xi^4.

    Args:
        length (float, optional): cut between quadrature and tail. Defaults to 1e4.

    Returns:
        tuple[float, float]: (measured, pi/2)
    """

    def integrand(xi: float) -> float:
        return (re_digamma_one_plus_i(xi) + EULER_GAMMA) / (1.0 + xi * xi)

    body = integrate_by_decades(integrand, 0.0, length)
    log_l = math.log(length)
    tail = (
        (log_l + 1.0 + EULER_GAMMA) / length
        - (log_l + EULER_GAMMA) / (3.0 * length**3)
        - 1.0 / (9.0 * length**3)
        + 1.0 / (36.0 * length**3)
    )
    logger.debug(f"digamma identity: body {body:.16g}, tail {tail:.3e}")
    return body + tail, math.pi / 2.0


def profile_integral_check(length: float = 1e3) -> tuple[float, float]:
    """Integral of Phi over the half line.

    On [0, 1] the log term integrates to -1 exactly and Re psi is integrated
    by quadrature. The tail beyond L is c/L, c being the mean of xi^2 Phi(xi)
    over the last decade.

    Args:
        length (float, optional): cut between quadrature and tail. Defaults to 1e3.

    Returns:
        tuple[float, float]: (measured, -pi/4)
    """
    near_origin = -1.0 - integrate_by_decades(re_digamma_one_plus_i, 0.0, 1.0)
    body = integrate_by_decades(profile_phi, 1.0, length)
    last_decade = np.geomspace(length / 10.0, length, 32)
    tail_coefficient = float(np.mean(last_decade**2 * profile_phi(last_decade)))
    tail = tail_coefficient / length
    logger.debug(
        f"profile integral: tail coefficient {tail_coefficient:.6f}, tail {tail:.3e}"
    )
    return near_origin + body + tail, -math.pi / 4.0


def reflection_check(x: float) -> tuple[float, float]:
    """Gamma(1 + ix) Gamma(1 - ix) against pi x / sinh(pi x)

    Args:
        x (float): real argument

    Returns:
        tuple[float, float]: (exp of the summed log-gammas, closed form)
    """
    product = np.exp(
        log_gamma_complex(complex(1.0, x)) + log_gamma_complex(complex(1.0, -x))
    )
    expected = 1.0 if x == 0.0 else math.pi * x / math.sinh(math.pi * x)
    return float(product.real), expected
