"""Wiener-Hopf factorisation of the symbol Sigma(p) = 1 - exp(-|p|).

    K+(z) = sqrt(-iz) exp[-(iz/2pi) log(-iz)] / Gamma(1 - iz/2pi)
    K-(z) = sqrt(iz)  exp[+(iz/2pi) log(iz)]  / Gamma(1 + iz/2pi)

K+ is analytic off the negative imaginary axis and K- off the positive one;
on the real axis K+ K- = Sigma. The regularised factors G = K / sqrt(-+iz)
equal one at the origin.
"""

# pylint: disable=logging-fstring-interpolation

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Any

import numpy as np
import pandas as pd
from scipy import integrate  # type: ignore

from lnlslab.exceptions import BranchCutError
from lnlslab.specfun.functions import (
    EULER_GAMMA,
    ComplexValue,
    digamma,
    log_gamma_complex,
)

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
INSTANTON_ACTION = TWO_PI


@dataclass
class WhFactorValue:
    """K and G factors at one momentum"""

    z: ComplexValue
    k_plus: ComplexValue
    k_minus: ComplexValue
    g_plus: ComplexValue
    g_minus: ComplexValue


def symbol_sigma(p: float) -> float:
    """1 - exp(-|p|) without cancellation near p = 0"""
    return -math.expm1(-abs(p))


def _log_rotated(z: complex, sign: int) -> complex:
    """log(-i z) for sign = +1, log(i z) for sign = -1.

    On the real axis the value log|p| -+ i (pi/2) sign(p) is returned
    directly.
    """
    if z.imag == 0.0:
        return complex(math.log(abs(z.real)), -sign * math.copysign(math.pi / 2.0, z.real))
    return cmath.log(-sign * 1j * z)


def _on_cut(z: complex, sign: int) -> bool:
    """True on the cut of the + factor (sign = +1) or the - factor (sign = -1)"""
    return z.real == 0.0 and sign * z.imag <= 0.0


def _log_g(z: complex, sign: int) -> complex:
    """log G+(z) for sign = +1, log G-(z) for sign = -1"""
    return -sign * (1j * z / TWO_PI) * _log_rotated(z, sign) - log_gamma_complex(
        1.0 - sign * 1j * z / TWO_PI
    )


def g_plus(z: ComplexValue) -> ComplexValue:
    """Regularised factor G+(z), G+(0) = 1

    Raises:
        BranchCutError: z on the negative imaginary axis (z = 0 included)
    """
    z = complex(z)
    if _on_cut(z, 1):
        raise BranchCutError("G+", z)
    return cmath.exp(_log_g(z, 1))


def g_minus(z: ComplexValue) -> ComplexValue:
    """Regularised factor G-(z), G-(0) = 1

    Raises:
        BranchCutError: z on the positive imaginary axis (z = 0 included)
    """
    z = complex(z)
    if _on_cut(z, -1):
        raise BranchCutError("G-", z)
    return cmath.exp(_log_g(z, -1))


def wh_factors(z: ComplexValue) -> WhFactorValue:
    """K+, K-, G+ and G- at one point

    Args:
        z (ComplexValue): momentum off both imaginary half-axes

    Raises:
        BranchCutError: z lies on the cut of either factor

    Returns:
        WhFactorValue: the four factors
    """
    z = complex(z)
    if _on_cut(z, 1):
        raise BranchCutError("K+", z)
    if _on_cut(z, -1):
        raise BranchCutError("K-", z)
    log_plus = _log_rotated(z, 1)
    log_minus = _log_rotated(z, -1)
    gp = cmath.exp(_log_g(z, 1))
    gm = cmath.exp(_log_g(z, -1))
    return WhFactorValue(
        z=z,
        k_plus=cmath.exp(0.5 * log_plus) * gp,
        k_minus=cmath.exp(0.5 * log_minus) * gm,
        g_plus=gp,
        g_minus=gm,
    )


def three_factor_identity(p: float) -> tuple[float, float]:
    """|p| exp(-|p|/2) / [Gamma(1 + ip/2pi) Gamma(1 - ip/2pi)] next to Sigma(p)

    Returns:
        tuple[float, float]: (gamma-function form, Sigma(p))
    """
    x = p / TWO_PI
    log_product = log_gamma_complex(complex(1.0, x)) + log_gamma_complex(
        complex(1.0, -x)
    )
    gamma_form = abs(p) * math.exp(-abs(p) / 2.0 - log_product.real)
    return gamma_form, symbol_sigma(p)


def factorisation_grid(
    p_min: float = -20.0,
    p_max: float = 20.0,
    count: int = 400,
    exclusion: float = 1e-3,
) -> pd.DataFrame:
    """Factors and identity residuals on a uniform real grid

    Points with |p| < exclusion are dropped.

    Args:
        p_min (float, optional): left end. Defaults to -20.
        p_max (float, optional): right end. Defaults to 20.
        count (int, optional): grid points before exclusion. Defaults to 400.
        exclusion (float, optional): half-width of the excluded window. Defaults to 1e-3.

    Returns:
        pd.DataFrame: one row per p
    """
    rows: list[dict[str, Any]] = []
    for p in np.linspace(p_min, p_max, count):
        if abs(p) < exclusion:
            continue
        value = wh_factors(complex(p, 0.0))
        sigma = symbol_sigma(p)
        gamma_form, _ = three_factor_identity(p)
        rows.append(
            {
                "p": float(p),
                "sigma": sigma,
                "k_plus_re": value.k_plus.real,
                "k_plus_im": value.k_plus.imag,
                "k_minus_re": value.k_minus.real,
                "k_minus_im": value.k_minus.imag,
                "g_plus_re": value.g_plus.real,
                "g_plus_im": value.g_plus.imag,
                "g_minus_re": value.g_minus.real,
                "g_minus_im": value.g_minus.imag,
                "product_residual": abs(value.k_plus * value.k_minus - sigma),
                "regularised_residual": abs(
                    value.g_plus * value.g_minus - sigma / abs(p)
                ),
                "conjugate_residual": abs(value.k_minus - value.k_plus.conjugate()),
                "three_factor_residual": abs(gamma_form - sigma),
            }
        )
    return pd.DataFrame(rows)


def factorisation_residual(grid: pd.DataFrame) -> float:
    """max |K+ K- - Sigma| over a grid from factorisation_grid"""
    return float(grid["product_residual"].max())


def wh_peak_density(q_half_width: float) -> float:
    """(1/pi) [psi(1 + 2Q) + gamma_E]

    Raises:
        ValueError: Q <= 0
    """
    if q_half_width <= 0:
        raise ValueError(f"The half-width must be positive, got {q_half_width}")
    return (digamma(1.0 + 2.0 * q_half_width).real + EULER_GAMMA) / math.pi


def instanton_zero_check(p: complex = complex(0.0, TWO_PI)) -> tuple[float, float]:
    """|1 - exp(-p)| at a zero of the continued symbol, and the action |Im p|

    Returns:
        tuple[float, float]: (residual, action)
    """
    return abs(1.0 - cmath.exp(-p)), abs(p.imag)


def spectral_response_model(p: float, q_half_width: float) -> float:
    """Leading response 1 - exp(-2pQ)

    Raises:
        ValueError: p < 0 or Q <= 0
    """
    if p < 0 or q_half_width <= 0:
        raise ValueError(f"Need p >= 0 and Q > 0, got p = {p}, Q = {q_half_width}")
    return -math.expm1(-2.0 * p * q_half_width)


def spectral_response_integral(q_half_width: float) -> float:
    """(1/pi) int_0^inf model(p; Q)/(e^p - 1) dp, equal to wh_peak_density(Q)"""

    def integrand(p: float) -> float:
        return spectral_response_model(p, q_half_width) / math.expm1(p)

    breakpoints = [0.0, min(1.0 / q_half_width, 1.0), 1.0, 10.0, 80.0]
    pieces = []
    for left, right in zip(breakpoints[:-1], breakpoints[1:]):
        if right <= left:
            continue
        value, _ = integrate.quad(integrand, left, right, epsabs=1e-14, epsrel=1e-12, limit=200)
        pieces.append(value)
    return math.fsum(pieces) / math.pi
