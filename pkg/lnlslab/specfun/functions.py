"""Special functions on the domains the ground-state equations need.

Everything here is a pure function of its arguments. Complex numbers are
plain Python ``complex`` values; real-valued functions accept either a float
or a numpy array and return the same kind.
"""

# pylint: disable=logging-fstring-interpolation

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
import numpy.typing as npt
from dataclasses_json import dataclass_json

from lnlslab.exceptions import SpecialFunctionDomainError

logger = logging.getLogger(__name__)

RealLike = Union[float, npt.NDArray[np.float64]]

# Return type of the complex special-function and Wiener-Hopf evaluators
ComplexValue = complex

EULER_GAMMA = float(np.euler_gamma)

# (gamma_E + log 2) / pi, the limit of rho0(Q) - log(Q)/pi
C_STAR = (EULER_GAMMA + math.log(2.0)) / math.pi

LANCZOS_G = 7
LANCZOS_COEFFICIENTS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)

# psi(z) = psi(z + DIGAMMA_SHIFT) - sum_{k < DIGAMMA_SHIFT} 1/(z + k)
DIGAMMA_SHIFT = 10


@dataclass_json
@dataclass
class ProfileSample:
    """Phi and the subtracted mode sum S at one rapidity

    xi: rescaled rapidity
    phi: log|xi| - Re psi(1 + i xi), nan at xi = 0
    s: -Re psi(1 + i xi) - gamma_E
    """

    xi: float
    phi: float
    s: float


def log_gamma_complex(z: ComplexValue) -> ComplexValue:
    """Complex log-gamma.

    Lanczos approximation with g = 7 for Re z >= 1/2, giving the branch that is
    analytic off the negative real axis (so Im log Gamma(1 + iL) grows like
    L log L). For Re z < 1/2 the reflection formula is used and the imaginary
    part is only defined modulo 2 pi.

    Args:
        z (ComplexValue): argument

    Raises:
        SpecialFunctionDomainError: z is 0 or a negative integer
        ValueError: z is not finite

    Returns:
        ComplexValue: log Gamma(z)
    """
    z = complex(z)
    if not cmath.isfinite(z):
        raise ValueError(f"log_gamma_complex needs a finite argument, got {z!r}")
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise SpecialFunctionDomainError(
            "log_gamma_complex",
            z,
            f"Gamma has a pole at z = {z.real:g}; log Gamma is undefined there.",
        )

    if z.real < 0.5:
        return (
            math.log(math.pi)
            - cmath.log(cmath.sin(math.pi * z))
            - log_gamma_complex(1.0 - z)
        )

    z -= 1.0
    series = complex(LANCZOS_COEFFICIENTS[0])
    for k, coefficient in enumerate(LANCZOS_COEFFICIENTS[1:], start=1):
        series += coefficient / (z + k)
    t = z + LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (z + 0.5) * cmath.log(t) - t + cmath.log(series)


def _digamma_array(z: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
    """Digamma on Re z > 0: upward shift then the asymptotic series."""
    recurrence = np.zeros_like(z)
    for k in range(DIGAMMA_SHIFT):
        recurrence += 1.0 / (z + k)
    w = z + DIGAMMA_SHIFT
    inv2 = 1.0 / (w * w)
    series = inv2 * (
        -1.0 / 12.0
        + inv2
        * (
            1.0 / 120.0
            + inv2
            * (
                -1.0 / 252.0
                + inv2
                * (
                    1.0 / 240.0
                    + inv2 * (-1.0 / 132.0 + inv2 * (691.0 / 32760.0 - inv2 / 12.0))
                )
            )
        )
    )
    return np.log(w) - 0.5 / w + series - recurrence


def digamma(z: ComplexValue) -> ComplexValue:
    """Complex digamma psi(z) for Re z > 0

    Args:
        z (ComplexValue): argument with positive real part

    Raises:
        SpecialFunctionDomainError: Re z <= 0

    Returns:
        ComplexValue: psi(z)
    """
    z = complex(z)
    if not z.real > 0.0 or not cmath.isfinite(z):
        raise SpecialFunctionDomainError(
            "digamma",
            z,
            f"digamma is only implemented for finite Re z > 0, got {z!r}",
        )
    return complex(_digamma_array(np.array([z], dtype=np.complex128))[0])


def re_digamma_one_plus_i(xi: RealLike) -> RealLike:
    """Re psi(1 + i xi), exactly even in xi

    Args:
        xi (RealLike): rapidity, scalar or array

    Returns:
        RealLike: Re psi(1 + i xi), same shape as xi
    """
    values = np.abs(np.asarray(xi, dtype=np.float64))
    result = _digamma_array(1.0 + 1j * values).real
    if np.ndim(xi) == 0:
        return float(result)
    return result


def profile_phi(xi: RealLike) -> RealLike:
    """Phi(xi) = log|xi| - Re psi(1 + i xi), which decays like -1/(12 xi^2)

    Args:
        xi (RealLike): rapidity, scalar or array, never 0

    Raises:
        SpecialFunctionDomainError: any xi == 0

    Returns:
        RealLike: Phi(xi)
    """
    values = np.abs(np.asarray(xi, dtype=np.float64))
    if np.any(values == 0.0):
        raise SpecialFunctionDomainError(
            "profile_phi",
            0.0,
            "profile_phi has a logarithmic singularity at xi = 0",
        )
    result = np.log(values) - _digamma_array(1.0 + 1j * values).real
    if np.ndim(xi) == 0:
        return float(result)
    return result


def subtracted_mode_sum(xi: float, n_max: int) -> float:
    """Partial sum of sum_n [n/(n^2 + xi^2) - 1/n] up to n_max.

    Each term is summed in the cancellation-free form -xi^2/(n (n^2 + xi^2)).

    Args:
        xi (float): rapidity
        n_max (int): number of terms, at least 1

    Raises:
        ValueError: n_max < 1

    Returns:
        float: the partial sum, which tends to -Re psi(1 + i xi) - gamma_E
    """
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    if xi == 0.0:
        return 0.0
    n = np.arange(1, n_max + 1, dtype=np.float64)
    xi2 = float(xi) * float(xi)
    return -xi2 * float(np.sum(1.0 / (n * (n * n + xi2))))


def mode_sum_closed_form(xi: RealLike) -> RealLike:
    """S(xi) = -Re psi(1 + i xi) - gamma_E, the limit of subtracted_mode_sum"""
    result = -np.asarray(re_digamma_one_plus_i(xi)) - EULER_GAMMA
    if np.ndim(xi) == 0:
        return float(result)
    return result


def profile_sample(xi: float) -> ProfileSample:
    """Evaluates Phi and S at one rapidity

    Args:
        xi (float): rapidity

    Returns:
        ProfileSample: phi is nan at xi = 0
    """
    s_value = float(mode_sum_closed_form(xi))
    phi = math.nan if xi == 0.0 else float(profile_phi(xi))
    return ProfileSample(xi=float(xi), phi=phi, s=0.0 if xi == 0.0 else s_value)


def harmonic(n: int) -> float:
    """
    Args:
        n (int): at least 1

    Raises:
        ValueError: n < 1

    Returns:
        float: H_n = 1 + 1/2 + ... + 1/n, correctly rounded sum
    """
    if n < 1:
        raise ValueError(f"The harmonic number needs n >= 1, got {n}")
    return math.fsum(1.0 / k for k in range(1, int(n) + 1))
