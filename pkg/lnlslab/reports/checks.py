"""Registry of the exact identities every build is checked against"""

# pylint: disable=logging-fstring-interpolation

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

from dataclasses_json import dataclass_json

from lnlslab.configuration.configuration import CONFIG
from lnlslab.solver.nystrom import TWO_PI, love_duality, solve_love, solve_rescaled
from lnlslab.specfun.functions import log_gamma_complex
from lnlslab.specfun.identities import (
    digamma_identity_check,
    im_log_gamma_integral_check,
    profile_integral_check,
    reflection_check,
    stirling_im_log_gamma,
)
from lnlslab.spectral.kernel_spectrum import eigen_spectrum, trace_check
from lnlslab.wienerhopf.factorisation import (
    factorisation_grid,
    factorisation_residual,
    g_plus,
    instanton_zero_check,
    wh_peak_density,
)

logger = logging.getLogger(__name__)


@dataclass_json
@dataclass
class CheckReport:
    """Outcome of one check: passed iff |measured - expected| <= tolerance"""

    check_name: str
    measured: float
    expected: float
    tolerance: float
    passed: bool

    @classmethod
    def evaluate(
        cls, check_name: str, measured: float, expected: float, tolerance: float
    ) -> "CheckReport":
        """Builds a report and its verdict"""
        passed = math.isfinite(measured) and abs(measured - expected) <= tolerance
        return cls(check_name, float(measured), float(expected), float(tolerance), passed)


@dataclass
class Check:
    """A named identity with its base tolerance.

    compute returns (measured, expected). A relative check multiplies the
    tolerance by |expected|.
    """

    name: str
    compute: Callable[[], tuple[float, float]]
    tolerance: float
    relative: bool = False

    def run(self, scale: float = 1.0) -> CheckReport:
        """Evaluates the check with its tolerance multiplied by scale"""
        measured, expected = self.compute()
        tolerance = self.tolerance * scale
        if self.relative:
            tolerance *= abs(expected)
        report = CheckReport.evaluate(self.name, measured, expected, tolerance)
        logger.debug(
            f"{self.name}: measured {measured:.16g}, expected {expected:.16g}, "
            f"tolerance {tolerance:.1e}, {'passed' if report.passed else 'FAILED'}"
        )
        return report


def _energy_identity() -> tuple[float, float]:
    out = solve_rescaled(50.0)
    return out.inner_energy, TWO_PI * out.rho0 - 2.0


def _love_peak() -> tuple[float, float]:
    love = solve_love(20.0)
    return love.f0 - 1.0, solve_rescaled(20.0).total_density


def _love_duality() -> tuple[float, float]:
    return love_duality(solve_love(100.0)), solve_rescaled(100.0).total_density


def _wh_factorisation() -> tuple[float, float]:
    return factorisation_residual(factorisation_grid()), 0.0


def _trace_identity() -> tuple[float, float]:
    return trace_check(eigen_spectrum(50.0, top_k=1)), 0.0


def _instanton_zero() -> tuple[float, float]:
    residual, _ = instanton_zero_check()
    return residual, 0.0


def _g_normalisation() -> tuple[float, float]:
    return abs(g_plus(1e-4) - 1.0), 0.0


def _stirling() -> tuple[float, float]:
    return log_gamma_complex(complex(1.0, 100.0)).imag, stirling_im_log_gamma(100.0)


def _wh_peak() -> tuple[float, float]:
    return solve_rescaled(50.0).rho0, wh_peak_density(50.0)


CHECKS: tuple[Check, ...] = (
    Check("energy_identity", _energy_identity, 1e-12),
    Check("love_peak", _love_peak, 1e-10),
    Check("love_duality", _love_duality, 1e-10),
    Check("digamma_identity", digamma_identity_check, 1e-8),
    Check("profile_integral", profile_integral_check, 1e-6),
    Check("wh_factorisation", _wh_factorisation, 1e-10),
    Check("trace_identity", _trace_identity, 1e-10),
    Check("instanton_zero", _instanton_zero, 1e-14),
    Check("reflection", lambda: reflection_check(1.5), 1e-12, relative=True),
    Check("im_log_gamma_integral", lambda: im_log_gamma_integral_check(1.0), 1e-8),
    Check("g_plus_normalisation", _g_normalisation, 2e-4),
    Check("stirling_im_log_gamma", _stirling, 1e-3),
    Check("wh_peak_density", _wh_peak, 10.0 / 50.0),
)


def check_names() -> list[str]:
    """Names of the registered checks, in run order"""
    return [check.name for check in CHECKS]


def run_checks(
    profile: Optional[str] = None, names: Optional[list[str]] = None
) -> list[CheckReport]:
    """Runs the registered checks

    Args:
        profile (Optional[str], optional): "default" or "strict"; the configured
          profile when absent. The strict profile divides every tolerance by
          the configured strict factor.
        names (Optional[list[str]], optional): subset of check names, all when absent

    Raises:
        ValueError: an unknown check name

    Returns:
        list[CheckReport]: one report per check
    """
    previous = CONFIG.tolerance_profile
    if profile is not None:
        CONFIG.tolerance_profile = profile
    try:
        scale = CONFIG.tolerance_scale
    finally:
        # the profile applies to this call only
        CONFIG.tolerance_profile = previous
    selected = list(CHECKS)
    if names is not None:
        unknown = set(names) - set(check_names())
        if unknown:
            raise ValueError(f"Unknown checks {sorted(unknown)}, expected some of {check_names()}")
        selected = [check for check in CHECKS if check.name in names]
    reports = [check.run(scale) for check in selected]
    failed = [report.check_name for report in reports if not report.passed]
    logger.info(
        f"{len(reports) - len(failed)} of {len(reports)} checks passed"
        + (f"; failed: {failed}" if failed else "")
    )
    return reports
