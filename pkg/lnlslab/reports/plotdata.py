"""Columnar data behind the profile, edge, gap and sweep figures.

Every function returns a long-format DataFrame: one row per point, with a
q_half_width column telling the curves apart where there are several.
"""

from typing import Optional, Sequence

import numpy as np
import pandas as pd

from lnlslab.asymptotics.records import SweepRecord, records_to_frame
from lnlslab.solver.nystrom import nystrom_interpolate, solve_rescaled
from lnlslab.solver.observables import edge_profile, inner_profile_approx, outer_profile_approx
from lnlslab.solver.sweep import sweep_solve
from lnlslab.spectral.kernel_spectrum import sweep_spectra
from lnlslab.wienerhopf.factorisation import factorisation_grid

PROFILE_Q = (20.0, 50.0, 100.0, 200.0)
EDGE_Q = (100.0, 200.0)
SPECTRUM_Q = (20.0, 50.0, 100.0, 200.0, 300.0)


def profile_curves(
    q_values: Sequence[float] = PROFILE_Q, workers: Optional[int] = None
) -> pd.DataFrame:
    """(xi/Q, rho) at the quadrature nodes, one curve per Q"""
    frames = []
    for out in sweep_solve(q_values, workers=workers):
        frames.append(
            pd.DataFrame(
                {
                    "q_half_width": out.q_half_width,
                    "xi": out.nodes,
                    "xi_over_q": out.nodes / out.q_half_width,
                    "rho": out.rho_at_nodes,
                }
            )
        )
    return pd.concat(frames, ignore_index=True)


def inner_comparison(q_half_width: float = 100.0, count: int = 401) -> pd.DataFrame:
    """rho on a uniform grid of [-Q, Q] next to the inner and composite profiles

    Args:
        q_half_width (float, optional): Q > 1. Defaults to 100.
        count (int, optional): grid points. Defaults to 401.

    Returns:
        pd.DataFrame: columns xi, rho, inner, outer, inner_deviation
    """
    out = solve_rescaled(q_half_width)
    xi = np.linspace(-q_half_width, q_half_width, count)
    rho = nystrom_interpolate(out, xi)
    inner = inner_profile_approx(xi, q_half_width)
    return pd.DataFrame(
        {
            "xi": xi,
            "rho": rho,
            "inner": inner,
            "outer": outer_profile_approx(xi, q_half_width),
            "inner_deviation": np.abs(rho - inner),
        }
    )


def edge_curves(
    q_values: Sequence[float] = EDGE_Q,
    s_max: float = 20.0,
    count: int = 201,
    s_ref: float = 10.0,
    workers: Optional[int] = None,
) -> pd.DataFrame:
    """rho(Q - s)/rho(Q - s_ref) for s in [0, s_max], one curve per Q

    Raises:
        ValueError: s_max or s_ref deeper than 2Q for some Q
    """
    depths = np.linspace(0.0, s_max, count)
    frames = []
    for out in sweep_solve(q_values, workers=workers):
        frames.append(
            pd.DataFrame(
                {
                    "q_half_width": out.q_half_width,
                    "s": depths,
                    "profile": edge_profile(out, depths, s_ref),
                }
            )
        )
    return pd.concat(frames, ignore_index=True)


def spectrum_curves(
    q_values: Sequence[float] = SPECTRUM_Q, workers: Optional[int] = None
) -> pd.DataFrame:
    """(Q, Delta_0, Delta_1, Q Delta_0), one row per Q"""
    rows = []
    for spec in sweep_spectra(q_values, top_k=2, workers=workers):
        rows.append(
            {
                "q_half_width": spec.q_half_width,
                "delta_0": float(spec.gaps[0]),
                "delta_1": float(spec.gaps[1]),
                "q_delta_0": spec.q_half_width * float(spec.gaps[0]),
            }
        )
    return pd.DataFrame(rows)


def sweep_curves(q_values: Sequence[float], workers: Optional[int] = None) -> pd.DataFrame:
    """Sweep records (Q, rho0, D, E_inner, C_eff), one row per Q"""
    return records_to_frame(
        [SweepRecord.from_output(out) for out in sweep_solve(q_values, workers=workers)]
    )


def wh_curves(p_min: float = -20.0, p_max: float = 20.0, count: int = 400) -> pd.DataFrame:
    """Wiener-Hopf factors and identity residuals on a real grid"""
    return factorisation_grid(p_min, p_max, count)
