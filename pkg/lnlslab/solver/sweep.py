"""Sweeps of the rescaled solver over many half-widths"""

from functools import partial
from typing import Optional, Sequence

from lnlslab.configuration.configuration import CONFIG
from lnlslab.solver.nystrom import SolveOutput, solve_rescaled
from lnlslab.utils.general import map_over_q


def sweep_solve(
    q_values: Sequence[float],
    n_points: Optional[int] = None,
    workers: Optional[int] = None,
) -> list[SolveOutput]:
    """Solves at every Q, sorted ascending

    Args:
        q_values (Sequence[float]): half-widths, no duplicates
        n_points (Optional[int], optional): explicit N for every solve
        workers (Optional[int], optional): pool size, defaults to the configured one

    Returns:
        list[SolveOutput]: one solve per Q
    """
    pool = CONFIG.workers if workers is None else workers
    return map_over_q(partial(solve_rescaled, n_points=n_points), q_values, pool)
