"""solver commands"""
# pylint: disable=logging-fstring-interpolation

import logging
import sys
from time import perf_counter
from typing import Optional

import click
import click_log  # type: ignore
import pandas as pd

from lnlslab.asymptotics.records import SweepRecord, records_to_frame
from lnlslab.exceptions import IllConditionedSystemError, QuadratureConvergenceError
from lnlslab.help import solver_commands
from lnlslab.solver.sweep import sweep_solve
from lnlslab.utils.cli_utils import (
    emit_table,
    query_dict,
    resolve_output_format,
    resolve_q_values,
    resolve_workers,
    sweep_options,
)

logger = logging.getLogger(__name__)
click_log.basic_config(logger)

CONTEXT_SETTINGS = {"help_option_names": ["--help", "-h"]}  # help options


def _solve_frames(
    q_values: list[float], n_points: Optional[int], workers: int
) -> tuple[pd.DataFrame, list[SweepRecord], float]:
    start = perf_counter()
    try:
        outputs = sweep_solve(q_values, n_points=n_points, workers=workers)
    except (IllConditionedSystemError, QuadratureConvergenceError, ValueError) as exc:
        logger.error(f"The solve failed: {exc}")
        sys.exit(1)
    frame = pd.DataFrame([out.summary() for out in outputs])
    records = [SweepRecord.from_output(out) for out in outputs]
    return frame, records, perf_counter() - start


@click.command(
    "solve",
    context_settings=CONTEXT_SETTINGS,
    short_help=query_dict(solver_commands, ("solve", "short_help")),
)
@click_log.simple_verbosity_option(logger)
@sweep_options
def solve(
    q_values: Optional[list[float]],
    q_grid: Optional[list[float]],
    n_points: Optional[int],
    output_format: Optional[str],
    out: Optional[str],
    workers: Optional[int],
) -> None:
    """Solve the rescaled equation, one summary row per Q."""
    q_list = resolve_q_values(q_values, q_grid)
    output_format = resolve_output_format(output_format)
    frame, _, wall_time = _solve_frames(q_list, n_points, resolve_workers(workers))
    emit_table(
        frame,
        output_format,
        out,
        metadata={
            "command": "solve",
            "n_points": [int(n) for n in frame["n_points"]],
            "condition_estimate": [float(c) for c in frame["condition_estimate"]],
            "wall_time": wall_time,
        },
    )


@click.command(
    "sweep",
    context_settings=CONTEXT_SETTINGS,
    short_help=query_dict(solver_commands, ("sweep", "short_help")),
)
@click_log.simple_verbosity_option(logger)
@sweep_options
def sweep(
    q_values: Optional[list[float]],
    q_grid: Optional[list[float]],
    n_points: Optional[int],
    output_format: Optional[str],
    out: Optional[str],
    workers: Optional[int],
) -> None:
    """Solve over a list or grid of Q and emit sweep records."""
    q_list = resolve_q_values(q_values, q_grid)
    output_format = resolve_output_format(output_format)
    frame, records, wall_time = _solve_frames(q_list, n_points, resolve_workers(workers))
    capped = [float(q) for q in frame.loc[frame["capped"], "q_half_width"]]
    if capped:
        logger.warning(f"The default rule was capped for Q = {capped}")
    emit_table(
        records_to_frame(records),
        output_format,
        out,
        metadata={
            "command": "sweep",
            "n_points": [int(n) for n in frame["n_points"]],
            "capped": capped,
            "wall_time": wall_time,
        },
    )
