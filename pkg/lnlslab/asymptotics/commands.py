"""asymptotics commands"""
# pylint: disable=logging-fstring-interpolation

import logging
import sys
from typing import Optional

import click
import click_log  # type: ignore
import pandas as pd

from lnlslab.asymptotics.records import SweepRecord, records_from_frame
from lnlslab.asymptotics.resurgence import (
    TARGET_RATIO,
    coefficient_records,
    leading_coefficients,
    ratio_test,
    resurgence_fit,
)
from lnlslab.exceptions import FitRefusedError, IllConditionedSystemError
from lnlslab.help import asymptotics_commands, common_options
from lnlslab.utils.cli_utils import (
    emit_table,
    parse_q_grid,
    parse_q_list,
    query_dict,
    resolve_output_format,
    resolve_workers,
)
from lnlslab.utils.io_utils import read_table

logger = logging.getLogger(__name__)
click_log.basic_config(logger)

CONTEXT_SETTINGS = {"help_option_names": ["--help", "-h"]}  # help options


def _load_records(
    sweep_file: Optional[str],
    q_values: Optional[list[float]],
    q_grid: Optional[list[float]],
    workers: int,
) -> list[SweepRecord]:
    """Records from a sweep file, from --q/--q-grid, or from the configured grid"""
    if sweep_file is not None:
        logger.info(f"Reading sweep records from '{sweep_file}'")
        return records_from_frame(read_table(sweep_file))
    q_list = sorted(set(q_values or []) | set(q_grid or [])) or None
    return coefficient_records(q_list, workers=workers)


@click.command(
    "resurgence",
    context_settings=CONTEXT_SETTINGS,
    short_help=query_dict(asymptotics_commands, ("resurgence", "short_help")),
)
@click_log.simple_verbosity_option(logger)
@click.option(
    "--input",
    "sweep_file",
    type=click.Path(exists=True, dir_okay=False),
    help="Sweep table written by `lnlslab sweep`; solved here when omitted.",
)
@click.option("--q", "q_values", callback=parse_q_list, help=common_options["q"])
@click.option("--q-grid", "q_grid", callback=parse_q_grid, help=common_options["q_grid"])
@click.option(
    "--n-max",
    "n_max",
    type=click.IntRange(min=1),
    help=query_dict(asymptotics_commands, ("resurgence", "n_max")),
)
@click.option(
    "--svd-threshold",
    "svd_threshold",
    type=click.FloatRange(min=0.0, max=1.0, min_open=True, max_open=True),
    help=query_dict(asymptotics_commands, ("resurgence", "svd_threshold")),
)
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["csv", "json"], case_sensitive=False),
    help=common_options["format"],
)
@click.option("--out", type=click.Path(dir_okay=False), help=common_options["out"])
@click.option("--workers", type=click.IntRange(min=1), help=common_options["workers"])
def resurgence(
    sweep_file: Optional[str],
    q_values: Optional[list[float]],
    q_grid: Optional[list[float]],
    n_max: Optional[int],
    svd_threshold: Optional[float],
    output_format: Optional[str],
    out: Optional[str],
    workers: Optional[int],
) -> None:
    """Coefficients of the subtracted peak density with stability flags."""
    output_format = resolve_output_format(output_format)
    try:
        records = _load_records(sweep_file, q_values, q_grid, resolve_workers(workers))
        fit = resurgence_fit(records, n_max=n_max, svd_threshold=svd_threshold)
    except (FitRefusedError, IllConditionedSystemError, ValueError) as exc:
        logger.error(f"The coefficient fit failed: {exc}")
        sys.exit(1)

    try:
        ratios = ratio_test(leading_coefficients(fit))
        logger.info(f"Ratio test {ratios}, to be compared with {TARGET_RATIO:.6f}")
    except ValueError as exc:
        logger.warning(f"Ratio test skipped: {exc}")
        ratios = []

    frame = pd.DataFrame(
        {
            "label": fit.basis_labels,
            "coefficient": fit.coefficients,
            "spread": fit.spread,
            "stable": fit.stable,
        }
    )
    emit_table(
        frame,
        output_format,
        out,
        metadata={
            "command": "resurgence",
            "records": len(records),
            "fit_range": list(fit.fit_range),
            "residual_max": fit.residual_max,
            "condition_estimate": fit.condition_estimate,
            "kept_modes": fit.kept_modes,
            "ratio_test": ratios,
        },
    )
