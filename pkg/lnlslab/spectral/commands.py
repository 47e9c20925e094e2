"""spectral commands"""
# pylint: disable=logging-fstring-interpolation

import logging
import sys
from typing import Optional

import click
import click_log  # type: ignore
import pandas as pd

from lnlslab.exceptions import EigenSolverError
from lnlslab.help import spectral_commands
from lnlslab.spectral.kernel_spectrum import DEFAULT_TOP_K, sweep_spectra
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


@click.command(
    "spectrum",
    context_settings=CONTEXT_SETTINGS,
    short_help=query_dict(spectral_commands, ("spectrum", "short_help")),
)
@click_log.simple_verbosity_option(logger)
@sweep_options
@click.option(
    "--top-k",
    "top_k",
    default=DEFAULT_TOP_K,
    show_default=True,
    type=click.IntRange(min=1),
    help=query_dict(spectral_commands, ("spectrum", "top_k")),
)
@click.option(
    "--full",
    is_flag=True,
    default=False,
    help=query_dict(spectral_commands, ("spectrum", "full")),
)
def spectrum(
    q_values: Optional[list[float]],
    q_grid: Optional[list[float]],
    n_points: Optional[int],
    output_format: Optional[str],
    out: Optional[str],
    workers: Optional[int],
    top_k: int,
    full: bool,
) -> None:
    """Spectrum of the truncated kernel, one summary row per Q."""
    q_list = resolve_q_values(q_values, q_grid)
    output_format = resolve_output_format(output_format)
    try:
        spectra = sweep_spectra(
            q_list, n_points=n_points, top_k=top_k, workers=resolve_workers(workers)
        )
    except (EigenSolverError, ValueError) as exc:
        logger.error(f"The eigensolve failed: {exc}")
        sys.exit(1)

    if full:
        frame = pd.concat(
            [
                pd.DataFrame(
                    {
                        "q_half_width": spec.q_half_width,
                        "index": range(spec.eigenvalues.size),
                        "eigenvalue": spec.eigenvalues,
                        "gap": spec.gaps,
                    }
                )
                for spec in spectra
            ],
            ignore_index=True,
        )
    else:
        frame = pd.DataFrame([spec.summary() for spec in spectra])
    emit_table(
        frame,
        output_format,
        out,
        metadata={
            "command": "spectrum",
            "n_points": [spec.n_points for spec in spectra],
            "full": full,
        },
    )
