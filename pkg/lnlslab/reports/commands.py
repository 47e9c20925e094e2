"""report commands"""
# pylint: disable=logging-fstring-interpolation

import logging
import os
import sys
from typing import Any, Optional

import click
import click_log  # type: ignore
import pandas as pd

from lnlslab.configuration.configuration import CONFIG
from lnlslab.exceptions import (
    EigenSolverError,
    FitRefusedError,
    IllConditionedSystemError,
)
from lnlslab.help import common_options, report_commands
from lnlslab.reports import plotdata as plot_data
from lnlslab.reports.checks import check_names, run_checks
from lnlslab.reports.tables import build_table
from lnlslab.utils.cli_utils import (
    emit_table,
    log_value_from_config,
    parse_q_grid,
    parse_q_list,
    query_dict,
    resolve_output_format,
    resolve_workers,
)
from lnlslab.utils.io_utils import GOLDEN_TABLES, export_table

logger = logging.getLogger(__name__)
click_log.basic_config(logger)

CONTEXT_SETTINGS = {"help_option_names": ["--help", "-h"]}  # help options

NUMERICAL_ERRORS = (
    EigenSolverError,
    FitRefusedError,
    IllConditionedSystemError,
    ValueError,
)

format_option = click.option(
    "--format",
    "output_format",
    type=click.Choice(["csv", "json"], case_sensitive=False),
    help=common_options["format"],
)
out_option = click.option("--out", type=click.Path(dir_okay=False), help=common_options["out"])
workers_option = click.option(
    "--workers", type=click.IntRange(min=1), help=common_options["workers"]
)
profile_option = click.option(
    "--profile",
    type=click.Choice(["default", "strict"], case_sensitive=False),
    help=common_options["profile"],
)


def _apply_profile(profile: Optional[str]) -> None:
    if profile is None:
        log_value_from_config("profile", CONFIG.tolerance_profile)
    else:
        CONFIG.tolerance_profile = profile


@click.command(
    "tables",
    context_settings=CONTEXT_SETTINGS,
    short_help=query_dict(report_commands, ("tables", "short_help")),
)
@click_log.simple_verbosity_option(logger)
@click.argument("name", type=click.Choice(list(GOLDEN_TABLES), case_sensitive=False))
@format_option
@click.option(
    "--out",
    type=click.Path(dir_okay=False),
    help=query_dict(report_commands, ("tables", "out")),
)
@workers_option
@profile_option
def tables(
    name: str,
    output_format: Optional[str],
    out: Optional[str],
    workers: Optional[int],
    profile: Optional[str],
) -> None:
    """Reproduce a reference table and compare it with its golden values."""
    output_format = resolve_output_format(output_format)
    _apply_profile(profile)
    try:
        computed, comparison = build_table(name, workers=resolve_workers(workers))
    except NUMERICAL_ERRORS as exc:
        logger.error(f"Table {name} could not be computed: {exc}")
        sys.exit(1)

    if out is None:
        out = os.path.join(CONFIG.output_folder, f"{name}_comparison.{output_format}")
        log_value_from_config("out", out)
    export_table(
        comparison,
        out,
        output_format,
        metadata={
            "command": "tables",
            "table": name,
            "profile": CONFIG.tolerance_profile,
            "computed": computed.to_dict(orient="records"),
        },
    )

    failed = comparison[~comparison["passed"]]
    click.echo(f"{name}: {len(comparison) - len(failed)} of {len(comparison)} cells passed")
    if not failed.empty:
        for _, cell in failed.iterrows():
            logger.error(
                f"{name} {cell['column']}: measured {cell['measured']:.10g}, "
                f"expected {cell['expected']:.10g}, tolerance {cell['tolerance']:.1e} "
                f"({cell['mode']})"
            )
        sys.exit(1)


@click.command(
    "checks",
    context_settings=CONTEXT_SETTINGS,
    short_help=query_dict(report_commands, ("checks", "short_help")),
)
@click_log.simple_verbosity_option(logger)
@profile_option
@click.option(
    "--name",
    "names",
    multiple=True,
    type=click.Choice(check_names()),
    help=query_dict(report_commands, ("checks", "name")),
)
@format_option
@out_option
def checks(
    profile: Optional[str],
    names: tuple[str, ...],
    output_format: Optional[str],
    out: Optional[str],
) -> None:
    """Run the identity checks and report each verdict."""
    output_format = resolve_output_format(output_format)
    _apply_profile(profile)
    try:
        reports = run_checks(names=list(names) or None)
    except NUMERICAL_ERRORS as exc:
        logger.error(f"The checks could not be run: {exc}")
        sys.exit(1)

    frame = pd.DataFrame([report.to_dict() for report in reports])  # type: ignore[attr-defined]
    emit_table(
        frame,
        output_format,
        out,
        metadata={"command": "checks", "profile": CONFIG.tolerance_profile},
    )
    failed = [report.check_name for report in reports if not report.passed]
    if failed:
        logger.error(f"Failed checks: {failed}")
        sys.exit(1)


# invoke_without_command=True -> forces the application not to show aids before
# losing them with a --h
@click.group(context_settings=CONTEXT_SETTINGS, invoke_without_command=True)
@click_log.simple_verbosity_option(logger)
def plotdata() -> None:
    """
    Sub-commands writing columnar data for plots.
    """


def _emit_plot(
    frame_builder: Any, output_format: Optional[str], out: Optional[str], kind: str
) -> None:
    """Builds a plot table, logging numerical failures, and writes it"""
    output_format = resolve_output_format(output_format)
    try:
        frame = frame_builder()
    except NUMERICAL_ERRORS as exc:
        logger.error(f"Plot data '{kind}' could not be computed: {exc}")
        sys.exit(1)
    emit_table(frame, output_format, out, metadata={"command": "plotdata", "kind": kind})


@plotdata.command(
    "profile", short_help=query_dict(report_commands, ("plotdata", "profile"))
)
@click_log.simple_verbosity_option(logger)
@click.option("--q", "q_values", callback=parse_q_list, help=common_options["q"])
@format_option
@out_option
@workers_option
def profile(
    q_values: Optional[list[float]],
    output_format: Optional[str],
    out: Optional[str],
    workers: Optional[int],
) -> None:
    """(xi/Q, rho) per Q, Q = 20, 50, 100, 200 unless --q is given."""
    q_list = q_values or list(plot_data.PROFILE_Q)
    _emit_plot(
        lambda: plot_data.profile_curves(q_list, workers=resolve_workers(workers)),
        output_format,
        out,
        "profile",
    )


@plotdata.command("inner", short_help=query_dict(report_commands, ("plotdata", "inner")))
@click_log.simple_verbosity_option(logger)
@click.option(
    "--q",
    "q_half_width",
    default=100.0,
    show_default=True,
    type=click.FloatRange(min=1.0, min_open=True),
    help="Half-width Q of the comparison.",
)
@format_option
@out_option
def inner(q_half_width: float, output_format: Optional[str], out: Optional[str]) -> None:
    """(xi, rho, inner, outer) at one Q."""
    _emit_plot(
        lambda: plot_data.inner_comparison(q_half_width), output_format, out, "inner"
    )


@plotdata.command("edge", short_help=query_dict(report_commands, ("plotdata", "edge")))
@click_log.simple_verbosity_option(logger)
@click.option("--q", "q_values", callback=parse_q_list, help=common_options["q"])
@click.option(
    "--s-ref",
    "s_ref",
    default=10.0,
    show_default=True,
    type=click.FloatRange(min=0.0),
    help=query_dict(report_commands, ("plotdata", "s_ref")),
)
@format_option
@out_option
@workers_option
def edge(
    q_values: Optional[list[float]],
    s_ref: float,
    output_format: Optional[str],
    out: Optional[str],
    workers: Optional[int],
) -> None:
    """Normalised edge profile per Q, Q = 100, 200 unless --q is given."""
    q_list = q_values or list(plot_data.EDGE_Q)
    _emit_plot(
        lambda: plot_data.edge_curves(q_list, s_ref=s_ref, workers=resolve_workers(workers)),
        output_format,
        out,
        "edge",
    )


@plotdata.command(
    "spectrum", short_help=query_dict(report_commands, ("plotdata", "spectrum"))
)
@click_log.simple_verbosity_option(logger)
@click.option("--q", "q_values", callback=parse_q_list, help=common_options["q"])
@click.option("--q-grid", "q_grid", callback=parse_q_grid, help=common_options["q_grid"])
@format_option
@out_option
@workers_option
def spectrum_data(
    q_values: Optional[list[float]],
    q_grid: Optional[list[float]],
    output_format: Optional[str],
    out: Optional[str],
    workers: Optional[int],
) -> None:
    """(Q, Delta_0, Delta_1, Q Delta_0), Q = 20 to 300 unless given."""
    q_list = sorted(set(q_values or []) | set(q_grid or [])) or list(plot_data.SPECTRUM_Q)
    _emit_plot(
        lambda: plot_data.spectrum_curves(q_list, workers=resolve_workers(workers)),
        output_format,
        out,
        "spectrum",
    )


@plotdata.command("sweep", short_help=query_dict(report_commands, ("plotdata", "sweep")))
@click_log.simple_verbosity_option(logger)
@click.option("--q", "q_values", callback=parse_q_list, help=common_options["q"])
@click.option("--q-grid", "q_grid", callback=parse_q_grid, help=common_options["q_grid"])
@format_option
@out_option
@workers_option
def sweep_data(
    q_values: Optional[list[float]],
    q_grid: Optional[list[float]],
    output_format: Optional[str],
    out: Optional[str],
    workers: Optional[int],
) -> None:
    """Sweep records per Q."""
    q_list = sorted(set(q_values or []) | set(q_grid or []))
    if not q_list:
        raise click.UsageError("Provide at least one half-width with --q or --q-grid.")
    _emit_plot(
        lambda: plot_data.sweep_curves(q_list, workers=resolve_workers(workers)),
        output_format,
        out,
        "sweep",
    )


@plotdata.command("wh", short_help=query_dict(report_commands, ("plotdata", "wh")))
@click_log.simple_verbosity_option(logger)
@click.option(
    "--p-range",
    "p_range",
    default="-20:20:400",
    show_default=True,
    help=query_dict(report_commands, ("plotdata", "p_range")),
)
@format_option
@out_option
def wh(p_range: str, output_format: Optional[str], out: Optional[str]) -> None:
    """Wiener-Hopf factors and residuals on a real grid."""
    try:
        low, high, count = p_range.split(":")
        p_min, p_max, points = float(low), float(high), int(count)
    except ValueError as exc:
        raise click.BadParameter(
            f"'{p_range}' is not of the form min:max:count", param_hint="--p-range"
        ) from exc
    if p_max <= p_min or points < 2:
        raise click.BadParameter(
            f"Need min < max and count >= 2, got '{p_range}'", param_hint="--p-range"
        )
    _emit_plot(lambda: plot_data.wh_curves(p_min, p_max, points), output_format, out, "wh")
