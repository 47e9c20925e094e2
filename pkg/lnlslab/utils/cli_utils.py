"""CLI utils"""

# pylint: disable=logging-fstring-interpolation

import logging

from typing import Any, Mapping, Sequence, Union, Optional
from functools import reduce

import click
import numpy as np
import pandas as pd

from lnlslab.configuration.configuration import CONFIG
from lnlslab.help import common_options
from lnlslab.utils.io_utils import export_table, render_table

logger = logging.getLogger(__name__)


def query_dict(dictionary: Mapping[Any, Any], keys: Sequence[Any]) -> Union[Any, None]:
    """Access a nested value in a dictionary corresponding
    to a series of keys.

    Args:
        dictionary: A dictionary containing anything.
        keys: A sequence of values corresponding to keys
            in `dictionary`

    Returns:
        The nested value corresponding to the given series
        of keys, or `None` is such a value doesn't exist.
    """

    def extract(dictionary: Any, key: Any) -> Union[Any, None]:
        """Get value associated with key, defaulting to None."""
        if dictionary is None or not isinstance(dictionary, dict):
            return None
        return dictionary.get(key)

    return reduce(extract, keys, dictionary)  # type: ignore


def log_value_from_config(arg_name: str, config_value: Any) -> None:
    """Logs when getting a value from the config

    Args:
        arg_name (str): Name of the argument. Used for logging.
        config_value (Any): The value in the config
    """
    logger.info(
        f"The {arg_name} argument is being taken from configuration file, i.e., {config_value}."
    )


def parse_q_list(
    ctx: Any,  # pylint: disable=unused-argument
    param: Any,
    q_string: Optional[str],
) -> Optional[list[float]]:
    """Parse and validate a comma separated string of half-widths

    Args:
        ctx (Any): click option context
        param (Any): click option
        q_string (Optional[str]): comma separated values, e.g. "10,50,100"

    Raises:
        click.BadParameter: If a value is not a number or is not positive

    Returns:
        Optional[list[float]]: the half-widths, or None when the option is absent
    """
    if not q_string:
        return None

    values = []
    for item in q_string.split(","):
        try:
            value = float(item)
        except ValueError as exc:
            raise click.BadParameter(
                f"'{item}' is not a number", param=param
            ) from exc
        if not np.isfinite(value) or value <= 0:
            raise click.BadParameter(
                f"Q must be positive and finite, got {item}", param=param
            )
        values.append(value)
    return values


def parse_q_grid(
    ctx: Any,  # pylint: disable=unused-argument
    param: Any,
    grid_string: Optional[str],
) -> Optional[list[float]]:
    """Parse a log-spaced grid given as "min:max:count"

    Args:
        ctx (Any): click option context
        param (Any): click option
        grid_string (Optional[str]): "min:max:count"

    Raises:
        click.BadParameter: If the string is malformed or the range is invalid

    Returns:
        Optional[list[float]]: count log-spaced values from min to max inclusive
    """
    if not grid_string:
        return None

    parts = grid_string.split(":")
    if len(parts) != 3:
        raise click.BadParameter(
            f"'{grid_string}' is not of the form min:max:count", param=param
        )
    try:
        q_min, q_max, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise click.BadParameter(
            f"'{grid_string}' is not of the form min:max:count", param=param
        ) from exc
    if q_min <= 0 or q_max < q_min or count < 1:
        raise click.BadParameter(
            f"Need 0 < min <= max and count >= 1, got '{grid_string}'", param=param
        )
    if count == 1:
        return [q_min]
    return [float(q) for q in np.geomspace(q_min, q_max, count)]


def resolve_q_values(
    q_values: Optional[list[float]], q_grid: Optional[list[float]]
) -> list[float]:
    """Merges --q and --q-grid into one sorted list without duplicates

    Args:
        q_values (Optional[list[float]]): values from --q
        q_grid (Optional[list[float]]): values from --q-grid

    Raises:
        click.UsageError: If neither option was given

    Returns:
        list[float]: ascending half-widths
    """
    merged = set(q_values or []) | set(q_grid or [])
    if not merged:
        raise click.UsageError("Provide at least one half-width with --q or --q-grid.")
    return sorted(merged)


def resolve_output_format(output_format: Optional[str]) -> str:
    """--format, or the configured format when the flag is absent"""
    if output_format is None:
        output_format = CONFIG.output_format
        log_value_from_config("format", output_format)
    return output_format


def resolve_workers(workers: Optional[int]) -> int:
    """--workers, or the configured pool size when the flag is absent"""
    if workers is None:
        workers = CONFIG.workers
        log_value_from_config("workers", workers)
    return workers


def emit_table(
    frame: pd.DataFrame,
    output_format: str,
    out: Optional[str] = None,
    metadata: Optional[dict[str, Any]] = None,
) -> None:
    """Writes a result table to out, or to standard output when out is None

    Args:
        frame (pd.DataFrame): the table
        output_format (str): "csv" or "json"
        out (Optional[str], optional): destination file
        metadata (Optional[dict[str, Any]], optional): extra JSON metadata
    """
    if out is None:
        click.echo(render_table(frame, output_format, metadata), nl=False)
    else:
        export_table(frame, out, output_format, metadata)


def sweep_options(func):  # type: ignore
    """Options shared by the commands that solve over a set of half-widths"""
    options = [
        click.option(
            "--q", "q_values", callback=parse_q_list, help=common_options["q"]
        ),
        click.option(
            "--q-grid", "q_grid", callback=parse_q_grid, help=common_options["q_grid"]
        ),
        click.option(
            "--n", "n_points", type=click.IntRange(min=1), help=common_options["n"]
        ),
        click.option(
            "--format",
            "output_format",
            type=click.Choice(["csv", "json"], case_sensitive=False),
            help=common_options["format"],
        ),
        click.option("--out", type=click.Path(dir_okay=False), help=common_options["out"]),
        click.option(
            "--workers", type=click.IntRange(min=1), help=common_options["workers"]
        ),
    ]
    for option in reversed(options):
        func = option(func)
    return func
