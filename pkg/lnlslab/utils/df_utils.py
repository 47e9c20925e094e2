"""df utils"""

# pylint: disable=logging-fstring-interpolation

import logging
import math
from typing import Any

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)


def cell_passes(measured: float, expected: float, tolerance: float, mode: str) -> bool:
    """Per-cell verdict.

    absolute: |measured - expected| <= tolerance
    relative: |measured - expected| <= tolerance * |expected|
    sign: measured and expected have the same nonzero sign

    Args:
        measured (float): computed value
        expected (float): golden value
        tolerance (float): tolerance of the column
        mode (str): "absolute", "relative" or "sign"

    Raises:
        ValueError: unknown mode

    Returns:
        bool: verdict, False for a nan measurement
    """
    if not math.isfinite(measured):
        return False
    if mode == "absolute":
        return abs(measured - expected) <= tolerance
    if mode == "relative":
        return abs(measured - expected) <= tolerance * abs(expected)
    if mode == "sign":
        return bool(measured != 0 and np.sign(measured) == np.sign(expected))
    raise ValueError(f"Unknown comparison mode '{mode}'")


def _matching_row(computed: pd.DataFrame, keys: list[str], golden_row: dict) -> Any:
    """The computed row whose key columns equal those of golden_row, or None"""
    mask = np.ones(len(computed), dtype=bool)
    for key in keys:
        mask &= np.isclose(computed[key].to_numpy(dtype=float), float(golden_row[key]))
    matches = computed[mask]
    if matches.empty:
        return None
    return matches.iloc[0]


def compare_with_golden(
    computed: pd.DataFrame, golden: dict[str, Any], scale: float = 1.0
) -> pd.DataFrame:
    """Side-by-side comparison of a computed table with a golden table

    Args:
        computed (pd.DataFrame): computed rows, containing the golden key columns
        golden (dict[str, Any]): a table from io_utils.load_golden
        scale (float, optional): factor applied to every tolerance. Defaults to 1.

    Returns:
        pd.DataFrame: one row per compared cell with expected, measured,
          tolerance, mode and passed
    """
    keys = list(golden["key"])
    cells = []
    for golden_row in golden["rows"]:
        row = _matching_row(computed, keys, golden_row)
        for column in golden["columns"]:
            name = column["name"]
            mode = column.get("mode", "absolute")
            expected = float(golden_row[name])
            tolerance = float(column["tolerance"]) * scale
            measured = math.nan if row is None else float(row[name])
            cell = {key: golden_row[key] for key in keys}
            cell.update(
                {
                    "column": name,
                    "expected": expected,
                    "measured": measured,
                    "difference": measured - expected,
                    "tolerance": tolerance,
                    "mode": mode,
                    "passed": cell_passes(measured, expected, tolerance, mode),
                }
            )
            cells.append(cell)
    comparison = pd.DataFrame(cells)
    failed = int((~comparison["passed"]).sum())
    logger.debug(f"{golden['name']}: {len(comparison) - failed} passed, {failed} failed")
    return comparison
