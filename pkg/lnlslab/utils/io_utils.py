"""io utils"""

# pylint: disable=logging-fstring-interpolation

import json
import logging
import os
from datetime import datetime, timezone
from typing import Any, Optional

import numpy as np
import pandas as pd
import yaml
from jsonschema import validate

from lnlslab.loader import LOADER
from lnlslab.version import __version__

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
GOLDEN_TABLES = ("ceff", "richardson", "eigenvalues", "density", "coefficients")
# columns that hold counts; every other numeric column is real-valued
INTEGER_COLUMNS = frozenset({"n", "n_points", "index", "kept_modes"})


def load_json(file_path: str) -> Any:
    """Load json document from file path"""
    with open(file_path, encoding="utf8") as fle:
        return json.load(fle)


def _plain(value: Any) -> Any:
    """numpy scalars to Python scalars, non-finite floats to None"""
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not np.isfinite(value):
        return None
    return value


def timestamp() -> str:
    """UTC time in ISO format, seconds resolution"""
    return datetime.now(timezone.utc).replace(microsecond=0).isoformat()


def render_table(
    frame: pd.DataFrame,
    output_format: str = "csv",
    metadata: Optional[dict[str, Any]] = None,
) -> str:
    """Serialises a result table as CSV or JSON text.

    CSV starts with a single "# generated <timestamp>" line, then a header
    row, with floats at 17 significant digits. JSON holds the rows as records
    next to a metadata object.

    Args:
        frame (pd.DataFrame): the table
        output_format (str, optional): "csv" or "json". Defaults to "csv".
        metadata (Optional[dict[str, Any]], optional): extra metadata for JSON

    Raises:
        ValueError: unknown format

    Returns:
        str: the serialised table
    """
    if output_format == "csv":
        body = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        return f"# generated {timestamp()}\n{body}"
    if output_format == "json":
        document = {
            "metadata": {
                "generated": timestamp(),
                "lnlslab_version": __version__,
                **{key: _plain(value) for key, value in (metadata or {}).items()},
            },
            "records": [
                {column: _plain(value) for column, value in row.items()}
                for row in frame.to_dict(orient="records")
            ],
        }
        return json.dumps(document, sort_keys=True, indent=4, ensure_ascii=False) + "\n"
    raise ValueError(f"Unknown output format '{output_format}'")


def export_table(
    frame: pd.DataFrame,
    file_path: str,
    output_format: str = "csv",
    metadata: Optional[dict[str, Any]] = None,
) -> str:
    """Writes render_table(frame, output_format, metadata) to file_path

    Args:
        frame (pd.DataFrame): the table
        file_path (str): destination, parent folders are created
        output_format (str, optional): "csv" or "json". Defaults to "csv".
        metadata (Optional[dict[str, Any]], optional): extra metadata for JSON

    Returns:
        str: the path written
    """
    text = render_table(frame, output_format, metadata)
    os.makedirs(os.path.dirname(os.path.abspath(file_path)), exist_ok=True)
    with open(file_path, "w", encoding="utf8", newline="") as fle:
        fle.write(text)
    logger.info(f"Wrote {len(frame)} rows to {file_path}")
    return file_path


def read_table(file_path: str) -> pd.DataFrame:
    """Reads a table written by export_table

    "%.17g" writes 10.0 as 10, so integer-looking columns are read back as
    float unless they are listed in INTEGER_COLUMNS.

    Args:
        file_path (str): a .csv or .json file

    Returns:
        pd.DataFrame: the rows
    """
    if file_path.endswith(".json"):
        frame = pd.DataFrame(load_json(file_path)["records"])
    else:
        frame = pd.read_csv(file_path, comment="#", encoding="utf8")
    real_columns = [
        column
        for column in frame.columns
        if pd.api.types.is_integer_dtype(frame[column]) and column not in INTEGER_COLUMNS
    ]
    return frame.astype({column: np.float64 for column in real_columns})


def validate_golden_table(document: Any) -> None:
    """Validate a golden table against its JSON Schema

    Raises:
        jsonschema.ValidationError: the document does not conform
    """
    json_schema = json.loads(LOADER.read("validation_schemas/golden_table.schema.json"))
    validate(document, json_schema)


def load_golden(name: str) -> dict[str, Any]:
    """Loads and validates a golden table shipped under etc/golden

    Args:
        name (str): one of GOLDEN_TABLES

    Raises:
        ValueError: unknown table name
        jsonschema.ValidationError: malformed file

    Returns:
        dict[str, Any]: the parsed table
    """
    if name not in GOLDEN_TABLES:
        raise ValueError(f"Unknown golden table '{name}', expected one of {GOLDEN_TABLES}")
    document = yaml.safe_load(LOADER.read(f"golden/{name}.yml"))
    validate_golden_table(document)
    return document
