"""CSV tables with JSON metadata sidecars, and signal readers"""

import json
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Union

import numpy as np
import pandas as pd

from fractal_fidelity import __version__
from fractal_fidelity.utils.errors import InvalidConfigError
from fractal_fidelity.utils.logger import setup_logger

logger = setup_logger(__name__)

# 17 significant digits round-trip every double exactly
FLOAT_FORMAT = "%.17g"
SIGNAL_COLUMNS = ("F", "value", "signal", "x")

PathLike = Union[str, Path]


def sidecar_path(path: PathLike) -> Path:
    """series.csv -> series.meta.json"""
    return Path(path).with_suffix(".meta.json")


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Path):
        return str(value)
    if hasattr(value, "value"):
        return value.value
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def write_json(path: PathLike, data: Dict[str, Any]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(data, indent=2, sort_keys=True, default=_jsonable) + "\n", encoding="utf-8"
    )
    return path


def write_table(
    frame: pd.DataFrame, path: PathLike, metadata: Optional[Dict[str, Any]] = None
) -> Path:
    """
    Write one CSV table (single header line) and its metadata sidecar

    Args:
        frame: Table to write
        path: CSV destination
        metadata: Provenance for the sidecar; the tool version is always added

    Returns:
        Path of the CSV file
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    write_json(
        sidecar_path(path),
        {
            "tool": "fractal-fidelity",
            "version": __version__,
            "file": path.name,
            "columns": list(frame.columns),
            "rows": len(frame),
            **(metadata or {}),
        },
    )
    logger.debug(f"Wrote {len(frame)} rows to {path}")
    return path


def write_series(values: np.ndarray, path: PathLike, metadata: Optional[Dict[str, Any]] = None) -> Path:
    """F(t) as columns (t, F)"""
    frame = pd.DataFrame({"t": np.arange(len(values), dtype=np.int64), "F": np.asarray(values)})
    return write_table(frame, path, metadata)


def write_matrix(
    values: np.ndarray,
    path: PathLike,
    column_labels: Sequence[float],
    metadata: Optional[Dict[str, Any]] = None,
) -> Path:
    """G_rows x G_columns grid; header holds the column coordinates, row coordinates go in the sidecar"""
    frame = pd.DataFrame(
        np.asarray(values, dtype=np.float64),
        columns=[FLOAT_FORMAT % label for label in column_labels],
    )
    return write_table(frame, path, metadata)


def read_signal(path: PathLike, column: Optional[str] = None) -> np.ndarray:
    """
    Load a sampled signal from a CSV file

    Args:
        path: CSV file with a header line
        column: Column to read; defaults to the first of F, value, signal, x, else the
            last numeric column

    Returns:
        Signal as float64 array
    """
    try:
        frame = pd.read_csv(path, float_precision="round_trip")
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise InvalidConfigError(f"Cannot read signal file {path}: {e}") from e

    if column is None:
        column = next((c for c in SIGNAL_COLUMNS if c in frame.columns), None)
    if column is None:
        numeric = frame.select_dtypes(include="number").columns
        if len(numeric) == 0:
            raise InvalidConfigError(f"No numeric column in {path}")
        column = numeric[-1]
    if column not in frame.columns:
        raise InvalidConfigError(f"Column {column!r} not found in {path}")

    values = pd.to_numeric(frame[column], errors="coerce").to_numpy(dtype=np.float64)
    if np.isnan(values).any():
        raise InvalidConfigError(f"Column {column!r} of {path} holds non-numeric entries")
    return values
