"""CSV and JSON persistence for observation series, curve tables and reports."""

import json
import logging
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike, NDArray

from model.errors import ConfigurationError
from model.schemas import ObservationSeries

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _read_csv(path: PathLike, columns: tuple[str, ...]) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path, float_precision="round_trip")
    except FileNotFoundError as e:
        raise ConfigurationError(f"file not found: {path}") from e
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise ConfigurationError(f"cannot parse CSV {path}: {e}") from e

    header = tuple(str(c).strip() for c in frame.columns)
    if header != columns:
        raise ConfigurationError(
            f"{path}: expected header {','.join(columns)}, got {','.join(header)}"
        )
    frame.columns = list(columns)
    for column in columns:
        if not pd.api.types.is_numeric_dtype(frame[column]):
            raise ConfigurationError(f"{path}: column '{column}' must be numeric")
    return frame


def write_observations(obs: ObservationSeries, path: PathLike) -> None:
    """
    Write an observation series as CSV with header ``i,y``.

    Args:
        obs: Observation series
        path: Destination file
    """
    frame = pd.DataFrame({"i": np.arange(1, obs.n + 1), "y": obs.values})
    frame.to_csv(path, index=False, float_format="%.17g", lineterminator="\n")
    logger.info("Wrote %d observations to %s", obs.n, path)


def read_observations(
    path: PathLike, delta: float, seed: Optional[int] = None
) -> ObservationSeries:
    """
    Read an observation CSV written by :func:`write_observations`.

    Args:
        path: Source file
        delta: Noise standard deviation of the series
        seed: Optional seed token to attach

    Returns:
        ObservationSeries with the values exactly as written
    """
    frame = _read_csv(path, ("i", "y"))
    expected = np.arange(1, len(frame) + 1)
    if len(frame) == 0 or not np.array_equal(frame["i"].to_numpy(), expected):
        raise ConfigurationError(f"{path}: rows must be numbered 1..n in order")
    values = frame["y"].to_numpy(dtype=float)
    return ObservationSeries(n=len(values), delta=delta, values=values, seed=seed)


def read_curve_table(path: PathLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Read tabulated curve knots from a CSV with header ``t,sigma``."""
    frame = _read_csv(path, ("t", "sigma"))
    return frame["t"].to_numpy(dtype=float), frame["sigma"].to_numpy(dtype=float)


def write_replicates(estimates: ArrayLike, path: PathLike) -> None:
    """Write per-replicate estimates as CSV ``rep,iv_hat``."""
    values = np.asarray(estimates, dtype=float)
    frame = pd.DataFrame({"rep": np.arange(values.size), "iv_hat": values})
    frame.to_csv(path, index=False, float_format="%.17g", lineterminator="\n")
    logger.info("Wrote %d replicate estimates to %s", values.size, path)


def dump_json(payload: Any) -> str:
    """Serialize a report with stable key order."""
    return json.dumps(payload, indent=2, ensure_ascii=False)


def write_json(payload: Any, path: PathLike) -> None:
    """Write a JSON report followed by a newline."""
    Path(path).write_text(dump_json(payload) + "\n", encoding="utf-8")
    logger.info("Wrote report to %s", path)


def read_json(path: PathLike) -> Any:
    """Read a JSON document, mapping I/O and syntax failures to configuration errors."""
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise ConfigurationError(f"file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"invalid JSON in {path}: {e}") from e
