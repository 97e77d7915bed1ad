"""CSV persistence of aggregated rows and empirical CDFs."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import astuple
from pathlib import Path

import numpy as np
import numpy.typing as npt
import pandas as pd

from mimo_pcsim.domain.entities import ResultRow

logger = logging.getLogger(__name__)

RESULT_COLUMNS = ("sweep", "scheme", "metric", "mean", "stderr", "n")
CDF_COLUMNS = ("value", "probability")


def rows_frame(rows: Sequence[ResultRow]) -> pd.DataFrame:
    """Rows as a frame with the fixed column order.

    Raises:
        ValueError: If ``rows`` is empty.
    """
    if not rows:
        raise ValueError("no result rows to write")
    return pd.DataFrame([astuple(r) for r in rows], columns=list(RESULT_COLUMNS))


def cdf_frame(samples: npt.ArrayLike) -> pd.DataFrame:
    """Sorted ``(value, rank / n)`` pairs of the empirical CDF.

    Raises:
        ValueError: If ``samples`` is empty.
    """
    values = np.sort(np.asarray(samples, dtype=np.float64).ravel())
    if values.size == 0:
        raise ValueError("empirical CDF of an empty sample")
    probability = np.arange(1, values.size + 1) / values.size
    return pd.DataFrame({"value": values, "probability": probability})


def _write(frame: pd.DataFrame, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format="%.10g", lineterminator="\n")
    logger.info("Wrote results", extra={"path": str(path), "rows": len(frame)})
    return path


def emit_csv(rows: Sequence[ResultRow], path: Path) -> Path:
    """Write one CSV row per (sweep value, scheme, metric)."""
    return _write(rows_frame(rows), path)


def emit_cdf(samples: npt.ArrayLike, path: Path) -> Path:
    return _write(cdf_frame(samples), path)
