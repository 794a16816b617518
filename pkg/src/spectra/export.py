"""
CSV export of b-indexed rows.
"""

import logging
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from src.config import LOG_FORMAT, LOG_LEVEL

# Configure logging
logging.basicConfig(level=LOG_LEVEL, format=LOG_FORMAT)
logger = logging.getLogger(__name__)


def row_frame(row: np.ndarray, start: int = 0) -> pd.DataFrame:
    """Row as a two-column frame; b_index runs from start in canonical order."""
    row = np.asarray(row, dtype=np.int64)
    return pd.DataFrame({"b_index": np.arange(start, start + row.size, dtype=np.int64), "count": row})


def write_row_csv(path: Union[str, Path], row: np.ndarray, start: int = 0) -> Path:
    """
    Write a row as CSV with header b_index,count and LF line endings.

    Args:
        path: Destination file
        row: Counts in canonical b order
        start: Index of the first entry (1 for boomerang rows, which skip b = 0)

    Returns:
        The written path
    """
    path = Path(path)
    try:
        row_frame(row, start).to_csv(path, index=False, lineterminator="\n")
    except OSError as e:
        logger.error(f"Error writing row to {path}: {str(e)}")
        raise
    logger.info(f"Wrote {len(row)} rows to {path}")
    return path
