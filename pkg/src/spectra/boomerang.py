"""
Boomerang rows of the power map: beta_F(1, b) for b != 0.

The system F(x) - F(y) = b, F(x+1) - F(y+1) = b is the same as
F(x) - F(y) = b together with D_1F(x) = D_1F(y), so ordered pairs only need
to be enumerated inside each class of equal derivative value.
"""

import logging
from typing import Optional

import numpy as np

from src.config import CHUNK_ROWS, LOG_FORMAT, LOG_LEVEL
from src.exceptions import InvalidParameterError
from src.field import FieldCtx

from .base_spectrum import BaseSpectrum
from .differential import _check_table, derivative_table
from .power_map import PowerMapSpec
from .tables import SpectrumTable

# Configure logging
logging.basicConfig(level=LOG_LEVEL, format=LOG_FORMAT)
logger = logging.getLogger(__name__)

# Pair differences evaluated per numpy step
PAIR_BUDGET = CHUNK_ROWS * 64


def _count_class_pairs(ctx: FieldCtx, members: np.ndarray, counts: np.ndarray) -> None:
    """Add F(x) - F(y) over ordered pairs x != y of each row of members (classes x class size)."""
    n_classes, size = members.shape
    columns = np.arange(size)
    classes_per_step = max(1, PAIR_BUDGET // (size * size))
    for c0 in range(0, n_classes, classes_per_step):
        batch = members[c0 : c0 + classes_per_step]
        rows_per_step = max(1, PAIR_BUDGET // (batch.shape[0] * size))
        for r0 in range(0, size, rows_per_step):
            rows = batch[:, r0 : r0 + rows_per_step]
            diffs = ctx.sub_array(rows[:, :, None], batch[:, None, :])
            off_diagonal = np.arange(r0, r0 + rows.shape[1])[:, None] != columns[None, :]
            counts += np.bincount(diffs[:, off_diagonal].ravel(), minlength=ctx.order)


def boomerang_histogram_table(ctx: FieldCtx, f_table: np.ndarray, a: int = 1) -> np.ndarray:
    """
    beta_F(a, b) for an arbitrary value table by derivative-class grouping.

    Args:
        ctx: Field context
        f_table: F(x) for every canonical index x
        a: Nonzero input difference

    Returns:
        Array of length p^n indexed by b. Entry 0 is always 0: b ranges over
        F_{p^n}^* and the slot is kept only so indices stay canonical.

    Raises:
        InvalidParameterError: If a = 0 or the table does not fit the field
    """
    if int(a) == 0:
        raise InvalidParameterError("Input difference a must be nonzero")
    f_table = _check_table(ctx, f_table)
    derivative = derivative_table(ctx, f_table, a)

    by_class = np.argsort(derivative, kind="stable")
    values = f_table[by_class]
    _, starts, sizes = np.unique(derivative[by_class], return_index=True, return_counts=True)

    counts = np.zeros(ctx.order, dtype=np.int64)
    for size in np.unique(sizes[sizes > 1]):
        size = int(size)
        class_starts = starts[sizes == size]
        members = values[class_starts[:, None] + np.arange(size)[None, :]]
        _count_class_pairs(ctx, members, counts)
    counts[0] = 0
    return counts


def boomerang_histogram(ctx: FieldCtx, power_map: PowerMapSpec) -> np.ndarray:
    """
    beta_F(1, b) indexed by b, index 0 held at 0.

    Raises:
        InvalidParameterError: If ctx and power_map disagree on (p, m)
    """
    power_map.check_context(ctx)
    return boomerang_histogram_table(ctx, power_map.value_table(ctx), 1)


def bct_entry(
    ctx: FieldCtx, power_map: PowerMapSpec, a: int, b: int, histogram: Optional[np.ndarray] = None
) -> int:
    """
    beta_F(a, b) = beta_F(1, b / a^d) for a power map.

    Raises:
        InvalidParameterError: If a or b is zero
    """
    power_map.check_context(ctx)
    a, b = ctx.check_element(a), ctx.check_element(b)
    if a == 0 or b == 0:
        raise InvalidParameterError("Boomerang entries need a != 0 and b != 0")
    if histogram is None:
        histogram = boomerang_histogram(ctx, power_map)
    return int(histogram[ctx.div(b, ctx.pow(a, power_map.d))])


def boomerang_spectrum(ctx: FieldCtx, power_map: PowerMapSpec) -> SpectrumTable:
    """For each i, how many nonzero b have beta_F(1, b) = i."""
    return BoomerangSpectrum(ctx, power_map).spectrum()


class BoomerangSpectrum(BaseSpectrum):
    """Row a = 1 of the BCT of a power map and its spectrum."""

    kind = "boomerang"

    def compute_histogram(self) -> np.ndarray:
        try:
            histogram = boomerang_histogram_table(self.ctx, self.values, 1)
        except Exception as e:
            logger.error(f"Error computing boomerang row for {self.power_map}: {str(e)}")
            raise
        logger.debug(f"Boomerang row for {self.power_map}: max {int(histogram.max())}")
        return histogram

    def row_for_spectrum(self) -> np.ndarray:
        return self.histogram()[1:]
