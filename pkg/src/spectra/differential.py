"""
Differential rows of the power map: delta_F(1, b) for every b.
"""

import logging
from typing import Optional

import numpy as np

from src.config import LOG_FORMAT, LOG_LEVEL, ORACLE_MAX_ORDER
from src.exceptions import FieldSizeError, InvalidParameterError
from src.field import FieldCtx

from .base_spectrum import BaseSpectrum
from .power_map import PowerMapSpec
from .tables import SpectrumTable

# Configure logging
logging.basicConfig(level=LOG_LEVEL, format=LOG_FORMAT)
logger = logging.getLogger(__name__)


def _check_table(ctx: FieldCtx, f_table: np.ndarray) -> np.ndarray:
    f_table = np.asarray(f_table, dtype=np.int64)
    if f_table.shape != (ctx.order,):
        raise InvalidParameterError(f"Value table must have {ctx.order} entries, got shape {f_table.shape}")
    if f_table.size and (f_table.min() < 0 or f_table.max() >= ctx.order):
        raise InvalidParameterError("Value table holds indices outside the field")
    return f_table


def derivative_table(ctx: FieldCtx, f_table: np.ndarray, a: int = 1) -> np.ndarray:
    """D_a F(x) = F(x + a) - F(x) for every x."""
    f_table = _check_table(ctx, f_table)
    xs = ctx.elements()
    return ctx.sub_array(f_table[ctx.add_array(xs, a)], f_table)


def derivative_histogram_table(ctx: FieldCtx, f_table: np.ndarray, a: int = 1) -> np.ndarray:
    """
    delta_F(a, b) for all b, for an arbitrary value table.

    Args:
        ctx: Field context
        f_table: F(x) for every canonical index x
        a: Nonzero input difference

    Returns:
        Array of length p^n indexed by b

    Raises:
        InvalidParameterError: If a = 0 or the table does not fit the field
    """
    if int(a) == 0:
        raise InvalidParameterError("Input difference a must be nonzero")
    ctx.check_element(a)
    return np.bincount(derivative_table(ctx, f_table, a), minlength=ctx.order)


def derivative_histogram(ctx: FieldCtx, power_map: PowerMapSpec) -> np.ndarray:
    """
    delta_F(1, b) for every b in F_{p^n}, b = 0 included.

    Raises:
        InvalidParameterError: If ctx and power_map disagree on (p, m)
    """
    power_map.check_context(ctx)
    return derivative_histogram_table(ctx, power_map.value_table(ctx), 1)


def derivative_solutions(ctx: FieldCtx, power_map: PowerMapSpec, b: int) -> np.ndarray:
    """Sorted x with F(x + 1) - F(x) = b."""
    power_map.check_context(ctx)
    b = ctx.check_element(b)
    return np.flatnonzero(derivative_table(ctx, power_map.value_table(ctx), 1) == b).astype(np.int64)


def ddt_entry(
    ctx: FieldCtx, power_map: PowerMapSpec, a: int, b: int, histogram: Optional[np.ndarray] = None
) -> int:
    """
    delta_F(a, b) through the power-map reduction delta_F(a, b) = delta_F(1, b / a^d).

    Args:
        ctx: Field context
        power_map: Power map over ctx
        a: Nonzero input difference
        b: Output difference
        histogram: Precomputed derivative_histogram, reused when given

    Raises:
        InvalidParameterError: If a = 0
    """
    power_map.check_context(ctx)
    a, b = ctx.check_element(a), ctx.check_element(b)
    if a == 0:
        raise InvalidParameterError("Input difference a must be nonzero")
    if histogram is None:
        histogram = derivative_histogram(ctx, power_map)
    return int(histogram[ctx.div(b, ctx.pow(a, power_map.d))])


def differential_spectrum(ctx: FieldCtx, power_map: PowerMapSpec) -> SpectrumTable:
    """For each i, how many b have delta_F(1, b) = i."""
    return DifferentialSpectrum(ctx, power_map).spectrum()


def locally_apn_table(ctx: FieldCtx, f_table: np.ndarray) -> bool:
    """True iff max{delta_F(1, b) : b outside F_p} = 2."""
    histogram = derivative_histogram_table(ctx, f_table, 1)
    # indices 0..p-1 are exactly the prime field
    return int(histogram[ctx.p :].max()) == 2


def locally_apn(ctx: FieldCtx, power_map: PowerMapSpec) -> bool:
    power_map.check_context(ctx)
    return locally_apn_table(ctx, power_map.value_table(ctx))


def full_differential_uniformity(ctx: FieldCtx, f_table: np.ndarray) -> int:
    """
    max over a != 0 and all b of delta_F(a, b), by enumerating every row.

    Raises:
        FieldSizeError: If the field is larger than the naive-oracle cap
    """
    if ctx.order > ORACLE_MAX_ORDER:
        raise FieldSizeError(f"Full DDT needs order <= {ORACLE_MAX_ORDER}, got {ctx.order}")
    f_table = _check_table(ctx, f_table)
    best = 0
    for a in range(1, ctx.order):
        best = max(best, int(derivative_histogram_table(ctx, f_table, a).max()))
    return best


class DifferentialSpectrum(BaseSpectrum):
    """Row a = 1 of the DDT of a power map and its spectrum."""

    kind = "differential"

    def compute_histogram(self) -> np.ndarray:
        try:
            histogram = derivative_histogram_table(self.ctx, self.values, 1)
        except Exception as e:
            logger.error(f"Error computing differential row for {self.power_map}: {str(e)}")
            raise
        logger.debug(f"Differential row for {self.power_map}: max {int(histogram.max())}")
        return histogram

    def row_for_spectrum(self) -> np.ndarray:
        return self.histogram()
