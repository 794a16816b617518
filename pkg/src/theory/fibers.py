"""
Predicted solution sets and exceptional row values, checked against brute force.
"""

import logging
from typing import Dict, Optional

import numpy as np

from src.config import LOG_FORMAT, LOG_LEVEL
from src.exceptions import InvalidParameterError
from src.field import FieldCtx
from src.spectra import PowerMapSpec, derivative_histogram

# Configure logging
logging.basicConfig(level=LOG_LEVEL, format=LOG_FORMAT)
logger = logging.getLogger(__name__)


def _sorted_unique(values) -> np.ndarray:
    return np.unique(np.asarray(list(values), dtype=np.int64))


def predicted_zero_fiber(ctx: FieldCtx) -> np.ndarray:
    """x with F(x + 1) = F(x): F_q without 0 and -1."""
    subfield = ctx.subfield_elements()
    return subfield[(subfield != 0) & (subfield != ctx.neg(1))]


def predicted_unit_fiber(ctx: FieldCtx) -> np.ndarray:
    """x with F(x + 1) - F(x) = 1."""
    if ctx.p == 2:
        if ctx.m % 2 == 1:
            w = ctx.primitive_cube_root()
            return _sorted_unique([0, 1, w, ctx.mul(w, w)])
        return _sorted_unique([0, 1])
    if ctx.q % 3 == 2:
        w = ctx.primitive_cube_root()
        return _sorted_unique([0, ctx.neg(w), ctx.neg(ctx.mul(w, w))])
    return _sorted_unique([0])


def predicted_special_boomerang_values(ctx: FieldCtx, power_map: PowerMapSpec) -> Dict[int, int]:
    """
    {b: beta_F(1, b)} at the output differences singled out by the closed forms.

    p = 2, m odd: 4 at 1, w, w^2. p odd, q = 2 mod 3: 2 at +-w, +-w^2, +-(w^2 - w).
    Empty for the other branches.
    """
    power_map.check_context(ctx)
    if ctx.p == 2 and ctx.m % 2 == 1:
        w = ctx.primitive_cube_root()
        return {b: 4 for b in sorted({1, w, ctx.mul(w, w)})}
    if ctx.p != 2 and ctx.q % 3 == 2:
        w = ctx.primitive_cube_root()
        w2 = ctx.mul(w, w)
        base = [w, w2, ctx.sub(w2, w)]
        points = set(base) | {ctx.neg(b) for b in base}
        return {b: 2 for b in sorted(points)}
    return {}


def expected_boomerang_uniformity(p: int, m: int) -> int:
    """4 for p = 2 with m odd, 0 for q = 3 (x^2 over F_9 is planar), else 2."""
    if p == 2 and m % 2 == 1:
        return 4
    if p**m == 3:
        return 0
    return 2


def expected_locally_apn(p: int, m: int) -> bool:
    """Rows outside F_p reach 2 once q > 3; for q = 2 and q = 3 they stay below it."""
    return p**m > 3


def odd_fiber_linkage_check(ctx: FieldCtx, power_map: PowerMapSpec, histogram: Optional[np.ndarray] = None) -> bool:
    """
    For p odd and b outside {0, 1, -1}: delta_F(1, b) <= 2, and delta_F(1, b) > 0 only when
    b^(q+1) = 4 with b != +-2, or theta = (b^(q+1) - 4) / b^(q+1) is a nonsquare of F_q.

    Raises:
        InvalidParameterError: If p = 2
    """
    if ctx.p == 2:
        raise InvalidParameterError("Linkage check applies to odd characteristic only")
    power_map.check_context(ctx)
    if histogram is None:
        histogram = derivative_histogram(ctx, power_map)

    b = ctx.elements()
    one, minus_one = 1, ctx.neg(1)
    two, minus_two = ctx.element_from_int(2), ctx.element_from_int(-2)
    four = ctx.element_from_int(4)
    rest = (b != 0) & (b != one) & (b != minus_one)

    norm = ctx.pow_array(b, ctx.q + 1)
    on_circle_root = (norm == four) & (b != two) & (b != minus_two)
    theta = np.zeros_like(b)
    theta[1:] = ctx.mul_array(ctx.sub_array(norm[1:], four), ctx.inv_array(norm[1:]))
    nonsquare_theta = (theta != 0) & (ctx.pow_array(theta, (ctx.q - 1) // 2) != 1)

    too_large = rest & (histogram > 2)
    unexplained = rest & (histogram > 0) & ~on_circle_root & ~nonsquare_theta
    bad = np.flatnonzero(too_large | unexplained)
    if bad.size:
        logger.warning(f"Odd-characteristic fiber linkage fails for {power_map} at b = {int(bad[0])}")
        return False
    return True
