"""
Naive reference counts for arbitrary functions on small fields.

These enumerate the defining equations directly and are only used to cross-check
the fast row computations.
"""

import numpy as np

from src.config import CHUNK_ROWS, ORACLE_MAX_ORDER
from src.exceptions import FieldSizeError, InvalidParameterError
from src.field import FieldCtx

from .differential import _check_table


def _check_oracle_size(ctx: FieldCtx) -> None:
    if ctx.order > ORACLE_MAX_ORDER:
        raise FieldSizeError(f"Naive oracle needs order <= {ORACLE_MAX_ORDER}, got {ctx.order}")


def _rows_per_step(ctx: FieldCtx) -> int:
    # about CHUNK_ROWS * 16 pair cells per step
    return max(1, CHUNK_ROWS * 16 // ctx.order)


def ddt_oracle_entry(ctx: FieldCtx, f_table: np.ndarray, a: int, b: int) -> int:
    """|{x : F(x + a) - F(x) = b}| by direct enumeration."""
    f_table = _check_table(ctx, f_table)
    a, b = ctx.check_element(a), ctx.check_element(b)
    if a == 0:
        raise InvalidParameterError("Input difference a must be nonzero")
    count = 0
    for x in range(ctx.order):
        if ctx.sub(int(f_table[ctx.add(x, a)]), int(f_table[x])) == b:
            count += 1
    return count


def bct_oracle_row(ctx: FieldCtx, f_table: np.ndarray, a: int = 1) -> np.ndarray:
    """
    beta_F(a, b) for every b over all p^{2n} ordered pairs (x, y).

    Returns:
        Array of length p^n indexed by b with entry 0 set to 0

    Raises:
        FieldSizeError: If the field is larger than the oracle cap
        InvalidParameterError: If a = 0
    """
    _check_oracle_size(ctx)
    f_table = _check_table(ctx, f_table)
    a = ctx.check_element(a)
    if a == 0:
        raise InvalidParameterError("Input difference a must be nonzero")

    shifted = f_table[ctx.add_array(ctx.elements(), a)]
    counts = np.zeros(ctx.order, dtype=np.int64)
    rows = _rows_per_step(ctx)
    for start in range(0, ctx.order, rows):
        first = ctx.sub_array(f_table[start : start + rows, None], f_table[None, :])
        second = ctx.sub_array(shifted[start : start + rows, None], shifted[None, :])
        counts += np.bincount(first[first == second], minlength=ctx.order)
    counts[0] = 0
    return counts


def bct_oracle_entry(ctx: FieldCtx, f_table: np.ndarray, a: int, b: int) -> int:
    """
    Ordered pairs (x, y) with F(x) - F(y) = b and F(x + a) - F(y + a) = b.

    Args:
        ctx: Field context with order at most the oracle cap
        f_table: Value table of any function on the field
        a: Nonzero input difference
        b: Nonzero output difference

    Raises:
        FieldSizeError: If the field is larger than the oracle cap
        InvalidParameterError: If a or b is zero
    """
    _check_oracle_size(ctx)
    f_table = _check_table(ctx, f_table)
    a, b = ctx.check_element(a), ctx.check_element(b)
    if a == 0 or b == 0:
        raise InvalidParameterError("Boomerang entries need a != 0 and b != 0")

    shifted = f_table[ctx.add_array(ctx.elements(), a)]
    count = 0
    rows = _rows_per_step(ctx)
    for start in range(0, ctx.order, rows):
        first = ctx.sub_array(f_table[start : start + rows, None], f_table[None, :]) == b
        second = ctx.sub_array(shifted[start : start + rows, None], shifted[None, :]) == b
        count += int(np.count_nonzero(first & second))
    return count
