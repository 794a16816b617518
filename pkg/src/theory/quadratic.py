"""
Quadratic-character facts and the unit-circle quadratic y^2 + b*y + b^(1-q) = 0.
"""

import logging
from enum import Enum
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator

from src.config import CHUNK_ROWS, LOG_FORMAT, LOG_LEVEL
from src.exceptions import InvalidParameterError
from src.field import FieldCtx

# Configure logging
logging.basicConfig(level=LOG_LEVEL, format=LOG_FORMAT)
logger = logging.getLogger(__name__)


class QuadraticCharacter(str, Enum):
    SQUARE = "square"
    NONSQUARE = "nonsquare"
    ZERO = "zero"


def minus_three_character(p: int, m: int) -> QuadraticCharacter:
    """
    Character of -3 in F_q, q = p^m, decided from q mod 3 alone.

    -3 is a nonsquare exactly when q = 2 mod 3. For p = 3 the element -3 is 0.

    Raises:
        InvalidParameterError: If p = 2
    """
    if p == 2:
        raise InvalidParameterError("Quadratic character of -3 is undefined for p = 2")
    if p == 3:
        return QuadraticCharacter.ZERO
    return QuadraticCharacter.NONSQUARE if pow(p, m, 3) == 2 else QuadraticCharacter.SQUARE


def minus_three_is_square(p: int, m: int) -> bool:
    """False iff p^m = 2 mod 3. Returns True for p = 3; check minus_three_character for the zero case."""
    return minus_three_character(p, m) != QuadraticCharacter.NONSQUARE


def minus_three_field_check(ctx: FieldCtx) -> bool:
    """
    Compare minus_three_is_square with the character of -3 computed inside F_q.

    Raises:
        InvalidParameterError: If p <= 3
    """
    if ctx.p <= 3:
        raise InvalidParameterError(f"-3 has no quadratic character in characteristic {ctx.p}")
    in_field = ctx.is_square_subfield(ctx.element_from_int(-3))
    return in_field == minus_three_is_square(ctx.p, ctx.m)


class QuadUnitCircleReport(BaseModel):
    """Roots of y^2 + b*y + b^(1-q) on the unit circle, next to the count the criterion predicts."""

    b: int = Field(..., gt=0, description="Nonzero coefficient b (canonical index)")
    solution_count_in_unit_circle: int = Field(..., ge=0, le=2, description="Roots found on U_{q+1}")
    solutions: List[int] = Field(default_factory=list, description="The roots, sorted")
    predicted_count: int = Field(..., ge=0, le=2, description="Count given by the trace or character criterion")
    discriminant: Optional[int] = Field(None, description="(b^(q+1) - 4) / b^(q-1), p odd")
    theta: Optional[int] = Field(None, description="(b^(q+1) - 4) / b^(q+1), p odd")
    trace_bit: Optional[int] = Field(None, description="Tr(1 / b^(q+1)), p = 2")

    @model_validator(mode="after")
    def _count_matches_roots(self) -> "QuadUnitCircleReport":
        if len(self.solutions) != self.solution_count_in_unit_circle:
            raise ValueError("solution_count_in_unit_circle must equal the number of listed solutions")
        return self

    @property
    def consistent(self) -> bool:
        return self.predicted_count == self.solution_count_in_unit_circle


def _circle_roots(ctx: FieldCtx, b: np.ndarray) -> np.ndarray:
    """Boolean matrix [len(b), q+1]: unit_circle[j] is a root for b[i]."""
    constant = ctx.pow_array(b, 1 - ctx.q)
    y = ctx.unit_circle[None, :]
    value = ctx.add_array(ctx.add_array(ctx.mul_array(y, y), ctx.mul_array(b[:, None], y)), constant[:, None])
    return value == 0


def _predicted_counts(ctx: FieldCtx, b: np.ndarray) -> np.ndarray:
    """Root count on U_{q+1} from the trace criterion (p = 2) or the character of theta (p odd)."""
    norm = ctx.pow_array(b, ctx.q + 1)
    if ctx.p == 2:
        return 2 * (ctx.trace_array(ctx.inv_array(norm)) == 1)
    theta = ctx.mul_array(ctx.sub_array(norm, ctx.element_from_int(4)), ctx.inv_array(norm))
    counts = np.where(ctx.pow_array(theta, (ctx.q - 1) // 2) == 1, 0, 2)
    counts[theta == 0] = 1
    return counts


def unit_quadratic_solve(ctx: FieldCtx, b: int) -> QuadUnitCircleReport:
    """
    Solve y^2 + b*y + b^(1-q) = 0 over U_{q+1} by substitution.

    Args:
        ctx: Field context
        b: Nonzero element

    Returns:
        QuadUnitCircleReport with the enumerated roots and the predicted count

    Raises:
        InvalidParameterError: If b = 0
    """
    b = ctx.check_element(b)
    if b == 0:
        raise InvalidParameterError("b must be nonzero")

    b_row = np.array([b], dtype=np.int64)
    roots = np.sort(ctx.unit_circle[_circle_roots(ctx, b_row)[0]])
    predicted = int(_predicted_counts(ctx, b_row)[0])

    norm = ctx.norm_q(b)
    details = {}
    if ctx.p == 2:
        details["trace_bit"] = ctx.subfield_trace(ctx.inv(norm))
    else:
        shifted = ctx.sub(norm, ctx.element_from_int(4))
        details["discriminant"] = ctx.div(shifted, ctx.pow(b, ctx.q - 1))
        details["theta"] = ctx.div(shifted, norm)

    return QuadUnitCircleReport(
        b=b,
        solution_count_in_unit_circle=int(roots.size),
        solutions=[int(y) for y in roots],
        predicted_count=predicted,
        **details,
    )


class QuadSurveyReport(BaseModel):
    """Outcome of checking the root-count criterion for every nonzero b."""

    checked: int = Field(..., ge=0, description="Number of b examined")
    mismatches: int = Field(..., ge=0, description="b whose enumerated and predicted counts differ")
    first_mismatch: Optional[int] = Field(None, description="Smallest such b")

    @property
    def passed(self) -> bool:
        return self.mismatches == 0


def unit_quadratic_survey(ctx: FieldCtx) -> QuadSurveyReport:
    """Run the unit_quadratic_solve comparison for every b != 0 in blocks of rows."""
    rows = max(1, CHUNK_ROWS // (ctx.q + 1))
    mismatches = 0
    first: Optional[int] = None
    for start in range(1, ctx.order, rows):
        b = np.arange(start, min(start + rows, ctx.order), dtype=np.int64)
        found = np.count_nonzero(_circle_roots(ctx, b), axis=1)
        bad = b[found != _predicted_counts(ctx, b)]
        if bad.size:
            mismatches += int(bad.size)
            first = int(bad[0]) if first is None else first
    if mismatches:
        logger.warning(f"Unit-circle quadratic criterion failed for {mismatches} values of b (first b = {first})")
    return QuadSurveyReport(checked=ctx.order - 1, mismatches=mismatches, first_mismatch=first)


def _require_cube_root_branch(ctx: FieldCtx) -> int:
    if ctx.p == 2 or ctx.q % 3 != 2:
        raise InvalidParameterError(f"Condition applies only to p odd with q = 2 mod 3, got p={ctx.p}, q={ctx.q}")
    return ctx.primitive_cube_root()


def cube_root_exclusion_mask(ctx: FieldCtx) -> np.ndarray:
    """cube_root_exclusion_condition for every index at once; index 0 is False."""
    w = _require_cube_root_branch(ctx)
    b = ctx.elements()[1:]
    lhs = ctx.sub_array(ctx.pow_array(b, ctx.q + 1), ctx.element_from_int(4))
    twist = ctx.pow_array(b, ctx.q - 1)
    hit = (lhs == ctx.mul_array(twist, w)) | (lhs == ctx.mul_array(twist, ctx.mul(w, w)))
    return np.concatenate([[False], hit])


def cube_root_exclusion_condition(ctx: FieldCtx, b: int) -> bool:
    """
    True iff b^(q+1) - 4 = w^2 * b^(q-1) for w or w^2 in place of w; such b never have delta_F(1, b) = 2.

    Raises:
        InvalidParameterError: If p = 2, q != 2 mod 3 or b = 0
    """
    w = _require_cube_root_branch(ctx)
    b = ctx.check_element(b)
    if b == 0:
        raise InvalidParameterError("b must be nonzero")
    lhs = ctx.sub(ctx.norm_q(b), ctx.element_from_int(4))
    twist = ctx.pow(b, ctx.q - 1)
    return any(lhs == ctx.mul(ctx.pow(root, 2), twist) for root in (w, ctx.mul(w, w)))
