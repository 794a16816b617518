"""
Validated inputs for the CLI commands.
"""

import logging
from math import gcd
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from src.config import LOG_FORMAT, LOG_LEVEL, MAX_ORDER
from src.exceptions import FieldSizeError
from src.spectra import coprime_ks

# Configure logging
logging.basicConfig(level=LOG_LEVEL, format=LOG_FORMAT)
logger = logging.getLogger(__name__)


class AnalyzeRequest(BaseModel):
    """One parameter tuple, optionally on an explicit field polynomial."""

    p: int = Field(..., gt=1, description="Prime characteristic")
    m: int = Field(..., ge=1, description="q = p^m")
    k: int = Field(..., ge=1, description="Exponent parameter, coprime to q+1")
    modulus: Optional[Tuple[int, ...]] = Field(None, description="Field polynomial, low-to-high coefficients")

    @field_validator("modulus", mode="before")
    @classmethod
    def _parse_modulus(cls, value):
        if isinstance(value, str):
            value = value.strip()
            return tuple(int(c) for c in value.split(",")) if value else None
        return value


class SweepRequest(BaseModel):
    """A parameter grid: every p in p_list, every m up to m_max, k chosen by policy."""

    p_list: List[int] = Field(..., min_length=1, description="Characteristics to sweep")
    m_max: int = Field(..., ge=1, description="Largest m")
    k_policy: Literal["all-coprime", "list"] = Field("all-coprime", description="How k values are chosen")
    ks: List[int] = Field(default_factory=list, description="k values for the list policy")

    @field_validator("p_list")
    @classmethod
    def _distinct_sorted(cls, p_list: List[int]) -> List[int]:
        return sorted(set(p_list))

    @model_validator(mode="after")
    def _ks_for_list_policy(self) -> "SweepRequest":
        if self.k_policy == "list" and not self.ks:
            raise ValueError("k_policy 'list' needs at least one k")
        if any(k < 1 for k in self.ks):
            raise ValueError("k values must be positive")
        return self

    def check_orders(self) -> None:
        """
        Raises:
            FieldSizeError: If any p^(2m) in the grid exceeds the order cap
        """
        for p in self.p_list:
            if p ** (2 * self.m_max) > MAX_ORDER:
                raise FieldSizeError(f"Field order {p}^{2 * self.m_max} exceeds the cap {MAX_ORDER}")

    def tuples(self) -> List[Tuple[int, int, int]]:
        """(p, m, k) in grid order; list-policy k not coprime to q+1 are skipped."""
        grid = []
        for p in self.p_list:
            for m in range(1, self.m_max + 1):
                q = p**m
                if self.k_policy == "all-coprime":
                    ks = coprime_ks(q)
                else:
                    ks = []
                    for k in self.ks:
                        if gcd(k, q + 1) == 1:
                            ks.append(k)
                        else:
                            logger.warning(f"Skipping k={k} for (p={p}, m={m}): gcd(k, {q + 1}) = {gcd(k, q + 1)}")
                grid.extend((p, m, k) for k in ks)
        return grid
