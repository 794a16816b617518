"""
Sparse spectrum tables {multiplicity -> count}.
"""

from typing import Dict, Iterable, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.exceptions import InvalidParameterError

SpectrumKind = Literal["differential", "boomerang"]


class SpectrumTable(BaseModel):
    """Multiset of row values: entries[i] = number of b whose row value is i."""

    model_config = ConfigDict(frozen=True)

    kind: SpectrumKind = Field(..., description="Row the table summarises: differential or boomerang")
    order: int = Field(..., gt=1, description="Field order p^n the table was computed over")
    entries: Dict[int, int] = Field(..., description="Multiplicity -> positive count")

    @field_validator("entries")
    @classmethod
    def _positive_counts(cls, entries: Dict[int, int]) -> Dict[int, int]:
        for multiplicity, count in entries.items():
            if multiplicity < 0:
                raise ValueError(f"Multiplicity must be non-negative, got {multiplicity}")
            if count <= 0:
                raise ValueError(f"Count for multiplicity {multiplicity} must be positive, got {count}")
        return dict(sorted(entries.items()))

    @classmethod
    def from_histogram(cls, values: np.ndarray, kind: SpectrumKind, order: int) -> "SpectrumTable":
        """Count how many positions of a row histogram carry each value."""
        multiplicities, counts = np.unique(np.asarray(values), return_counts=True)
        return cls(kind=kind, order=order, entries={int(i): int(c) for i, c in zip(multiplicities, counts)})

    @classmethod
    def from_labels(cls, kind: SpectrumKind, order: int, labelled: Iterable[Tuple[int, int]]) -> "SpectrumTable":
        """Build from (multiplicity, count) labels; colliding labels are summed and zero counts dropped."""
        merged: Dict[int, int] = {}
        for multiplicity, count in labelled:
            merged[int(multiplicity)] = merged.get(int(multiplicity), 0) + int(count)
        return cls(kind=kind, order=order, entries={i: c for i, c in merged.items() if c != 0})

    @classmethod
    def from_pairs(cls, kind: SpectrumKind, order: int, pairs: Iterable[Iterable[int]]) -> "SpectrumTable":
        return cls(kind=kind, order=order, entries={int(i): int(c) for i, c in pairs})

    def as_pairs(self) -> List[List[int]]:
        return [[i, c] for i, c in sorted(self.entries.items())]

    def total(self) -> int:
        return sum(self.entries.values())

    def weighted_total(self) -> int:
        return sum(i * c for i, c in self.entries.items())

    def expected_total(self) -> int:
        return self.order if self.kind == "differential" else self.order - 1

    def check_totals(self) -> bool:
        """Count and weighted sum both p^n for differential tables; count p^n - 1 for boomerang tables."""
        if self.total() != self.expected_total():
            return False
        return self.kind != "differential" or self.weighted_total() == self.order

    def validate_totals(self) -> "SpectrumTable":
        """
        Raises:
            InvalidParameterError: If the totals do not hold
        """
        if not self.check_totals():
            raise InvalidParameterError(
                f"{self.kind} spectrum {self.as_pairs()} violates its totals for order {self.order}"
            )
        return self

    def first_mismatch(self, other: "SpectrumTable") -> Optional[Tuple[int, int, int]]:
        """(multiplicity, count here, count there) for the smallest differing multiplicity."""
        for multiplicity in sorted(set(self.entries) | set(other.entries)):
            mine = self.entries.get(multiplicity, 0)
            theirs = other.entries.get(multiplicity, 0)
            if mine != theirs:
                return multiplicity, mine, theirs
        return None


def _max_multiplicity(spectrum: SpectrumTable, kind: SpectrumKind) -> int:
    if spectrum.kind != kind:
        raise InvalidParameterError(f"Expected a {kind} spectrum, got {spectrum.kind}")
    if not spectrum.entries:
        raise InvalidParameterError("Spectrum table is empty")
    return max(spectrum.entries)


def differential_uniformity(spectrum: SpectrumTable) -> int:
    """delta(F): largest multiplicity with positive count (row a = 1 suffices for power maps)."""
    return _max_multiplicity(spectrum, "differential")


def boomerang_uniformity(spectrum: SpectrumTable) -> int:
    """beta(F): largest multiplicity with positive count."""
    return _max_multiplicity(spectrum, "boomerang")
