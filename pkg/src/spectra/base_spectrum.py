"""
Base class for exhaustive row-spectrum computations of power maps.
"""

import time
from abc import ABC, abstractmethod
from typing import Optional

import numpy as np

from src.field import FieldCtx

from .power_map import PowerMapSpec
from .tables import SpectrumKind, SpectrumTable


class BaseSpectrum(ABC):
    """Abstract base class for the differential and boomerang row computations."""

    kind: SpectrumKind

    def __init__(self, ctx: FieldCtx, power_map: PowerMapSpec):
        """
        Initialize the spectrum computation.

        Args:
            ctx: Built field context
            power_map: Power map over the same field

        Raises:
            InvalidParameterError: If ctx and power_map disagree on (p, m)
        """
        power_map.check_context(ctx)
        self.ctx = ctx
        self.power_map = power_map
        self.is_computed = False
        self._values: Optional[np.ndarray] = None
        self._histogram: Optional[np.ndarray] = None
        self.elapsed_ms = 0.0

    @property
    def values(self) -> np.ndarray:
        """Value table F(x) for all x, computed once."""
        if self._values is None:
            self._values = self.power_map.value_table(self.ctx)
        return self._values

    @abstractmethod
    def compute_histogram(self) -> np.ndarray:
        """
        Compute the a = 1 row.

        Returns:
            Array of length p^n indexed by b
        """
        pass

    def histogram(self) -> np.ndarray:
        """Cached a = 1 row."""
        if not self.is_computed:
            start = time.perf_counter()
            self._histogram = self.compute_histogram()
            self.elapsed_ms = (time.perf_counter() - start) * 1000
            self.is_computed = True
        return self._histogram

    @abstractmethod
    def row_for_spectrum(self) -> np.ndarray:
        """The part of the row the spectrum is taken over."""
        pass

    def spectrum(self) -> SpectrumTable:
        return SpectrumTable.from_histogram(self.row_for_spectrum(), self.kind, self.ctx.order)

    def uniformity(self) -> int:
        return int(self.row_for_spectrum().max())
