"""
Closed-form differential and boomerang spectra of x^(k(q-1)) over F_{q^2}.
"""

from enum import Enum
from typing import List, Tuple

from pydantic import BaseModel, Field, field_serializer, model_validator

from src.exceptions import InvalidParameterError
from src.spectra import PowerMapSpec, SpectrumTable


class SpectrumBranch(str, Enum):
    """Which closed form applies to (p, m)."""

    P2_M_EVEN = "p=2 m even"
    P2_M_ODD = "p=2 m odd"
    P_ODD_Q_2_MOD_3 = "p odd q=2 mod 3"
    P_ODD_OTHERWISE = "p odd otherwise"


def spectrum_branch(p: int, m: int) -> SpectrumBranch:
    if p == 2:
        return SpectrumBranch.P2_M_EVEN if m % 2 == 0 else SpectrumBranch.P2_M_ODD
    return SpectrumBranch.P_ODD_Q_2_MOD_3 if pow(p, m, 3) == 2 else SpectrumBranch.P_ODD_OTHERWISE


class PredictedSpectra(BaseModel):
    """Predicted tables for one (p, m), independent of the valid k chosen."""

    differential: SpectrumTable = Field(..., description="Predicted differential spectrum")
    boomerang: SpectrumTable = Field(..., description="Predicted boomerang spectrum")
    branch: SpectrumBranch = Field(..., description="Closed form that produced the tables")

    @field_serializer("differential", "boomerang")
    def _spectrum_pairs(self, table: SpectrumTable) -> List[List[int]]:
        return table.as_pairs()

    @model_validator(mode="after")
    def _valid_totals(self) -> "PredictedSpectra":
        if self.differential.kind != "differential" or self.boomerang.kind != "boomerang":
            raise ValueError("PredictedSpectra needs one differential and one boomerang table")
        self.differential.validate_totals()
        self.boomerang.validate_totals()
        return self


def _differential_labels(p: int, m: int) -> List[Tuple[int, int]]:
    q = p**m
    half = (q * q - 1) // 2
    branch = spectrum_branch(p, m)
    if branch == SpectrumBranch.P2_M_EVEN:
        labels = [(0, 2 ** (2 * m - 1) + 2 ** (m - 1) - 2), (2, 2 ** (2 * m - 1) - 2 ** (m - 1) + 1)]
    elif branch == SpectrumBranch.P2_M_ODD:
        labels = [(0, 2 ** (2 * m - 1) + 2 ** (m - 1) - 1), (2, 2 ** (2 * m - 1) - 2 ** (m - 1) - 1), (4, 1)]
    elif branch == SpectrumBranch.P_ODD_Q_2_MOD_3:
        labels = [(0, half - (q - 1)), (1, 3 * (q - 1)), (2, half - 2 * q), (3, 2)]
    else:
        labels = [(0, half - (q + 1)), (1, 3 * q - 1), (2, half - 2 * (q - 1))]
    # b = 0 is the only output difference hit q - 2 times
    return labels + [(q - 2, 1)]


def _boomerang_labels(p: int, m: int) -> List[Tuple[int, int]]:
    q = p**m
    half = (q * q - 1) // 2
    branch = spectrum_branch(p, m)
    if branch == SpectrumBranch.P2_M_EVEN:
        return [(0, 2 ** (2 * m - 1) + 2 ** (m - 1) - 2), (2, 2 ** (2 * m - 1) - 2 ** (m - 1) + 1)]
    if branch == SpectrumBranch.P2_M_ODD:
        return [(0, 2 ** (2 * m - 1) + 2 ** (m - 1) - 3), (2, 2 ** (2 * m - 1) - 2 ** (m - 1) - 1), (4, 3)]
    if branch == SpectrumBranch.P_ODD_Q_2_MOD_3:
        return [(0, half + 2 * q - 6), (2, half - 2 * q + 6)]
    return [(0, half + 2 * (q - 1)), (2, half - 2 * (q - 1))]


def predict_differential_spectrum(p: int, m: int, k: int) -> SpectrumTable:
    """
    Closed-form differential spectrum; colliding multiplicities are merged.

    Raises:
        InvalidParameterError: If (p, m, k) is not a valid power map
        GcdError: If gcd(k, q+1) != 1
    """
    spec = PowerMapSpec(p, m, k)
    return SpectrumTable.from_labels("differential", spec.order, _differential_labels(spec.p, spec.m))


def predict_boomerang_spectrum(p: int, m: int, k: int) -> SpectrumTable:
    """
    Closed-form boomerang spectrum.

    Raises:
        InvalidParameterError: If (p, m, k) is not a valid power map
        GcdError: If gcd(k, q+1) != 1
    """
    spec = PowerMapSpec(p, m, k)
    return SpectrumTable.from_labels("boomerang", spec.order, _boomerang_labels(spec.p, spec.m))


def predict_spectra(p: int, m: int, k: int) -> PredictedSpectra:
    return PredictedSpectra(
        differential=predict_differential_spectrum(p, m, k),
        boomerang=predict_boomerang_spectrum(p, m, k),
        branch=spectrum_branch(p, m),
    )


def moment_identity_check(spectrum: SpectrumTable, p: int, n: int) -> bool:
    """
    True iff sum(count) = p^n and sum(multiplicity * count) = p^n.

    Raises:
        InvalidParameterError: If the spectrum is not differential
    """
    if spectrum.kind != "differential":
        raise InvalidParameterError(f"Moment identities apply to differential spectra, got {spectrum.kind}")
    order = p**n
    return spectrum.total() == order and spectrum.weighted_total() == order
