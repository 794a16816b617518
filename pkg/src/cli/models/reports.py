"""
Report models written by the CLI.
"""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, field_serializer, model_validator

from src.spectra import SpectrumTable
from src.theory import PredictedSpectra


class PowerMapParams(BaseModel):
    """Parameters of the analysed power map and the field it lives in."""

    p: int = Field(..., description="Prime characteristic")
    m: int = Field(..., description="q = p^m")
    k: int = Field(..., description="k reduced mod q+1")
    q: int = Field(..., description="Subfield order p^m")
    n: int = Field(..., description="Extension degree 2m")
    d: int = Field(..., description="Exponent k(q-1) mod (p^n - 1)")
    order: int = Field(..., description="Field order p^n")
    modulus: List[int] = Field(..., description="Field polynomial, low-to-high coefficients")
    generator: int = Field(..., description="Canonical index of the multiplicative generator")


class Mismatch(BaseModel):
    """First failing check; spectrum checks also name the multiplicity and both counts."""

    check: str = Field(..., description="Name of the failing check")
    multiplicity: Optional[int] = Field(None, description="Smallest multiplicity whose counts differ")
    brute: Optional[int] = Field(None, description="Count from enumeration")
    predicted: Optional[int] = Field(None, description="Count from the closed form")

    def describe(self) -> str:
        if self.multiplicity is None:
            return f"{self.check} failed"
        return (
            f"{self.check} failed at multiplicity {self.multiplicity}: "
            f"brute {self.brute} vs predicted {self.predicted}"
        )


class Verdict(BaseModel):
    """Per-check outcomes; status is pass exactly when every check holds."""

    checks: Dict[str, bool] = Field(..., description="Check name -> outcome, in evaluation order")
    status: Literal["pass", "fail"] = Field(..., description="Overall outcome")
    first_mismatch: Optional[Mismatch] = Field(None, description="First failing check, if any")

    @model_validator(mode="after")
    def _status_matches_checks(self) -> "Verdict":
        expected = "pass" if all(self.checks.values()) else "fail"
        if self.status != expected:
            raise ValueError(f"status {self.status} contradicts checks (expected {expected})")
        return self


def _tables_from_pairs(section: Dict[str, Any], order: Optional[int]) -> Dict[str, Any]:
    section = dict(section)
    for kind in ("differential", "boomerang"):
        if isinstance(section.get(kind), list):
            if order is None:
                raise ValueError("params.order is needed to load spectrum pairs")
            section[kind] = SpectrumTable.from_pairs(kind, order, section[kind])
    return section


class AnalysisReport(BaseModel):
    """Brute-force spectra next to their predictions, with the verdicts of the check battery."""

    params: PowerMapParams = Field(..., description="Power map and field parameters")
    differential: SpectrumTable = Field(..., description="Differential spectrum by enumeration")
    boomerang: SpectrumTable = Field(..., description="Boomerang spectrum by enumeration")
    predicted: PredictedSpectra = Field(..., description="Closed-form spectra and their branch")
    verdicts: Verdict = Field(..., description="Check battery outcome")
    timing_ms: Dict[str, float] = Field(default_factory=dict, description="Wall time per phase")
    degenerate: bool = Field(False, description="True for (p, m) = (2, 1)")

    @field_serializer("differential", "boomerang")
    def _spectrum_pairs(self, table: SpectrumTable) -> List[List[int]]:
        return table.as_pairs()

    @model_validator(mode="before")
    @classmethod
    def _load_pairs(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        params = data.get("params")
        if isinstance(params, PowerMapParams):
            order = params.order
        elif isinstance(params, dict):
            order = params.get("order")
        else:
            order = None
        data = _tables_from_pairs(data, order)
        if isinstance(data.get("predicted"), dict):
            data["predicted"] = _tables_from_pairs(data["predicted"], order)
        return data

    @model_validator(mode="after")
    def _totals_hold(self) -> "AnalysisReport":
        for table in (self.differential, self.boomerang, self.predicted.differential, self.predicted.boomerang):
            if table.order != self.params.order:
                raise ValueError(f"{table.kind} table order {table.order} differs from params.order")
            table.validate_totals()
        return self

    @property
    def passed(self) -> bool:
        return self.verdicts.status == "pass"

    def deterministic_dump(self) -> Dict[str, Any]:
        """JSON-compatible dump without timing_ms, for comparing runs."""
        return self.model_dump(mode="json", exclude={"timing_ms"})


class SweepRecord(BaseModel):
    """One line of a sweep results file."""

    p: int = Field(..., description="Prime characteristic")
    m: int = Field(..., description="q = p^m")
    k: int = Field(..., description="Exponent parameter")
    status: Literal["pass", "fail", "error"] = Field(..., description="Verdict status, or error if the run raised")
    report: Optional[AnalysisReport] = Field(None, description="Full report when the run completed")
    error: Optional[str] = Field(None, description="Error message when the run raised")

    def comparable(self) -> Dict[str, Any]:
        """Record content minus timing."""
        data = self.model_dump(mode="json", exclude={"report": {"timing_ms"}})
        return data


class SweepSummary(BaseModel):
    """Totals printed at the end of a sweep."""

    total: int = Field(..., description="Tuples run")
    passed: int = Field(..., description="Tuples whose checks all held")
    failed: int = Field(..., description="Tuples with a failing check")
    errors: int = Field(..., description="Tuples whose run raised")
    degenerate: int = Field(0, description="Tuples flagged degenerate")
    out: str = Field(..., description="Results file")
    elapsed_s: float = Field(..., description="Wall time in seconds")
