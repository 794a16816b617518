"""
Request and report models for the CLI.
"""

from .reports import AnalysisReport, Mismatch, PowerMapParams, SweepRecord, SweepSummary, Verdict
from .requests import AnalyzeRequest, SweepRequest

__all__ = [
    "AnalysisReport",
    "AnalyzeRequest",
    "Mismatch",
    "PowerMapParams",
    "SweepRecord",
    "SweepRequest",
    "SweepSummary",
    "Verdict",
]
