"""
Tests for the analysis system and its report models.
"""
import json
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent))

import pytest
from pydantic import ValidationError

from src.analysis_system import AnalysisSystem, perturb_boomerang, run_analysis
from src.cli.models import AnalysisReport, Mismatch, SweepRecord, SweepRequest, Verdict
from src.cli.sweep import run_sweep
from src.cli.utils import read_jsonl
from src.exceptions import FieldSizeError, GcdError, InvalidParameterError, VerificationError
from src.field import lexicographic_irreducibles
from src.spectra import coprime_ks
from src.theory import predict_spectra

PASSING_TUPLES = [(2, 1, 1), (2, 2, 1), (2, 3, 1), (2, 3, 4), (3, 1, 1), (5, 1, 5), (7, 1, 3), (11, 1, 7), (3, 2, 1)]


@pytest.fixture(scope="module")
def report_f64():
    return AnalysisSystem(2, 3, 1).analyze()


class TestAnalysisSystem:
    @pytest.mark.parametrize("p,m,k", PASSING_TUPLES)
    def test_battery_passes(self, p, m, k):
        report = AnalysisSystem(p, m, k).analyze()
        failing = [name for name, ok in report.verdicts.checks.items() if not ok]
        assert failing == []
        assert report.passed
        assert report.verdicts.first_mismatch is None

    def test_report_contents(self, report_f64):
        assert report_f64.params.q == 8
        assert report_f64.params.order == 64
        assert report_f64.params.d == 7
        assert report_f64.differential.entries == {0: 35, 2: 27, 4: 1, 6: 1}
        assert report_f64.boomerang.entries == {0: 33, 2: 27, 4: 3}
        assert report_f64.predicted.branch.value == "p=2 m odd"
        assert not report_f64.degenerate

    def test_check_plan_p2(self, report_f64):
        checks = list(report_f64.verdicts.checks)
        assert checks[:3] == ["differential_spectrum", "boomerang_spectrum", "moment_identities"]
        assert "cube_roots_unhit" in checks
        assert "boomerang_dominates_differential" in checks
        assert "boomerang_oracle" in checks
        assert "unit_quadratic_criterion" in checks
        assert "odd_fiber_linkage" not in checks
        assert "minus_three_character" not in checks

    @pytest.mark.parametrize("m,expected", [(2, False), (4, True), (6, False)])
    def test_cube_root_check_skipped_when_m_is_2_mod_4(self, m, expected):
        report = AnalysisSystem(2, m, 1, field_checks=False).analyze()
        assert ("cube_roots_unhit" in report.verdicts.checks) is expected
        assert report.passed

    def test_oracle_check_up_to_cap(self):
        checks = AnalysisSystem(2, 6, 2, field_checks=False).analyze().verdicts.checks
        assert checks["boomerang_oracle"]
        assert "boomerang_oracle" not in AnalysisSystem(2, 7, 1, field_checks=False).analyze().verdicts.checks

    def test_check_plan_odd(self):
        checks = AnalysisSystem(5, 1, 1).analyze().verdicts.checks
        assert "odd_fiber_linkage" in checks
        assert "cube_root_exclusion" in checks
        assert "minus_three_character" in checks
        assert "cube_roots_unhit" not in checks

    def test_field_checks_off(self):
        checks = AnalysisSystem(5, 1, 1, field_checks=False).analyze().verdicts.checks
        assert "unit_quadratic_criterion" not in checks
        assert "minus_three_character" not in checks

    def test_degenerate_flag(self):
        report = AnalysisSystem(2, 1, 1).analyze()
        assert report.degenerate
        assert report.passed

    def test_timing_recorded(self, report_f64):
        assert set(report_f64.timing_ms) == {"field", "differential", "boomerang", "checks"}
        assert all(ms >= 0 for ms in report_f64.timing_ms.values())

    def test_explicit_modulus(self):
        modulus = lexicographic_irreducibles(2, 4, 2)[1]
        report = AnalysisSystem(2, 2, 1, modulus=modulus).analyze()
        assert report.params.modulus == list(modulus)
        assert report.passed

    def test_perturbed_prediction_fails(self):
        system = AnalysisSystem(2, 3, 1, perturb=True)
        report = system.analyze()
        assert not report.passed
        mismatch = report.verdicts.first_mismatch
        assert mismatch.check == "boomerang_spectrum"
        assert (mismatch.multiplicity, mismatch.brute, mismatch.predicted) == (0, 33, 32)
        with pytest.raises(VerificationError) as excinfo:
            system.verify()
        assert excinfo.value.mismatch.check == "boomerang_spectrum"

    def test_verify_passes(self):
        assert AnalysisSystem(3, 1, 1).verify().passed

    def test_invalid_inputs(self):
        with pytest.raises(GcdError):
            AnalysisSystem(5, 1, 2)
        with pytest.raises(InvalidParameterError):
            AnalysisSystem(6, 1, 1)
        with pytest.raises(FieldSizeError):
            AnalysisSystem(2, 13, 1)

    def test_run_analysis(self):
        report = run_analysis(2, 3, 1)
        assert report.boomerang.entries == {0: 33, 2: 27, 4: 3}


class TestPerturb:
    def test_totals_kept(self):
        predicted = perturb_boomerang(predict_spectra(2, 3, 1))
        assert predicted.boomerang.entries == {0: 32, 2: 28, 4: 3}
        assert predicted.boomerang.check_totals()

    def test_single_key(self):
        predicted = perturb_boomerang(predict_spectra(3, 1, 1))
        assert predicted.boomerang.entries == {0: 7, 2: 1}


class TestReports:
    def test_json_round_trip(self, report_f64):
        data = json.loads(report_f64.model_dump_json())
        assert data["boomerang"] == [[0, 33], [2, 27], [4, 3]]
        assert data["predicted"]["differential"] == [[0, 35], [2, 27], [4, 1], [6, 1]]
        loaded = AnalysisReport.model_validate(data)
        assert loaded.deterministic_dump() == report_f64.deterministic_dump()

    def test_tampered_totals_rejected(self, report_f64):
        data = json.loads(report_f64.model_dump_json())
        data["boomerang"] = [[0, 34], [2, 27], [4, 3]]
        with pytest.raises(ValidationError):
            AnalysisReport.model_validate(data)

    def test_deterministic(self):
        first = AnalysisSystem(7, 1, 3).analyze()
        second = AnalysisSystem(7, 1, 3).analyze()
        assert first.deterministic_dump() == second.deterministic_dump()
        assert "timing_ms" not in first.deterministic_dump()

    def test_verdict_status_consistency(self):
        with pytest.raises(ValidationError):
            Verdict(checks={"differential_spectrum": False}, status="pass")
        assert Verdict(checks={"differential_spectrum": True}, status="pass").first_mismatch is None

    def test_mismatch_describe(self):
        assert Mismatch(check="unit_fiber").describe() == "unit_fiber failed"
        text = Mismatch(check="boomerang_spectrum", multiplicity=0, brute=33, predicted=32).describe()
        assert "multiplicity 0" in text
        assert "brute 33" in text

    def test_sweep_record_comparable(self, report_f64):
        record = SweepRecord(p=2, m=3, k=1, status="pass", report=report_f64)
        comparable = record.comparable()
        assert "timing_ms" not in comparable["report"]
        loaded = SweepRecord.model_validate(json.loads(record.model_dump_json()))
        assert loaded.comparable() == comparable

    def test_error_record(self):
        record = SweepRecord(p=5, m=1, k=2, status="error", error="gcd")
        assert record.comparable()["report"] is None


class TestGrids:
    @pytest.mark.parametrize("p_list,m_max", [([2], 8), ([3, 5, 7, 11, 13], 2)])
    def test_every_coprime_k_passes(self, tmp_path, p_list, m_max):
        request = SweepRequest(p_list=p_list, m_max=m_max)
        out = tmp_path / "grid.jsonl"
        summary = run_sweep(request, out, workers=1, quiet=True)
        expected = sum(len(coprime_ks(p**m)) for p in p_list for m in range(1, m_max + 1))
        assert summary.total == expected
        records = read_jsonl(out, SweepRecord)
        assert [(r.p, r.m, r.k) for r in records if r.status != "pass"] == []
        assert summary.passed == expected
