"""
Tests for the command-line interface.
"""
import json
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent))

import pandas as pd
import pytest
from click.testing import CliRunner

from src.cli.main import EXIT_CAP, EXIT_INVALID, EXIT_MISMATCH, EXIT_PASS, cli
from src.cli.models import AnalysisReport, SweepRecord
from src.cli.utils import read_jsonl


@pytest.fixture
def runner():
    return CliRunner()


def params(p, m, k):
    return ["--p", str(p), "--m", str(m), "--k", str(k)]


class TestAnalyze:
    def test_json_report(self, runner, tmp_path):
        out = tmp_path / "report.json"
        result = runner.invoke(cli, ["analyze", *params(2, 3, 1), "--out", str(out)])
        assert result.exit_code == EXIT_PASS
        report = AnalysisReport.model_validate(json.loads(out.read_text()))
        assert report.differential.entries == {0: 35, 2: 27, 4: 1, 6: 1}
        assert report.boomerang.entries == {0: 33, 2: 27, 4: 3}
        assert report.passed

    def test_x45_over_f256(self, runner, tmp_path):
        out = tmp_path / "report.json"
        result = runner.invoke(cli, ["analyze", *params(2, 4, 3), "--out", str(out)])
        assert result.exit_code == EXIT_PASS
        data = json.loads(out.read_text())
        assert data["boomerang"] == [[0, 134], [2, 121]]

    def test_csv_report(self, runner, tmp_path):
        out = tmp_path / "report.csv"
        result = runner.invoke(cli, ["analyze", *params(11, 1, 1), "--emit", "csv", "--out", str(out)])
        assert result.exit_code == EXIT_PASS
        frame = pd.read_csv(out)
        assert list(frame.columns) == ["kind", "multiplicity", "brute", "predicted"]
        boomerang = frame[frame["kind"] == "boomerang"]
        assert boomerang["brute"].tolist() == [76, 44]
        assert (frame["brute"] == frame["predicted"]).all()

    def test_gcd_violation(self, runner, tmp_path):
        out = tmp_path / "report.json"
        result = runner.invoke(cli, ["analyze", *params(5, 1, 2), "--out", str(out)])
        assert result.exit_code == EXIT_INVALID

    def test_reducible_modulus(self, runner):
        result = runner.invoke(cli, ["analyze", *params(2, 1, 1), "--modulus", "1,0,1"])
        assert result.exit_code == EXIT_INVALID

    def test_order_cap(self, runner):
        result = runner.invoke(cli, ["analyze", *params(2, 13, 1)])
        assert result.exit_code == EXIT_CAP

    def test_bad_emit(self, runner):
        result = runner.invoke(cli, ["analyze", *params(2, 2, 1), "--emit", "xml"])
        assert result.exit_code == EXIT_INVALID


class TestVerify:
    @pytest.mark.parametrize("p,m,k", [(11, 1, 7), (3, 2, 1), (2, 3, 1), (2, 1, 1)])
    def test_passes(self, runner, p, m, k):
        result = runner.invoke(cli, ["verify", *params(p, m, k)])
        assert result.exit_code == EXIT_PASS

    def test_perturbed_fails(self, runner, tmp_path):
        out = tmp_path / "report.json"
        result = runner.invoke(cli, ["verify", *params(2, 3, 1), "--perturb", "--out", str(out)])
        assert result.exit_code == EXIT_MISMATCH
        report = AnalysisReport.model_validate(json.loads(out.read_text()))
        assert report.verdicts.status == "fail"
        assert report.verdicts.first_mismatch.check == "boomerang_spectrum"

    def test_unwritable_out(self, runner, tmp_path):
        out = tmp_path / "missing" / "report.json"
        result = runner.invoke(cli, ["verify", *params(2, 2, 1), "--out", str(out)])
        assert result.exit_code == EXIT_INVALID


class TestDump:
    def test_ddt_row(self, runner, tmp_path):
        out = tmp_path / "ddt.csv"
        result = runner.invoke(cli, ["dump", *params(2, 2, 1), "--table", "ddt-row", "--out", str(out)])
        assert result.exit_code == EXIT_PASS
        lines = out.read_text().splitlines()
        assert lines[0] == "b_index,count"
        assert len(lines) == 17
        assert sum(int(line.split(",")[1]) for line in lines[1:]) == 16

    def test_bct_row(self, runner, tmp_path):
        out = tmp_path / "bct.csv"
        result = runner.invoke(cli, ["dump", *params(2, 2, 1), "--table", "bct-row", "--out", str(out)])
        assert result.exit_code == EXIT_PASS
        frame = pd.read_csv(out)
        assert len(frame) == 15
        assert frame["b_index"].iloc[0] == 1
        assert set(frame["count"]) <= {0, 2}

    def test_unknown_table(self, runner, tmp_path):
        out = tmp_path / "row.csv"
        result = runner.invoke(cli, ["dump", *params(2, 2, 1), "--table", "lat-row", "--out", str(out)])
        assert result.exit_code == EXIT_INVALID


class TestSweep:
    def test_serial_and_parallel_agree(self, runner, tmp_path):
        serial, parallel = tmp_path / "serial.jsonl", tmp_path / "parallel.jsonl"
        base = ["sweep", "--p", "2", "--p", "3", "--m-max", "2", "--quiet"]
        first = runner.invoke(cli, [*base, "--workers", "1", "--out", str(serial)])
        second = runner.invoke(cli, [*base, "--workers", "2", "--out", str(parallel)])
        assert first.exit_code == EXIT_PASS
        assert second.exit_code == EXIT_PASS

        def by_tuple(path):
            records = read_jsonl(path, SweepRecord)
            return sorted((record.comparable() for record in records), key=lambda r: (r["p"], r["m"], r["k"]))

        serial_records, parallel_records = by_tuple(serial), by_tuple(parallel)
        # q = 2, 4, 3, 9 give 2 + 4 + 2 + 4 coprime k
        assert len(serial_records) == 12
        assert serial_records == parallel_records
        assert all(record["status"] == "pass" for record in serial_records)

    def test_list_policy_skips_non_coprime(self, runner, tmp_path):
        out = tmp_path / "list.jsonl"
        result = runner.invoke(
            cli,
            ["sweep", "--p", "5", "--m-max", "1", "--k-policy", "list", "--k", "1", "--k", "2", "--k", "5"]
            + ["--workers", "1", "--quiet", "--out", str(out)],
        )
        assert result.exit_code == EXIT_PASS
        assert [(r.p, r.m, r.k) for r in read_jsonl(out, SweepRecord)] == [(5, 1, 1), (5, 1, 5)]

    def test_list_policy_needs_k(self, runner, tmp_path):
        out = tmp_path / "list.jsonl"
        result = runner.invoke(cli, ["sweep", "--p", "5", "--m-max", "1", "--k-policy", "list", "--out", str(out)])
        assert result.exit_code == EXIT_INVALID

    def test_empty_p_list(self, runner, tmp_path):
        result = runner.invoke(cli, ["sweep", "--m-max", "2", "--out", str(tmp_path / "out.jsonl")])
        assert result.exit_code == EXIT_INVALID

    def test_order_cap(self, runner, tmp_path):
        out = tmp_path / "out.jsonl"
        result = runner.invoke(cli, ["sweep", "--p", "2", "--m-max", "13", "--out", str(out)])
        assert result.exit_code == EXIT_CAP
        assert out.read_text() == ""

    def test_bad_workers(self, runner, tmp_path):
        result = runner.invoke(
            cli, ["sweep", "--p", "2", "--m-max", "1", "--workers", "0", "--out", str(tmp_path / "out.jsonl")]
        )
        assert result.exit_code == EXIT_INVALID

    def test_appends(self, runner, tmp_path):
        out = tmp_path / "out.jsonl"
        args = ["sweep", "--p", "2", "--m-max", "1", "--workers", "1", "--quiet", "--out", str(out)]
        runner.invoke(cli, args)
        runner.invoke(cli, args)
        assert len(read_jsonl(out, SweepRecord)) == 4
