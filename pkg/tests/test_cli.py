"""Tests for the command-line interface and the audit trail."""

import csv
import importlib
import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from app.cli import EXIT_FINDINGS, EXIT_INPUT_ERROR, EXIT_OK, dump_json, report_tables, run
from src.logging import ActionType, reset_audit_logger


@pytest.fixture
def audit(tmp_path):
    return reset_audit_logger(tmp_path / "audit.jsonl", enabled=True)


def run_json(capsys, argv):
    """Run quietly and return (exit code, parsed stdout report)."""
    code = run([*argv, "--quiet"])
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


def export(tmp_path, name, *options) -> str:
    path = tmp_path / f"{name}.json"
    assert run(["export", name, *options, "--out", str(path), "--quiet"]) == EXIT_OK
    return str(path)


class TestDemoCommand:
    """Tests for running built-in demos."""

    def test_measurement(self, capsys):
        """Test that coefficients 3,4 give weights 0.36 and 0.64 and exit 0."""
        code, report = run_json(capsys, ["demo", "measurement", "--coeffs", "3,4"])
        assert code == EXIT_OK
        assert report["result"]["weights"] == pytest.approx({"0": 0.36, "1": 0.64})
        assert report["options"] == {"coeffs": [3.0, 4.0]}
        assert report["header"]["command"] == "demo"

    def test_erasure_has_findings(self, capsys):
        code, report = run_json(capsys, ["demo", "erasure"])
        assert code == EXIT_FINDINGS
        assert report["result"]["lift_feasible"] is False

    def test_header(self, capsys):
        _, report = run_json(capsys, ["demo", "abc-bets", "--seed", "5"])
        header = report["header"]
        assert header["seed"] == 5
        assert set(header["tolerances"]) == {"exact", "consistency", "rank", "near_orth"}
        assert "version" in header

    def test_unknown_demo(self, capsys):
        assert run(["demo", "nope", "--quiet"]) == EXIT_INPUT_ERROR
        assert capsys.readouterr().out == ""

    def test_option_for_another_demo(self):
        """Test that options a demo does not take are refused."""
        assert run(["demo", "erasure", "--n", "4", "--quiet"]) == EXIT_INPUT_ERROR

    def test_option_out_of_range(self):
        assert run(["demo", "spreading-tail", "--n", "1", "--quiet"]) == EXIT_INPUT_ERROR

    def test_missing_command(self):
        assert run([]) == EXIT_INPUT_ERROR

    def test_usage_error_is_input_error(self):
        """Test that argparse usage errors exit 1, not 2."""
        assert run(["check-axioms", "missing.json"]) == EXIT_INPUT_ERROR

    def test_list_demos(self, capsys):
        code, report = run_json(capsys, ["list-demos"])
        assert code == EXIT_OK
        assert len(report["demos"]) == 10

    def test_summary_goes_to_stderr(self, capsys):
        code = run(["demo", "measurement", "--coeffs", "3,4"])
        captured = capsys.readouterr()
        assert code == EXIT_OK
        assert json.loads(captured.out)["demo"] == "measurement"


class TestDeterminism:
    """Tests for byte-identical reports."""

    @pytest.mark.parametrize("argv", [
        ["demo", "imprecise-bet", "--seed", "7"],
        ["demo", "spreading-tail"],
        ["demo", "branching-composite", "--seed", "3"],
    ])
    def test_same_seed_same_bytes(self, tmp_path, argv):
        first, second = tmp_path / "first.json", tmp_path / "second.json"
        run([*argv, "--out", str(first), "--quiet"])
        run([*argv, "--out", str(second), "--quiet"])
        assert first.read_bytes() == second.read_bytes()

    def test_check_axioms_is_deterministic(self, tmp_path):
        scenario = export(tmp_path, "abc-bets")
        first, second = tmp_path / "first.json", tmp_path / "second.json"
        for out in (first, second):
            run(["check-axioms", scenario, "--strategy", "born_eu", "--seed", "11", "--out", str(out), "--quiet"])
        assert first.read_bytes() == second.read_bytes()

    def test_seed_from_environment(self, monkeypatch, tmp_path):
        """Test that BRANCHLAB_SEED seeds runs without --seed, byte for byte."""
        import config.settings as settings

        monkeypatch.setenv("BRANCHLAB_SEED", "42")
        try:
            importlib.reload(settings)
            assert settings.DEFAULT_SEED == 42
            monkeypatch.setattr("app.cli.DEFAULT_SEED", settings.DEFAULT_SEED)
            outputs = [tmp_path / "first.json", tmp_path / "second.json"]
            for out in outputs:
                assert run(["demo", "imprecise-bet", "--out", str(out), "--quiet"]) == EXIT_FINDINGS
            assert outputs[0].read_bytes() == outputs[1].read_bytes()
            assert json.loads(outputs[0].read_text())["header"]["seed"] == 42
        finally:
            monkeypatch.undo()
            importlib.reload(settings)

    def test_dump_json_sorts_keys(self):
        assert dump_json({"b": 1, "a": [1.5]}) == '{\n  "a": [\n    1.5\n  ],\n  "b": 1\n}\n'


class TestScenarioCommands:
    """Tests for commands reading exported scenario files."""

    def test_export_then_check_axioms(self, capsys, tmp_path):
        """Test that the Born strategy passes every axiom on the exported bets problem."""
        scenario = export(tmp_path, "abc-bets")
        code, report = run_json(capsys, ["check-axioms", scenario, "--strategy", "born_eu"])
        assert code == EXIT_OK
        assert report["strategy"] == "born_eu"
        assert report["values"]["ready"][0]["C"] == pytest.approx(725.0)
        assert all(entry["pass"] for entry in report["axioms"])

    def test_counting_on_composite(self, capsys, tmp_path):
        scenario = export(tmp_path, "branching-composite")
        code, report = run_json(capsys, ["check-axioms", scenario, "--strategy", "counting_eu"])
        assert code == EXIT_FINDINGS
        failed = {entry["axiom"] for entry in report["axioms"] if not entry["pass"]}
        assert {"diachronic_consistency", "branching_indifference"} <= failed

    def test_utilities_override(self, capsys, tmp_path):
        scenario = export(tmp_path, "abc-bets")
        _, report = run_json(capsys, ["check-axioms", scenario, "--strategy", "born_eu",
                                      "--utilities", "+1000=1,0=0,-100=-1"])
        assert report["values"]["ready"][0]["B"] == pytest.approx(0.5)

    def test_check_consistency(self, capsys, tmp_path):
        code, report = run_json(capsys, ["check-consistency", export(tmp_path, "measurement")])
        assert code == EXIT_OK
        assert report["consistency"]["consistent"] is True

    def test_check_consistency_finds_interference(self, capsys, tmp_path):
        code, report = run_json(capsys, ["check-consistency", export(tmp_path, "recombining")])
        assert code == EXIT_FINDINGS
        assert report["consistency"]["max_overlap"] == pytest.approx(0.25)

    def test_check_consistency_needs_history_space(self, tmp_path):
        scenario = export(tmp_path, "erasure")
        assert run(["check-consistency", scenario, "--quiet"]) == EXIT_INPUT_ERROR

    def test_check_richness(self, capsys, tmp_path):
        """Test that the bets problem lacks acts on the events its bets reach."""
        scenario = export(tmp_path, "abc-bets")
        code, report = run_json(capsys, ["check-richness", scenario, "--problem-continuity"])
        assert code == EXIT_FINDINGS
        assert report["richness"]["conditions"]["continuation"]["passed"] is False
        assert report["problem_continuity"]["passed"] is False

    def test_measure(self, capsys, tmp_path):
        scenario = export(tmp_path, "spreading-tail")
        code, report = run_json(capsys, ["measure", scenario, "--grain-chain", "16,8,4,2,1",
                                         "--good", "x08", "--bad", "x00"])
        assert code == EXIT_OK
        assert report["branch_count"] == 1
        assert report["count_stability"]["plateau"] == [0, 4]
        assert report["ratio"] == {"value": None, "infinite": True}

    def test_measure_chain_must_refine(self, tmp_path):
        scenario = export(tmp_path, "spreading-tail")
        assert run(["measure", scenario, "--grain-chain", "1,2", "--quiet"]) == EXIT_INPUT_ERROR

    def test_missing_file(self):
        assert run(["check-axioms", "no/such/file.json", "--strategy", "born_eu", "--quiet"]) == EXIT_INPUT_ERROR

    def test_export_without_scenario(self, tmp_path):
        assert run(["export", "pointer-decomp", "--out", str(tmp_path / "p.json"), "--quiet"]) == EXIT_INPUT_ERROR

    def test_export_is_a_scenario_file(self, tmp_path):
        document = json.loads(Path(export(tmp_path, "erasure")).read_text(encoding="utf-8"))
        assert document["version"] == 1
        assert document["kind"] == "bundle"
        assert "header" not in document


class TestCsvOutput:
    """Tests for the CSV tables."""

    def test_one_table_per_section(self, tmp_path):
        directory = tmp_path / "tables"
        run(["demo", "measurement", "--coeffs", "3,4", "--csv", str(directory), "--quiet"])
        assert sorted(p.name for p in directory.iterdir()) == ["demo.csv", "options.csv", "result.csv"]
        with (directory / "result.csv").open(encoding="utf-8") as f:
            rows = list(csv.DictReader(f))
        assert [row["key"] for row in rows] == ["branching", "consistency", "weights"]

    def test_record_lists_become_rows(self):
        tables = report_tables({"axioms": [{"axiom": "ordering", "pass": True}, {"axiom": "x", "extra": [1]}]})
        header, rows = tables["axioms"]
        assert header == ["axiom", "extra", "pass"]
        assert rows[1]["extra"] == "[1]"
        assert rows[1]["pass"] is None


class TestAuditTrail:
    """Tests for the audit log written by commands."""

    def test_command_and_demo_logged(self, audit):
        run(["demo", "erasure", "--quiet"])
        entries = audit.get_session_entries()
        types = [e["action_type"] for e in entries]
        assert types[0] == ActionType.COMMAND.value
        assert entries[0]["command"] == "demo"
        assert isinstance(entries[0]["seed"], int)
        demo = next(e for e in entries if e["action_type"] == ActionType.DEMO.value)
        assert demo["command"] == "erasure"
        assert demo["passed"] is False

    def test_findings_logged_with_witnesses(self, audit, tmp_path):
        scenario = export(tmp_path, "branching-composite")
        run(["check-axioms", scenario, "--strategy", "counting_eu", "--quiet"])
        findings = [e for e in audit.get_session_entries() if e["action_type"] == ActionType.FINDING.value]
        assert any(f["check"] == "diachronic_consistency" and f["strategy"] == "counting_eu" for f in findings)
        started = [e for e in audit.get_session_entries() if e["action_type"] == ActionType.CHECK_STARTED.value]
        assert started[0]["check"] == "axioms"

    def test_errors_logged(self, audit):
        run(["demo", "nope", "--quiet"])
        summary = audit.get_session_summary()
        assert summary["action_counts"][ActionType.ERROR.value] == 1

    def test_log_file_is_json_lines(self, audit):
        run(["list-demos", "--quiet"])
        lines = audit.log_path.read_text(encoding="utf-8").splitlines()
        assert len(lines) == len(audit.get_session_entries())
        assert all(json.loads(line)["session_id"] == audit.session_id for line in lines)

    def test_disabled_logger_writes_nothing(self, tmp_path):
        logger = reset_audit_logger(tmp_path / "off.jsonl", enabled=False)
        run(["list-demos", "--quiet"])
        assert not logger.log_path.exists()
        assert logger.get_session_summary()["total_entries"] == 1


class TestEntryPoints:
    """Tests for where the project root is put on the import path."""

    def test_library_leaves_sys_path_alone(self):
        """Test that only the entry points touch sys.path; the src package imports config directly."""
        root = Path(__file__).parent.parent
        offenders = [
            str(path.relative_to(root)) for path in sorted((root / "src").rglob("*.py"))
            if "sys.path" in path.read_text(encoding="utf-8")
        ]
        assert offenders == []
        assert "sys.path.insert" in (root / "app" / "cli.py").read_text(encoding="utf-8")
