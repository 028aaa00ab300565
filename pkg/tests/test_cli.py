"""ogis-lab command line through click's CliRunner."""

import json

import pytest
from click.testing import CliRunner

from cli.commands import main


@pytest.fixture
def runner():
    return CliRunner()


def _run(runner, *args):
    return runner.invoke(main, list(args), catch_exceptions=False)


class TestRunCommand:
    def test_chain_identifies(self, runner, tmp_path):
        out = tmp_path / "run.json"
        result = _run(
            runner, "run", "--family", "notpb", "--target", "3", "--verifier", "check",
            "--learner", "chain", "--out", str(out),
        )
        assert result.exit_code == 0
        report = json.loads(out.read_text())
        assert report["command"] == "run"
        assert report["summary"]["run"]["metrics"]["correctness_queries"] == 5
        assert report["invocation"]["target"] == "UpTo(3)"

    def test_hcheck_converges_wrong(self, runner, tmp_path):
        result = _run(
            runner, "run", "--family", "notpb", "--target", "3", "--verifier", "hcheck",
            "--learner", "chain", "--out", str(tmp_path / "run.json"),
        )
        assert result.exit_code == 3

    def test_zero_budget(self, runner, tmp_path):
        result = _run(
            runner, "run", "--target", "UpTo(3)", "--learner", "chain", "--budget", "0",
            "--out", str(tmp_path / "run.json"),
        )
        assert result.exit_code == 4

    @pytest.mark.parametrize(
        "args",
        [
            ["--target", "UpTo(3)", "--learner", "telepath"],
            ["--target", "UpTo(3)", "--learner", "chain", "--verifier", "bcheck:x"],
            ["--target", "Sideways(3)", "--learner", "chain"],
            ["--family", "notpb", "--target", "99", "--learner", "chain"],
            ["--target", "UpTo(3)", "--learner", "chain", "--window", "0"],
        ],
    )
    def test_usage_errors(self, runner, args):
        result = _run(runner, "run", *args)
        assert result.exit_code == 2

    def test_enumeration_without_concepts(self, runner):
        result = _run(runner, "run", "--target", "UpTo(2)", "--learner", "consistent-enum")
        assert result.exit_code == 2
        assert "needs explicit concepts" in result.output

    def test_csv_to_stdout(self, runner):
        result = _run(runner, "run", "--target", "UpTo(2)", "--learner", "chain", "--format", "csv")
        assert result.exit_code == 0
        assert "id,passed," in result.output

    def test_record_then_history(self, runner, tmp_path):
        result = _run(
            runner, "run", "--target", "Finite{9,12}", "--learner", "gold-finite", "--record",
            "--out", str(tmp_path / "run.json"),
        )
        assert result.exit_code == 0
        history = _run(runner, "history", "--limit", "50")
        assert history.exit_code == 0
        assert "run" in history.output


class TestFiniteCommands:
    def test_td(self, runner, powerset3_file):
        result = _run(runner, "finite", "td", powerset3_file)
        assert result.exit_code == 0
        assert "TD=3" in result.output

    def test_bounds(self, runner, singles4_file):
        result = _run(runner, "finite", "bounds", singles4_file)
        assert result.exit_code == 0
        assert "pass 0.5 ≤ 1 ≤ 3" in result.output

    def test_mincex_target(self, runner, target_file, tmp_path):
        out = tmp_path / "mincex.json"
        result = _run(runner, "finite", "mincex", target_file, "--target", "2", "--out", str(out))
        assert result.exit_code == 0
        assert json.loads(out.read_text())["summary"]["mincex"]["metrics"]["examples"] == [0]

    def test_reduce(self, runner, cover_file):
        result = _run(runner, "finite", "reduce", cover_file)
        assert result.exit_code == 0
        assert "cover size 2" in result.output

    def test_mogis_markdown(self, runner, singles4_file, tmp_path):
        out = tmp_path / "mogis.md"
        result = _run(runner, "finite", "mogis", singles4_file, "--format", "md", "--out", str(out))
        assert result.exit_code == 0
        assert out.read_text().startswith("# finite mogis report")

    def test_malformed_file(self, runner, malformed_file):
        result = _run(runner, "finite", "td", malformed_file)
        assert result.exit_code == 2
        assert "line 2" in result.output

    def test_missing_file(self, runner, tmp_path):
        result = _run(runner, "finite", "vc", str(tmp_path / "absent.cls"))
        assert result.exit_code == 2


class TestSeparationsCommand:
    def test_single_experiment(self, runner, tmp_path):
        out = tmp_path / "battery.json"
        result = _run(runner, "separations", "--quick", "--only", "F1", "--seed", "3", "--out", str(out))
        assert result.exit_code == 0
        report = json.loads(out.read_text())
        assert report["invocation"] == {"experiments": ["F1"], "quick": True, "seed": 3}
        assert report["passed"] is True

    def test_unknown_experiment(self, runner):
        result = _run(runner, "separations", "--quick", "--only", "E42")
        assert result.exit_code == 2
