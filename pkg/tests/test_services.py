"""Report rendering, run/finite services and the separation battery."""

import json

import pytest

from config.constants import EXPERIMENT_VERSIONS
from core.language import UpTo
from finite_lab.concept_class import ClassFileError
from learners.base import MissingConcepts, UnknownLearner
from services.finite_service import analyze
from services.report_service import Report, UnknownFormat, render, render_csv, render_json, render_markdown, write_report
from services.run_service import build_run_config, run_report
from services.separation_service import SeparationService
from tests.conftest import COVER, MALFORMED, POWERSET3, SINGLES4, WITH_TARGET
from verifiers.kinds import Arbitrary, SeededRandom


@pytest.fixture(scope="module")
def quick_battery():
    return SeparationService(seed=42, quick=True).run_battery()


def _sample_report() -> Report:
    return Report(
        command="demo",
        invocation={"seed": 1},
        results=[{"ratio": 1 / 3}],
        summary={"A": {"passed": True, "version": "1.0", "metrics": {"ratio": 1 / 3, "n": 2}}},
        passed=True,
    )


class TestReportRendering:
    def test_json_rounds_and_sorts(self):
        text = render_json(_sample_report())
        assert text.endswith("\n")
        body = json.loads(text)
        assert body["results"] == [{"ratio": 0.333333}]
        assert body["schema_version"] == "1.0"
        assert list(body) == sorted(body)

    def test_csv(self):
        assert render_csv(_sample_report()) == "id,passed,n,ratio,version\nA,True,2,0.333333,1.0\n"

    def test_markdown(self):
        text = render_markdown(_sample_report())
        assert text.startswith("# demo report (schema 1.0)")
        assert "| A | True | 2 | 0.333333 | 1.0 |" in text
        assert text.endswith("**PASS**\n")

    def test_unknown_format(self):
        with pytest.raises(UnknownFormat):
            render(_sample_report(), "xml")

    def test_write_report(self, tmp_path):
        out = tmp_path / "reports" / "demo.md"
        text = write_report(_sample_report(), "md", str(out))
        assert out.read_text() == text


class TestRunService:
    def test_family_index_target(self):
        config = build_run_config(target="3", learner="chain", family="notpb")
        assert config.target == UpTo(3)
        assert config.family_id == "notpb"

    def test_bare_random_takes_seed(self):
        config = build_run_config(target="UpTo(3)", learner="chain", strategy="random", seed=9)
        assert config.verifier == Arbitrary(SeededRandom(9))
        assert str(build_run_config(target="UpTo(3)", learner="chain", order="shuffle", seed=9).order) == "shuffle:9"

    def test_overrides(self):
        config = build_run_config(target="UpTo(3)", learner="chain", budget=5, window=2, memory_bound=64)
        assert (config.step_budget, config.stability_window, config.memory_bound) == (5, 2, 64)

    def test_unknown_learner(self):
        with pytest.raises(UnknownLearner):
            build_run_config(target="UpTo(3)", learner="telepath")

    def test_enum_concepts(self):
        config = build_run_config(target="2", learner="consistent-enum", family="cbnotpb")
        assert config.concepts == [UpTo(i) for i in range(6)]
        explicit = build_run_config(target="UpTo(1)", learner="consistent-enum", concepts=["UpTo(0)", "UpTo(1)"])
        assert explicit.concepts == [UpTo(0), UpTo(1)]
        with pytest.raises(MissingConcepts):
            build_run_config(target="UpTo(1)", learner="consistent-enum")

    def test_bad_budget(self):
        with pytest.raises(ValueError):
            build_run_config(target="UpTo(3)", learner="chain", budget=-1)

    def test_run_report(self):
        result, report = run_report(build_run_config(target="3", learner="chain", family="notpb"))
        assert result.exit_code == 0
        assert report.command == "run"
        assert report.passed
        assert report.summary["run"]["metrics"]["correctness_queries"] == 5
        assert report.invocation["target"] == "UpTo(3)"


class TestFiniteService:
    @pytest.mark.parametrize(
        "analysis, text, headline",
        [
            ("td", POWERSET3, "TD=3"),
            ("vc", POWERSET3, "VC=3"),
            ("bounds", SINGLES4, "pass 0.5 ≤ 1 ≤ 3"),
            ("bounds", POWERSET3, "pass 1 ≤ 3 ≤ 7"),
            ("mincex", WITH_TARGET, "min counterexample set [1] (size 1)"),
            ("reduce", COVER, "cover size 2 [1, 4], reduced min counterexample set size 2"),
            ("mogis", SINGLES4, "pass M_OGIS=3 ≥ TD=1"),
        ],
    )
    def test_headlines(self, analysis, text, headline):
        outcome = analyze(analysis, text)
        assert outcome.headline == headline
        assert outcome.report.passed
        assert outcome.report.command == f"finite {analysis}"

    def test_mincex_target_override(self):
        outcome = analyze("mincex", WITH_TARGET, target=2)
        assert outcome.report.summary["mincex"]["metrics"]["examples"] == [0]
        assert outcome.report.invocation["target"] == 2

    def test_unknown_analysis(self):
        with pytest.raises(ValueError):
            analyze("entropy", POWERSET3)

    def test_malformed(self):
        with pytest.raises(ClassFileError):
            analyze("td", MALFORMED)


class TestSeparationBattery:
    def test_every_experiment_passes(self, quick_battery):
        failing = {r["id"]: r["failures"] for r in quick_battery.results if not r["passed"]}
        assert failing == {}
        assert quick_battery.passed

    def test_ordered_and_versioned(self, quick_battery):
        assert [r["id"] for r in quick_battery.results] == sorted(EXPERIMENT_VERSIONS)
        assert all(entry["version"] == EXPERIMENT_VERSIONS[i] for i, entry in quick_battery.summary.items())
        assert quick_battery.invocation == {"seed": 42, "quick": True, "experiments": sorted(EXPERIMENT_VERSIONS)}

    def test_superset_trap(self, quick_battery):
        assert quick_battery.summary["E3"]["metrics"]["superset_trap_exit_codes"] == {"bcheck": 3, "check": 0}

    def test_hcheck_stays_silent_for_chain(self, quick_battery):
        assert quick_battery.summary["E4"]["metrics"]["hcheck_counterexamples"] == 0

    def test_adversary_reports_its_budget(self, quick_battery):
        searches = quick_battery.summary["E6"]["metrics"]
        assert searches["gold-lossy"]["found"] is True
        assert searches["gold-lossy"]["budget_exhausted"] is False
        assert isinstance(searches["pbcegis-family3"]["budget_exhausted"], bool)

    def test_pbcegis_state_is_constant(self, quick_battery):
        assert quick_battery.summary["E5"]["metrics"]["max_state_bytes"] == [56]

    def test_known_dimensions(self, quick_battery):
        assert quick_battery.summary["F1"]["metrics"] == {"powerset3": {"td": 3, "vc": 3}, "singles4": {"td": 1, "vc": 1}}

    def test_same_seed_same_report(self):
        ids = ["E3", "E7", "F1", "F3"]
        first = SeparationService(seed=7, quick=True).run_battery(ids)
        second = SeparationService(seed=7, quick=True).run_battery(ids)
        assert render_json(first) == render_json(second)

    def test_unknown_experiment(self):
        with pytest.raises(ValueError):
            SeparationService(quick=True).run_battery(["E42"])
