"""Dialogue sessions, the CEGIS runner and the adversary search."""

import pytest

from core.language import BOTTOM, Finite, Pow32Finite, UpTo
from core.transcript import ASCENDING, TranscriptOrder
from engine.adversary import adversary_search
from engine.dialogue import DialogueSession, InconsistentOracle, MemoryBoundExceeded
from engine.runner import RunConfig, audit_memory, identify_over_orders, run_cegis
from learners.base import UnsupportedLearner
from learners.gold import GoldFiniteLearner
from verifiers.kinds import Arbitrary, PositiveBounded

FAMILY3_TARGET = Pow32Finite(((0, 1), (1, 1), (0, 4)))


class TestDialogueSession:
    def test_memoises_stateless_verdicts(self):
        session = DialogueSession(UpTo(3), Arbitrary())
        assert session.correctness(UpTo(5)) == 4
        assert session.correctness(UpTo(5)) == 4
        summary = session.tracker.get_summary()
        assert summary["correctness_queries"] == 1
        assert summary["cached_verdicts"] == 1
        assert len(session.cex) == 1

    def test_hcheck_is_never_memoised(self):
        session = DialogueSession(UpTo(3), PositiveBounded())
        session.correctness(UpTo(5))
        session.correctness(UpTo(5))
        assert session.tracker.get_summary()["correctness_queries"] == 2

    def test_repeated_positive(self):
        session = DialogueSession(UpTo(3), Arbitrary(), stream=[1, 1])
        session.positive_witness()
        with pytest.raises(InconsistentOracle):
            session.positive_witness()

    def test_refuted_example_delivered_later(self):
        session = DialogueSession(UpTo(3), Arbitrary(), stream=[4])
        session.correctness(UpTo(5))
        with pytest.raises(InconsistentOracle):
            session.positive_witness()

    def test_exhausted_transcript(self):
        session = DialogueSession(Finite((2,)), Arbitrary())
        assert [session.positive_witness() for _ in range(3)] == [2, BOTTOM, BOTTOM]


class TestRunCegis:
    def test_chain_with_check(self):
        result = run_cegis(RunConfig(target=UpTo(3), learner_id="chain", family_id="notpb"))
        assert result.identified and result.exit_code == 0
        assert result.steps_used == 30
        assert result.correctness_queries == 5
        assert result.cached_verdicts == 25
        assert result.counterexamples == 1
        assert [(entry.step, entry.hypothesis) for entry in result.hypothesis_trace] == [
            (0, "UpTo(0)"),
            (1, "UpTo(1)"),
            (2, "UpTo(2)"),
            (3, "UpTo(3)"),
            (4, "UpTo(4)"),
            (5, "UpTo(3)"),
        ]

    def test_chain_with_hcheck_overshoots(self):
        result = run_cegis(RunConfig(target=UpTo(3), learner_id="chain", verifier=PositiveBounded()))
        assert result.converged and not result.identified
        assert result.exit_code == 3
        assert result.final_hypothesis == UpTo(50)
        assert result.steps_used == 75
        assert result.counterexamples == 0

    def test_gold_on_finite_target(self):
        result = run_cegis(RunConfig(target=Finite((9, 12)), learner_id="gold-finite"))
        assert result.identified
        assert result.correctness_queries == 3
        assert result.steps_used == 27
        assert not result.finite_memory

    def test_pbcegis_identifies(self):
        config = RunConfig(target=FAMILY3_TARGET, learner_id="pbcegis-family3", verifier=PositiveBounded())
        result = run_cegis(config)
        assert result.identified
        assert result.final_hypothesis == Finite((2, 6, 16))
        assert result.probe_queries == 7
        assert result.steps_used == 34
        assert result.max_state_bytes == 56
        assert [entry.hypothesis for entry in result.hypothesis_trace] == [
            "Universe",
            "Pow2AtLeast(1)",
            "Finite{6}",
            "Finite{6,16}",
            "Finite{2,6,16}",
        ]

    def test_zero_budget(self):
        result = run_cegis(RunConfig(target=UpTo(3), learner_id="chain", step_budget=0))
        assert result.steps_used == 0
        assert result.exit_code == 4

    def test_budget_exhausted(self):
        result = run_cegis(RunConfig(target=UpTo(3), learner_id="chain", step_budget=10))
        assert not result.converged
        assert result.exit_code == 4

    def test_memory_bound(self):
        with pytest.raises(MemoryBoundExceeded):
            run_cegis(RunConfig(target=UpTo(3), learner_id="chain", memory_bound=8))

    def test_rejects_bad_window(self):
        with pytest.raises(ValueError):
            RunConfig(target=UpTo(3), learner_id="chain", stability_window=0)

    def test_echo(self):
        echo = RunConfig(target=UpTo(3), learner_id="chain", seed=7).echo()
        assert echo["target"] == "UpTo(3)"
        assert echo["verifier"] == "check(ascending)"
        assert echo["order"] == "ascending"
        assert echo["seed"] == 7


class TestAuditMemory:
    def test_largest_state_wins(self):
        learner = GoldFiniteLearner()
        first = learner.initial_state()
        second = learner.step(first, 9, BOTTOM)
        assert audit_memory([first]) == 24
        assert audit_memory([first, second]) == 32

    def test_no_states(self):
        assert audit_memory([]) == 0


class TestIdentifyOverOrders:
    def test_gold_over_three_orders(self):
        orders = [ASCENDING, TranscriptOrder.scripted([12, 9]), TranscriptOrder.shuffled(3)]
        summary = identify_over_orders(RunConfig(target=Finite((9, 12)), learner_id="gold-finite"), orders)
        assert summary.identified_all
        assert summary.orders == ["ascending", "scripted:12,9", "shuffle:3"]
        assert summary.results[1].hypothesis_trace[1].hypothesis == "Finite{12}"

    def test_needs_orders(self):
        with pytest.raises(ValueError):
            identify_over_orders(RunConfig(target=UpTo(3), learner_id="chain"), [])


class TestAdversary:
    def test_confuses_lossy_gold(self):
        result = adversary_search("gold-lossy")
        assert result.found
        assert not result.budget_exhausted
        witness = result.witness
        assert witness.language_without != witness.language_with
        assert witness.hypothesis_without == witness.hypothesis_with

    def test_pbcegis_holds_up(self):
        result = adversary_search("pbcegis-family3", budget=10_000)
        assert not result.found
        assert result.steps_used <= 10_000

    def test_search_reports_budget_exhaustion(self):
        result = adversary_search("pbcegis-family3", budget=0)
        assert not result.found
        assert result.budget_exhausted
        assert result.to_dict()["budget_exhausted"] is True

    def test_search_reports_candidates_exhausted(self):
        # a single exponent leaves nothing to insert
        result = adversary_search("gold-lossy", max_exponent=0)
        assert not result.found
        assert not result.budget_exhausted
        assert result.steps_used == 0

    def test_needs_finite_memory(self):
        with pytest.raises(UnsupportedLearner):
            adversary_search("gold-finite")
