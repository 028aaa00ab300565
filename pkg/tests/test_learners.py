"""Iterative learners, batch learners and the registry."""

import pytest

from core.language import BOTTOM, EMPTY, UNIVERSE, Finite, Pow2AtLeast, Pow32Finite, UpTo
from engine.dialogue import DialogueSession
from learners.base import (
    History,
    InconsistentInput,
    LearnerError,
    NoConsistentConcept,
    PhaseError,
    UnknownLearner,
)
from learners.batch import HistoryLearner, learn_batch
from learners.chain import ChainLearner
from learners.enumeration import ConsistentEnumLearner
from learners.gold import GoldFiniteLearner, LossyGoldLearner
from learners.pbcegis import PbcegisFamily3Learner, is_trigger, pb_discover_bound, pb_recover_positives
from learners.registry import LEARNER_IDS, build_learner, learn_step
from verifiers.kinds import PositiveBounded

FAMILY3_TARGET = Pow32Finite(((0, 1), (1, 1), (0, 4)))


def _feed(learner, steps):
    state = learner.initial_state()
    for pos, cex in steps:
        state = learner.step(state, pos, cex)
    return state


class TestGold:
    def test_guesses_the_sample(self):
        state = _feed(GoldFiniteLearner(), [(3, BOTTOM), (BOTTOM, BOTTOM), (1, BOTTOM)])
        assert state.hypothesis == Finite((1, 3))

    def test_starts_empty(self):
        assert GoldFiniteLearner().initial_state().hypothesis == EMPTY

    def test_lossy_keeps_last_window(self):
        state = _feed(LossyGoldLearner(), [(1, BOTTOM), (2, BOTTOM), (3, BOTTOM), (4, BOTTOM)])
        assert state.hypothesis == Finite((2, 3, 4))

    def test_same_example_both_ways(self):
        learner = GoldFiniteLearner()
        with pytest.raises(InconsistentInput):
            learner.step(learner.initial_state(), 3, 3)

    def test_foreign_state(self):
        with pytest.raises(LearnerError):
            GoldFiniteLearner().step(LossyGoldLearner().initial_state(), 1, BOTTOM)


class TestChain:
    def test_walks_up_then_steps_back(self):
        learner = ChainLearner([UpTo(0), UpTo(1), UpTo(2)])
        state = _feed(learner, [(0, BOTTOM), (BOTTOM, 1)])
        assert state.hypothesis == UpTo(0)
        assert state.get("settled")
        assert learner.step(state, BOTTOM, BOTTOM) == state

    def test_stays_on_last_member(self):
        learner = ChainLearner([UpTo(0), UpTo(1)])
        state = _feed(learner, [(BOTTOM, BOTTOM)] * 4)
        assert state.hypothesis == UpTo(1)

    def test_default_chain(self):
        assert len(ChainLearner().members) == 51

    def test_needs_members(self):
        with pytest.raises(LearnerError):
            ChainLearner([])


class TestConsistentEnum:
    def test_moves_forward_only(self):
        learner = ConsistentEnumLearner([Finite((0,)), Finite((0, 1)), Finite((1, 2))])
        state = _feed(learner, [(1, BOTTOM)])
        assert state.get("index") == 1
        state = learner.step(state, 2, BOTTOM)
        assert state.hypothesis == Finite((1, 2))

    def test_counterexample_eliminates(self):
        learner = ConsistentEnumLearner([Finite((0, 1)), Finite((0,))])
        assert _feed(learner, [(0, 1)]).hypothesis == Finite((0,))

    def test_no_consistent_concept(self):
        learner = ConsistentEnumLearner([Finite((0,)), Finite((1, 2))])
        with pytest.raises(NoConsistentConcept):
            _feed(learner, [(1, BOTTOM), (0, BOTTOM)])

    def test_for_class(self):
        learner = ConsistentEnumLearner.for_class([[0], [1, 2]])
        assert learner.concepts == [Finite((0,)), Finite((1, 2))]


class TestBatch:
    def test_empty_history(self):
        assert learn_batch("gold", History()) == UNIVERSE

    def test_inconsistent_history(self):
        assert learn_batch("gold", History(frozenset({3}), frozenset({3}))) == EMPTY

    def test_gold(self):
        assert learn_batch("gold", History(frozenset({2, 6}))) == Finite((2, 6))

    def test_family3_prefers_powers(self):
        assert learn_batch("family3", History(frozenset({2, 4}))) == Pow2AtLeast(1)

    def test_family3_falls_back_to_finite(self):
        history = History(frozenset({2, 4}), frozenset({8}))
        assert learn_batch("family3", history) == Pow32Finite.from_values([2, 4])

    def test_chain(self):
        assert learn_batch("chain", History(frozenset({1, 5}))) == UpTo(5)
        assert learn_batch("chain", History(frozenset({1, 5}), frozenset({3}))) == EMPTY

    def test_unknown_bias(self):
        with pytest.raises(LearnerError):
            learn_batch("oracle", History())

    def test_history_learner(self):
        learner = HistoryLearner("gold")
        assert learner.learner_id == "history-gold"
        assert not learner.finite_memory
        state = _feed(learner, [(2, BOTTOM), (6, 3)])
        assert state.hypothesis == Finite((2, 6))
        assert state.get("negatives") == (3,)


class TestPbcegis:
    def test_initial_state_size(self):
        assert PbcegisFamily3Learner().initial_state().serialized_size == 56

    def test_powers_phase(self):
        state = _feed(PbcegisFamily3Learner(), [(4, BOTTOM), (1, BOTTOM)])
        assert state.hypothesis == Pow2AtLeast(0)
        assert state.probe is None

    def test_trigger_opens_bound_phase(self):
        state = _feed(PbcegisFamily3Learner(), [(2, BOTTOM), (6, BOTTOM)])
        assert state.hypothesis == Finite((6,))
        assert state.probe == Finite((9,))
        assert state.query_language == Finite((9,))

    def test_is_trigger(self):
        assert is_trigger(3) and is_trigger(12)
        assert not is_trigger(4) and not is_trigger(9) and not is_trigger(BOTTOM)

    def test_discover_and_recover(self):
        session = DialogueSession(FAMILY3_TARGET, PositiveBounded())
        for _ in range(3):
            session.positive_witness()
        assert session.seen == [2, 6, 16]
        assert pb_discover_bound(session) == 3
        assert pb_recover_positives(session, 3, ceiling=16) == frozenset({2, 16})

    def test_discover_needs_trigger(self):
        session = DialogueSession(UpTo(3), PositiveBounded())
        session.positive_witness()
        with pytest.raises(PhaseError):
            pb_discover_bound(session)


class TestRegistry:
    def test_ids(self):
        assert "pbcegis-family3" in LEARNER_IDS and "history-chain" in LEARNER_IDS

    def test_unknown(self):
        with pytest.raises(UnknownLearner):
            build_learner("telepath")

    def test_consistent_enum_needs_concepts(self):
        with pytest.raises(LearnerError):
            build_learner("consistent-enum")

    def test_learn_step_from_scratch(self):
        assert learn_step("gold-finite", None, 4, BOTTOM).hypothesis == Finite((4,))
