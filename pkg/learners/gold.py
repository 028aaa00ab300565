# learners/gold.py
from config.constants import LOSSY_WINDOW
from core.language import BOTTOM, EMPTY, Answer, Finite, LanguageRepr
from learners.base import Learner, LearnerState


def _sample_language(values) -> LanguageRepr:
    return Finite(tuple(values)) if values else EMPTY


class GoldFiniteLearner(Learner):
    """
    Guesses exactly the sample seen so far.

    Commits to every positive; the hypothesis never holds a counterexample
    because counterexamples are never positives. Remembers the whole
    sample, so it is not a finite-memory learner.
    """

    learner_id = "gold-finite"
    finite_memory = False

    def initial_state(self) -> LearnerState:
        return LearnerState(self.learner_id, EMPTY, aux=(("sample", ()),))

    def _advance(self, state: LearnerState, pos: Answer, cex: Answer) -> LearnerState:
        sample = set(state.get("sample", ()))
        if pos is BOTTOM or pos in sample:
            return state
        sample.add(pos)
        ordered = tuple(sorted(sample))
        return state.evolve(hypothesis=_sample_language(ordered), sample=ordered)


class LossyGoldLearner(Learner):
    """Gold-style guess over the last few positives only (finite-memory baseline)."""

    learner_id = "gold-lossy"
    finite_memory = True

    def __init__(self, window: int = LOSSY_WINDOW):
        self.window = window

    def initial_state(self) -> LearnerState:
        return LearnerState(self.learner_id, EMPTY, aux=(("recent", ()),))

    def _advance(self, state: LearnerState, pos: Answer, cex: Answer) -> LearnerState:
        if pos is BOTTOM:
            return state
        recent = (tuple(state.get("recent", ())) + (pos,))[-self.window:]
        return state.evolve(hypothesis=_sample_language(set(recent)), recent=recent)
