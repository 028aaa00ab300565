# learners/batch.py
"""Infinite-memory learners: keep the whole History and guess from it."""
import logging
from typing import List

from core.language import (
    EMPTY,
    UNIVERSE,
    Answer,
    Finite,
    LanguageRepr,
    Pow2AtLeast,
    Pow32Finite,
    UpTo,
    is_power_of_two,
    pow32_pair,
)
from learners.base import History, Learner, LearnerError, LearnerState
from verifiers.kinds import PositiveBounded

logger = logging.getLogger(__name__)

BIAS_GOLD = "gold"
BIAS_FAMILY3 = "family3"
BIAS_CHAIN = "chain"
BIASES = (BIAS_GOLD, BIAS_FAMILY3, BIAS_CHAIN)


def _candidates(bias: str, history: History) -> List[LanguageRepr]:
    positives = sorted(history.positives)
    if not positives:
        return []
    if bias == BIAS_GOLD:
        return [Finite(tuple(positives))]
    if bias == BIAS_FAMILY3:
        forms: List[LanguageRepr] = []
        if all(is_power_of_two(x) for x in positives):
            forms.append(Pow2AtLeast(positives[0].bit_length() - 1))
        if all(pow32_pair(x) is not None for x in positives):
            forms.append(Pow32Finite.from_values(positives))
        return forms
    if bias == BIAS_CHAIN:
        return [UpTo(positives[-1])]
    raise LearnerError(f"Unknown batch bias: {bias}")


def learn_batch(bias: str, history: History) -> LanguageRepr:
    """
    Catalog hypothesis holding every positive and no negative of history.

    Args:
        bias: `gold`, `family3` or `chain`
        history: everything told so far

    Returns:
        Universe for an empty history, the first consistent candidate of
        the bias otherwise, Empty when none is consistent
    """
    if bias not in BIASES:
        raise LearnerError(f"Unknown batch bias: {bias}")
    if history.empty:
        return UNIVERSE
    if not history.consistent:
        return EMPTY

    for candidate in _candidates(bias, history):
        if not any(candidate.contains(x) for x in history.negatives):
            return candidate
    return EMPTY


class HistoryLearner(Learner):
    """Stores all positives and counterexamples; not finite memory."""

    finite_memory = False

    def __init__(self, bias: str):
        if bias not in BIASES:
            raise LearnerError(f"Unknown batch bias: {bias}")
        self.bias = bias
        self.learner_id = f"history-{bias}"
        if bias == BIAS_FAMILY3:
            self.native_verifier = PositiveBounded()

    def initial_state(self) -> LearnerState:
        return LearnerState(self.learner_id, UNIVERSE, aux=(("negatives", ()), ("positives", ())))

    def _advance(self, state: LearnerState, pos: Answer, cex: Answer) -> LearnerState:
        history = History(frozenset(state.get("positives", ())), frozenset(state.get("negatives", ())))
        updated = history.record(pos, cex)
        if updated == history:
            return state
        return state.evolve(
            hypothesis=learn_batch(self.bias, updated),
            positives=tuple(sorted(updated.positives)),
            negatives=tuple(sorted(updated.negatives)),
        )
