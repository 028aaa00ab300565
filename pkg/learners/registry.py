# learners/registry.py
from typing import Callable, Dict, Optional, Sequence

from core.language import Answer, LanguageRepr
from learners.base import Learner, LearnerState, MissingConcepts, UnknownLearner
from learners.batch import BIAS_CHAIN, BIAS_FAMILY3, BIAS_GOLD, HistoryLearner
from learners.chain import ChainLearner
from learners.enumeration import ConsistentEnumLearner
from learners.gold import GoldFiniteLearner, LossyGoldLearner
from learners.pbcegis import PbcegisFamily3Learner


def _consistent_enum(concepts: Optional[Sequence[LanguageRepr]]) -> Learner:
    if not concepts:
        raise MissingConcepts("consistent-enum needs the concept list of its class")
    return ConsistentEnumLearner(concepts)


_BUILDERS: Dict[str, Callable[[Optional[Sequence[LanguageRepr]]], Learner]] = {
    "gold-finite": lambda concepts: GoldFiniteLearner(),
    "gold-lossy": lambda concepts: LossyGoldLearner(),
    "chain": lambda concepts: ChainLearner(concepts),
    "pbcegis-family3": lambda concepts: PbcegisFamily3Learner(),
    "consistent-enum": _consistent_enum,
    "history-gold": lambda concepts: HistoryLearner(BIAS_GOLD),
    "history-family3": lambda concepts: HistoryLearner(BIAS_FAMILY3),
    "history-chain": lambda concepts: HistoryLearner(BIAS_CHAIN),
}

LEARNER_IDS = list(_BUILDERS)


def build_learner(learner_id: str, concepts: Optional[Sequence[LanguageRepr]] = None) -> Learner:
    """
    Instantiate a registered learner.

    Args:
        learner_id: one of LEARNER_IDS
        concepts: class to enumerate (consistent-enum) or chain to walk (chain)

    Raises:
        UnknownLearner: learner_id is not registered
    """
    try:
        builder = _BUILDERS[learner_id]
    except KeyError:
        raise UnknownLearner(f"Unknown learner: {learner_id!r} (known: {', '.join(LEARNER_IDS)})") from None
    return builder(concepts)


def learn_step(
    learner_id: str,
    state: Optional[LearnerState],
    pos: Answer,
    cex: Answer,
    concepts: Optional[Sequence[LanguageRepr]] = None,
) -> LearnerState:
    """One learn(L_n, τ(n), cex(n)) step; a None state means the learner's initial state."""
    learner = build_learner(learner_id, concepts)
    return learner.step(state or learner.initial_state(), pos, cex)
