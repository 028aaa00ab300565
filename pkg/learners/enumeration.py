# learners/enumeration.py
import logging
from typing import Iterable, Sequence

from core.language import BOTTOM, Answer, Finite, LanguageRepr
from learners.base import Learner, LearnerState, MissingConcepts, NoConsistentConcept

logger = logging.getLogger(__name__)


def _agrees(language: LanguageRepr, pos: Answer, cex: Answer) -> bool:
    if pos is not BOTTOM and not language.contains(pos):
        return False
    if cex is not BOTTOM and language.contains(cex):
        return False
    return True


class ConsistentEnumLearner(Learner):
    """
    Identify-by-elimination over an indexed concept list.

    The state is one index. A step keeps the current concept when it agrees
    with (pos, cex); otherwise it moves to the least later concept that
    does. Earlier concepts are never revisited, so only the index and the
    latest example are ever "remembered".
    """

    learner_id = "consistent-enum"
    finite_memory = True

    def __init__(self, concepts: Sequence[LanguageRepr]):
        if not concepts:
            raise MissingConcepts("consistent-enum needs a nonempty concept list")
        self.concepts = list(concepts)

    @classmethod
    def for_class(cls, concepts: Iterable[Iterable[int]]) -> "ConsistentEnumLearner":
        """Build over the concepts of a finite class (each an iterable of examples)."""
        return cls([Finite(tuple(concept)) for concept in concepts])

    def initial_state(self) -> LearnerState:
        return LearnerState(self.learner_id, self.concepts[0], aux=(("index", 0),))

    def _advance(self, state: LearnerState, pos: Answer, cex: Answer) -> LearnerState:
        index = state.get("index", 0)
        if _agrees(self.concepts[index], pos, cex):
            return state
        for j in range(index + 1, len(self.concepts)):
            if _agrees(self.concepts[j], pos, cex):
                logger.debug(f"consistent-enum: {index} -> {j} on pos={pos} cex={cex}")
                return state.evolve(hypothesis=self.concepts[j], index=j)
        raise NoConsistentConcept(f"No concept after index {index} agrees with pos={pos}, cex={cex}")
