# learners/chain.py
from typing import Optional, Sequence

from config.settings import settings
from core.language import BOTTOM, Answer, LanguageRepr
from families.generators import family_notpb
from learners.base import Learner, LearnerError, LearnerState


class ChainLearner(Learner):
    """
    Walks up a nested chain of languages while correctness queries stay
    silent; on the first counterexample it steps back one member and stops.

    Ignores positives. Commits only to the counterexample that ended the
    walk (the member it reports excludes it).
    """

    learner_id = "chain"
    finite_memory = True

    def __init__(self, members: Optional[Sequence[LanguageRepr]] = None):
        if members is None:
            members = family_notpb(settings.NOTPB_MAX_INDEX)
        if not members:
            raise LearnerError("chain learner needs at least one member")
        self.members = list(members)

    def initial_state(self) -> LearnerState:
        return LearnerState(self.learner_id, self.members[0], aux=(("index", 0), ("settled", False)))

    def _advance(self, state: LearnerState, pos: Answer, cex: Answer) -> LearnerState:
        if state.get("settled"):
            return state
        index = state.get("index", 0)
        if cex is BOTTOM:
            if index + 1 >= len(self.members):
                return state
            return state.evolve(hypothesis=self.members[index + 1], index=index + 1)
        back = max(index - 1, 0)
        return state.evolve(hypothesis=self.members[back], index=back, settled=True)
