# learners/pbcegis.py
"""
Finite-memory learner for Family 3 under positive-bounded counterexamples.

Phase 1 guesses Pow2AtLeast(i) for the least power of two seen. The first
positive of the form 3*2^k switches to phase 2: probe singletons {3^k}
for k = 2, 3, ... until one draws no counterexample (that k is B_p), then
probe {2^j} for 2^j < 3^B_p to recover which powers of two belong to the
target, then keep guessing the recovered sample Gold-style. The recovered
set lives in the Finite hypothesis; auxiliary state is five naturals.
"""
import logging
from typing import FrozenSet, Optional, Protocol, Sequence, Set

from config.constants import PB_FIRST_BOUND_EXPONENT
from core.language import (
    BOTTOM,
    UNIVERSE,
    Answer,
    Finite,
    LanguageRepr,
    Pow2AtLeast,
    is_power_of_two,
    pow32_pair,
)
from learners.base import Learner, LearnerError, LearnerState, PhaseError
from verifiers.kinds import PositiveBounded

logger = logging.getLogger(__name__)

PHASE_POWERS = 1
PHASE_BOUND = 2
PHASE_RECOVER = 3
PHASE_GOLD = 4

MAX_BOUND_EXPONENT = 64


class CorrectnessOracle(Protocol):
    seen: Sequence[Answer]

    def correctness(self, candidate: LanguageRepr, probe: bool = False) -> Answer:
        ...


def is_trigger(x: Answer) -> bool:
    """True for positives of the form 3*2^k."""
    if x is BOTTOM:
        return False
    pair = pow32_pair(x)
    return pair is not None and pair[0] == 1


def pb_discover_bound(oracle: CorrectnessOracle) -> int:
    """
    Least k >= 2 such that the singleton {3^k} draws no counterexample.

    Raises:
        PhaseError: no 3*2^k positive has been seen yet
    """
    if not any(is_trigger(x) for x in oracle.seen):
        raise PhaseError("Bound discovery needs a positive of the form 3*2^k")
    k = PB_FIRST_BOUND_EXPONENT
    while oracle.correctness(Finite((3 ** k,)), probe=True) is not BOTTOM:
        k += 1
        if k > MAX_BOUND_EXPONENT:
            raise LearnerError("No silent {3^k} probe found; is the oracle positive-bounded?")
    return k


def pb_recover_positives(
    oracle: CorrectnessOracle,
    bound_exp: int,
    ceiling: Optional[int] = None,
) -> FrozenSet[int]:
    """
    Powers of two below 3^bound_exp that belong to the target.

    Args:
        oracle: positive-bounded correctness oracle
        bound_exp: B_p from pb_discover_bound
        ceiling: largest positive seen, when the caller tracks it; probes
                 above it are skipped because their silence is ambiguous

    Returns:
        Set of recovered powers of two
    """
    limit = 3 ** bound_exp
    found: Set[int] = set()
    j = 0
    while (1 << j) < limit and (ceiling is None or (1 << j) <= ceiling):
        if oracle.correctness(Finite((1 << j,)), probe=True) is BOTTOM:
            found.add(1 << j)
        j += 1
    return frozenset(found)


class PbcegisFamily3Learner(Learner):
    learner_id = "pbcegis-family3"
    finite_memory = True
    native_verifier = PositiveBounded()

    def initial_state(self) -> LearnerState:
        return LearnerState(
            self.learner_id,
            UNIVERSE,
            aux=(("bound_exp", -1), ("cursor", -1), ("high", -1), ("min_exp", -1), ("phase", PHASE_POWERS)),
        )

    def _advance(self, state: LearnerState, pos: Answer, cex: Answer) -> LearnerState:
        high = state.get("high", -1)
        if pos is not BOTTOM:
            high = max(high, pos)

        phase = state.get("phase")
        if phase == PHASE_POWERS:
            return self._phase_powers(state, pos, high)

        elements = set(state.hypothesis.elements) if isinstance(state.hypothesis, Finite) else set()
        if pos is not BOTTOM:
            elements.add(pos)

        if phase == PHASE_BOUND:
            k = state.get("bound_exp")
            if cex is not BOTTOM:
                return state.evolve(
                    hypothesis=Finite(tuple(elements)),
                    probe=Finite((3 ** (k + 1),)),
                    bound_exp=k + 1,
                    high=high,
                )
            logger.debug(f"Bound found: B_p={k}")
            return self._next_probe(state, elements, 0, high)

        if phase == PHASE_RECOVER:
            j = state.get("cursor")
            if cex is BOTTOM:
                elements.add(1 << j)
            return self._next_probe(state, elements, j + 1, high)

        # Gold phase: the verdict answers the hypothesis itself
        if cex is not BOTTOM:
            elements.discard(cex)
        return state.evolve(hypothesis=Finite(tuple(elements)), high=high)

    def _phase_powers(self, state: LearnerState, pos: Answer, high: int) -> LearnerState:
        if pos is BOTTOM:
            return state
        if is_power_of_two(pos):
            exponent = pos.bit_length() - 1
            least = state.get("min_exp", -1)
            least = exponent if least < 0 else min(least, exponent)
            return state.evolve(hypothesis=Pow2AtLeast(least), min_exp=least, high=high)
        if is_trigger(pos):
            k = PB_FIRST_BOUND_EXPONENT
            return state.evolve(
                hypothesis=Finite((pos,)),
                probe=Finite((3 ** k,)),
                phase=PHASE_BOUND,
                bound_exp=k,
                high=high,
            )
        # outside Family 3
        return state.evolve(high=high)

    def _next_probe(self, state: LearnerState, elements: Set[int], cursor: int, high: int) -> LearnerState:
        value = 1 << cursor
        hypothesis = Finite(tuple(elements))
        if value < 3 ** state.get("bound_exp") and value <= high:
            return state.evolve(
                hypothesis=hypothesis,
                probe=Finite((value,)),
                phase=PHASE_RECOVER,
                cursor=cursor,
                high=high,
            )
        return state.evolve(hypothesis=hypothesis, probe=None, phase=PHASE_GOLD, cursor=cursor, high=high)
