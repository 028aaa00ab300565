# engine/adversary.py
"""
Confusion search against finite-memory learners on Family 3.

For a prefix τ_s of powers of two, a power 2^m outside it and a trigger
3*2^p, the learner is replayed on τ_s and on τ_s with 2^m inserted, each
followed by the trigger forever. The two dialogues describe the distinct
languages SAMPLE(τ_s) ∪ {3*2^p} and SAMPLE(τ_s) ∪ {2^m, 3*2^p}. If the
learner's states agree after the prefixes and both continuations settle
on the same hypothesis, the learner cannot identify both: a
ConfusionWitness.
"""
import logging
from dataclasses import dataclass
from itertools import chain, combinations, repeat
from typing import Any, Dict, List, Optional, Sequence, Tuple

from config.settings import settings
from core.language import LanguageRepr, Pow32Finite, languages_equal
from engine.dialogue import DialogueSession, exchange
from learners.base import Learner, LearnerState, UnsupportedLearner
from learners.registry import build_learner
from verifiers.kinds import VerifierKind

logger = logging.getLogger(__name__)

MAX_PREFIX_LENGTH = 4
TRIGGER_EXPONENTS = (0, 1)


@dataclass(frozen=True)
class ConfusionWitness:
    prefix: Tuple[int, ...]
    inserted: int
    position: int
    trigger: int
    language_without: LanguageRepr
    language_with: LanguageRepr
    hypothesis_without: LanguageRepr
    hypothesis_with: LanguageRepr

    @property
    def stream_with(self) -> Tuple[int, ...]:
        return self.prefix[: self.position] + (self.inserted,) + self.prefix[self.position:]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "prefix": list(self.prefix),
            "inserted": self.inserted,
            "position": self.position,
            "trigger": self.trigger,
            "language_without": str(self.language_without),
            "language_with": str(self.language_with),
            "hypothesis_without": str(self.hypothesis_without),
            "hypothesis_with": str(self.hypothesis_with),
        }


@dataclass(frozen=True)
class AdversaryResult:
    learner_id: str
    found: bool
    witness: Optional[ConfusionWitness]
    steps_used: int
    budget_exhausted: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "learner": self.learner_id,
            "found": self.found,
            "witness": self.witness.to_dict() if self.witness else None,
            "steps_used": self.steps_used,
            "budget_exhausted": self.budget_exhausted,
        }


class _Replay:
    """A learner driven by an explicit positive stream."""

    def __init__(self, learner: Learner, verifier: VerifierKind, stream: Sequence[int], trigger: int):
        self.learner = learner
        self.language = Pow32Finite.from_values(list(stream) + [trigger])
        self.session = DialogueSession(
            self.language,
            verifier,
            stream=chain(stream, repeat(trigger)),
            allow_repeats=True,
        )
        self.state: LearnerState = learner.initial_state()

    def advance(self, steps: int) -> None:
        for _ in range(steps):
            self.state = exchange(self.session, self.learner, self.state).state


def _candidates(max_exponent: int):
    exponents = range(max_exponent + 1)
    for length in range(1, MAX_PREFIX_LENGTH + 1):
        for chosen in combinations(exponents, length):
            prefix = tuple(1 << e for e in chosen)
            for m in exponents:
                if m in chosen:
                    continue
                # appending first, then earlier insertion points
                for position in range(length, -1, -1):
                    for p in TRIGGER_EXPONENTS:
                        yield prefix, 1 << m, position, 3 << p


def adversary_search(
    learner_id: str,
    max_exponent: Optional[int] = None,
    budget: Optional[int] = None,
    continuation: Optional[int] = None,
    verifier: Optional[VerifierKind] = None,
) -> AdversaryResult:
    """
    Search for two Family-3 transcripts the learner cannot tell apart.

    Args:
        learner_id: a registered finite-memory learner
        max_exponent: largest exponent of 2 in prefixes
        budget: simulated learner steps allowed in total
        continuation: trigger steps replayed after equal states
        verifier: correctness oracle (defaults to the learner's native one)

    Raises:
        UnsupportedLearner: the learner is not finite memory
    """
    max_exponent = settings.ADVERSARY_MAX_EXPONENT if max_exponent is None else max_exponent
    budget = settings.ADVERSARY_BUDGET if budget is None else budget
    continuation = settings.ADVERSARY_CONTINUATION if continuation is None else continuation

    learner = build_learner(learner_id)
    if not learner.finite_memory:
        raise UnsupportedLearner(f"{learner_id} is not a finite-memory learner")
    verifier = verifier or learner.native_verifier

    steps = 0
    exhausted = False
    for prefix, inserted, position, trigger in _candidates(max_exponent):
        stream_with: List[int] = list(prefix[:position]) + [inserted] + list(prefix[position:])
        cost = len(prefix) + len(stream_with)
        if steps + cost > budget:
            exhausted = True
            break

        without = _Replay(learner, verifier, prefix, trigger)
        with_ = _Replay(learner, verifier, stream_with, trigger)
        without.advance(len(prefix))
        with_.advance(len(stream_with))
        steps += cost
        if without.state.serialize() != with_.state.serialize():
            continue

        if steps + 2 * continuation > budget:
            exhausted = True
            break
        without.advance(continuation)
        with_.advance(continuation)
        steps += 2 * continuation

        a, b = without.state, with_.state
        if a.probe is None and b.probe is None and languages_equal(a.hypothesis, b.hypothesis):
            witness = ConfusionWitness(
                prefix=prefix,
                inserted=inserted,
                position=position,
                trigger=trigger,
                language_without=without.language,
                language_with=with_.language,
                hypothesis_without=a.hypothesis,
                hypothesis_with=b.hypothesis,
            )
            logger.info(f"Confusion witness for {learner_id} after {steps} steps: {witness.to_dict()}")
            return AdversaryResult(learner_id, True, witness, steps)

    reason = "budget exhausted" if exhausted else "candidates exhausted"
    logger.info(f"No confusion witness for {learner_id}: {reason} after {steps} of {budget} steps")
    return AdversaryResult(learner_id, False, None, steps, budget_exhausted=exhausted)
