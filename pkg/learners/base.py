# learners/base.py
import hashlib
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Optional, Tuple

from config.constants import SLOT_BYTES
from core.errors import LabError
from core.language import BOTTOM, Answer, LanguageRepr, require_example
from verifiers.kinds import Arbitrary, VerifierKind

logger = logging.getLogger(__name__)


class LearnerError(LabError):
    """Base class for learner failures"""
    pass


class InconsistentInput(LearnerError, ValueError):
    """Raised when the same example arrives as positive and as counterexample"""
    pass


class PhaseError(LearnerError):
    """Raised when a phase-specific procedure runs too early"""
    pass


class NoConsistentConcept(LearnerError):
    """Raised when enumeration eliminates every concept"""
    pass


class UnknownLearner(LearnerError, ValueError):
    """Raised for an unregistered learner id"""
    pass


class UnsupportedLearner(LearnerError, ValueError):
    """Raised when an operation needs a capability the learner lacks"""
    pass


class MissingConcepts(LearnerError, ValueError):
    """Raised when an enumerating learner is given no concept list"""
    pass


_KEEP = object()


def _slot(value: Any) -> bytes:
    if value is None or value is BOTTOM:
        value = -1
    if isinstance(value, bool):
        value = int(value)
    try:
        return int(value).to_bytes(SLOT_BYTES, "big", signed=True)
    except OverflowError:
        return hashlib.blake2b(str(value).encode(), digest_size=SLOT_BYTES).digest()


def _language_slot(language: Optional[LanguageRepr]) -> bytes:
    # one fixed-width slot standing for the program index of the language
    if language is None:
        return bytes(SLOT_BYTES)
    return hashlib.blake2b(str(language).encode(), digest_size=SLOT_BYTES).digest()


@dataclass(frozen=True)
class LearnerState:
    """Hypothesis, optional pending probe, and a small record of auxiliary values."""

    learner_id: str
    hypothesis: LanguageRepr
    probe: Optional[LanguageRepr] = None
    aux: Tuple[Tuple[str, Any], ...] = ()

    def get(self, name: str, default: Any = None) -> Any:
        for key, value in self.aux:
            if key == name:
                return value
        return default

    def evolve(self, *, hypothesis: Optional[LanguageRepr] = None, probe: Any = _KEEP, **updates) -> "LearnerState":
        aux: Dict[str, Any] = dict(self.aux)
        aux.update(updates)
        return LearnerState(
            learner_id=self.learner_id,
            hypothesis=self.hypothesis if hypothesis is None else hypothesis,
            probe=self.probe if probe is _KEEP else probe,
            aux=tuple(sorted(aux.items())),
        )

    @property
    def query_language(self) -> LanguageRepr:
        """Language put to the next correctness query."""
        return self.probe if self.probe is not None else self.hypothesis

    def serialize(self) -> bytes:
        parts = [_language_slot(self.hypothesis), _language_slot(self.probe)]
        for _, value in self.aux:
            if isinstance(value, tuple):
                parts.append(_slot(len(value)))
                parts.extend(_slot(item) for item in value)
            else:
                parts.append(_slot(value))
        return b"".join(parts)

    @property
    def serialized_size(self) -> int:
        return len(self.serialize())


@dataclass(frozen=True)
class History:
    """Everything an infinite-memory learner has been told."""

    positives: FrozenSet[int] = field(default_factory=frozenset)
    negatives: FrozenSet[int] = field(default_factory=frozenset)

    @property
    def consistent(self) -> bool:
        return not (self.positives & self.negatives)

    @property
    def empty(self) -> bool:
        return not self.positives and not self.negatives

    def record(self, pos: Answer, cex: Answer) -> "History":
        positives, negatives = self.positives, self.negatives
        if pos is not BOTTOM:
            positives = positives | {pos}
        if cex is not BOTTOM:
            negatives = negatives | {cex}
        return History(positives, negatives)


class Learner(ABC):
    """
    Iterative learner: learn(state, τ(n), cex(n)) -> next state.

    Subclasses set `learner_id`, declare whether they are finite memory and
    name the verifier they are designed against.
    """

    learner_id: str = ""
    finite_memory: bool = True
    native_verifier: VerifierKind = Arbitrary()

    @abstractmethod
    def initial_state(self) -> LearnerState:
        ...

    @abstractmethod
    def _advance(self, state: LearnerState, pos: Answer, cex: Answer) -> LearnerState:
        ...

    def step(self, state: LearnerState, pos: Answer, cex: Answer) -> LearnerState:
        if state.learner_id != self.learner_id:
            raise LearnerError(f"State of '{state.learner_id}' given to '{self.learner_id}'")
        if pos is not BOTTOM:
            require_example(pos)
        if cex is not BOTTOM:
            require_example(cex)
            if cex == pos:
                raise InconsistentInput(f"{pos} delivered as positive and as counterexample")
        return self._advance(state, pos, cex)
