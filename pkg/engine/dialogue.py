# engine/dialogue.py
"""
Oracle side of a CEGIS dialogue.

A DialogueSession knows the target and answers the two CEGIS queries:
q_wit+ from a transcript and q_corr through the configured verifier. It
enforces the CEGIS interface, oracle consistency and non-redundancy, and
memoises verdicts of stateless verifiers by candidate rendering.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Set

from core.errors import LabError
from core.language import BOTTOM, Answer, LanguageRepr
from core.queries import CEGIS_INTERFACE, Correctness, PositiveWitness, Verdict, Witness
from core.transcript import ASCENDING, CexEntry, CexSequence, Transcript, TranscriptOrder
from learners.base import Learner, LearnerState
from utils.query_tracker import QueryTracker
from verifiers.checks import apply_verifier
from verifiers.kinds import VerifierKind, is_stateless

logger = logging.getLogger(__name__)


class InconsistentOracle(LabError):
    """Raised when the oracle breaks consistency or non-redundancy (a defect, never expected)"""
    pass


class MemoryBoundExceeded(LabError):
    """Raised when a finite-memory learner's state outgrows the configured bound"""
    pass


class DialogueSession:
    """
    One target, one verifier, one transcript.

    Args:
        target: the language the oracle knows
        verifier: how correctness queries are answered
        order: transcript order (ignored when stream is given)
        stream: explicit q_wit+ answers, used by the adversary search
        allow_repeats: accept repeated positives (adversary streams only)
        tracker: query accounting
    """

    def __init__(
        self,
        target: LanguageRepr,
        verifier: VerifierKind,
        order: TranscriptOrder = ASCENDING,
        stream: Optional[Iterable[Answer]] = None,
        allow_repeats: bool = False,
        tracker: Optional[QueryTracker] = None,
    ):
        self.target = target
        self.verifier = verifier
        self.allow_repeats = allow_repeats
        self.tracker = tracker or QueryTracker()
        self.interface = CEGIS_INTERFACE

        self._positives: Iterator[Answer] = iter(stream) if stream is not None else Transcript(target, order).entries()
        self._memo: Dict[str, Answer] = {}
        self._memoise = is_stateless(verifier)
        self._delivered: Set[int] = set()
        self._refuted: Set[int] = set()

        self.seen: List[Answer] = []
        self.cex = CexSequence()

    def positive_witness(self) -> Answer:
        """q_wit+: τ(n), or bottom once the transcript is exhausted."""
        pos = next(self._positives)
        self.interface.require(PositiveWitness(), Witness(pos))
        if pos is not BOTTOM:
            if pos in self._delivered and not self.allow_repeats:
                raise InconsistentOracle(f"Positive {pos} delivered twice")
            if pos in self._refuted:
                raise InconsistentOracle(f"{pos} already returned as a counterexample")
            self._delivered.add(pos)
        self.seen.append(pos)
        self.tracker.add_positive_query()
        return pos

    def correctness(self, candidate: LanguageRepr, probe: bool = False) -> Answer:
        """q_corr on candidate; memoised for stateless verifiers."""
        key = str(candidate)
        if self._memoise and key in self._memo:
            self.tracker.add_cached_verdict()
            return self._memo[key]

        verdict = apply_verifier(self.verifier, self.target, candidate, self.seen)
        self.interface.require(Correctness(candidate), Verdict(verdict))
        if verdict is not BOTTOM:
            if not candidate.contains(verdict) or self.target.contains(verdict):
                raise InconsistentOracle(f"{self.verifier} returned {verdict} for {candidate} against {self.target}")
            if verdict in self._delivered:
                raise InconsistentOracle(f"Counterexample {verdict} was delivered as a positive")
            self._refuted.add(verdict)

        self.cex.append(CexEntry(verdict, str(self.verifier), key, probe))
        self.tracker.add_correctness_query(probe)
        if self._memoise:
            self._memo[key] = verdict
        return verdict


@dataclass(frozen=True)
class Exchange:
    """One dialogue step seen from the engine."""

    pos: Answer
    verdict: Answer
    queried: LanguageRepr
    probe: bool
    state: LearnerState


def exchange(session: DialogueSession, learner: Learner, state: LearnerState) -> Exchange:
    """q_wit+, then q_corr on the learner's query language, then learn(state, τ(n), cex(n))."""
    pos = session.positive_witness()
    queried = state.query_language
    probe = state.probe is not None
    verdict = session.correctness(queried, probe=probe)
    next_state = learner.step(state, pos, verdict)
    logger.debug(f"pos={pos} q_corr({queried})={verdict} -> {next_state.hypothesis}")
    return Exchange(pos, verdict, queried, probe, next_state)
