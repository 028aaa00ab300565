# finite_lab/queries.py
"""q_mem and q_diff on finite classes, and the sample-complexity measurement."""
import logging
from typing import Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel

from core.errors import InterfaceViolation
from core.language import BOTTOM, Finite
from core.queries import (
    NEGATIVE,
    POSITIVE,
    SAMPLE_COMPLEXITY_INTERFACE,
    Correctness,
    Distinguisher,
    DistinguishingInput,
    Label,
    Membership,
    NoDistinguisher,
    OracleInterfaceSpec,
    PositiveWitness,
    Verdict,
    Witness,
)
from finite_lab.concept_class import FiniteConceptClass
from finite_lab.dimensions import teaching_dimension
from learners.enumeration import ConsistentEnumLearner
from utils.query_tracker import QueryTracker
from verifiers.checks import mincheck

logger = logging.getLogger(__name__)


def membership_label(cls: FiniteConceptClass, target: int, x: int) -> Label:
    return POSITIVE if x in cls.concepts[target] else NEGATIVE


def distinguishing_input(
    cls: FiniteConceptClass,
    examples: Iterable[int],
    concept: int,
    negatives: Iterable[int] = (),
) -> Optional[Tuple[int, int]]:
    """
    Another concept agreeing with the labeled examples, and where it differs.

    Returns:
        (other index, least example of the symmetric difference) for the
        least-indexed other concept holding every example and no negative;
        None when `concept` is the only one
    """
    positives = set(examples)
    excluded = set(negatives)
    current = cls.concepts[concept]
    for index, other in enumerate(cls.concepts):
        if index == concept:
            continue
        if positives <= other and not (excluded & other):
            return index, min(current ^ other)
    return None


class SampleComplexityReport(BaseModel):
    interface: str
    worst_case: int
    teaching_dimension: int
    per_target: List[int]
    queries: Dict[str, int]

    @property
    def passed(self) -> bool:
        return self.worst_case >= self.teaching_dimension


def _examples_to_identify(
    cls: FiniteConceptClass,
    target: int,
    interface: OracleInterfaceSpec,
    tracker: QueryTracker,
) -> int:
    """
    consistent-enum against q_wit+ (ascending) and subsumption q_corr; once
    the transcript is exhausted, q_diff plus q_mem supply further examples.
    Stops when the hypothesis is accepted and no other concept agrees with
    everything delivered. Returns the number of distinct labeled examples.
    """
    learner = ConsistentEnumLearner.for_class(cls.concepts)
    goal = Finite(tuple(cls.concepts[target]))
    transcript = iter(sorted(cls.concepts[target]))
    labeled: Dict[int, bool] = {}
    state = learner.initial_state()

    while True:
        hypothesis = state.hypothesis
        verdict = mincheck(goal, hypothesis)
        interface.require(Correctness(hypothesis), Verdict(verdict))
        tracker.add_correctness_query()
        if verdict is not BOTTOM:
            labeled[verdict] = False
            state = learner.step(state, BOTTOM, verdict)
            continue

        index = state.get("index")
        positives = [x for x, label in labeled.items() if label]
        negatives = [x for x, label in labeled.items() if not label]
        query = DistinguishingInput(frozenset(positives), hypothesis)
        found = distinguishing_input(cls, positives, index, negatives)
        tracker.add_distinguishing_query()
        if found is None:
            interface.require(query, NoDistinguisher())
            return len(labeled)
        other, x = found
        interface.require(query, Distinguisher(Finite(tuple(cls.concepts[other])), x))

        pos = next(transcript, None)
        if pos is not None:
            interface.require(PositiveWitness(), Witness(pos))
            tracker.add_positive_query()
            labeled[pos] = True
            state = learner.step(state, pos, BOTTOM)
            continue

        label = membership_label(cls, target, x)
        interface.require(Membership(x), label)
        tracker.add_membership_query()
        labeled[x] = label.positive
        state = learner.step(state, x, BOTTOM) if label.positive else learner.step(state, BOTTOM, x)


def ogis_sample_complexity(
    cls: FiniteConceptClass,
    interface: OracleInterfaceSpec = SAMPLE_COMPLEXITY_INTERFACE,
) -> SampleComplexityReport:
    """
    Worst case over targets of the examples consistent-enum needs, next to TD(C).

    Raises:
        InterfaceViolation: the interface lacks a query the procedure issues
    """
    for query_type in (PositiveWitness, Correctness, DistinguishingInput, Membership):
        if not interface.supports(query_type):
            raise InterfaceViolation(f"Interface '{interface.name}' does not offer {query_type.__name__}")

    tracker = QueryTracker()
    per_target = [_examples_to_identify(cls, t, interface, tracker) for t in range(len(cls))]
    report = SampleComplexityReport(
        interface=interface.name,
        worst_case=max(per_target),
        teaching_dimension=teaching_dimension(cls).dimension,
        per_target=per_target,
        queries=tracker.get_summary(),
    )
    logger.info(f"Sample complexity {report.worst_case} vs TD {report.teaching_dimension} over {len(cls)} concepts")
    return report
