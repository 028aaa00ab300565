# verifiers/adapters.py
"""
Verifiers rebuilt from arbitrary CHECK calls.

mincheck_via_check narrows an arbitrary counterexample down to the least
one with singleton-restricted checks. The two filters excise witnesses at
or above a threshold from a working candidate until a small enough
witness shows up or the working candidate becomes a subset of the target.
"""
import logging
from typing import Sequence

from config.constants import EXCISION_BUDGET
from core.errors import LabError
from core.language import BOTTOM, Answer, ExcisedLanguage, LanguageRepr, restrict_to_singleton
from verifiers.checks import check, max_positive
from verifiers.kinds import Ascending, Strategy

logger = logging.getLogger(__name__)


class BudgetExhausted(LabError):
    """Raised when a filter adapter needs more excisions than allowed"""
    pass


def mincheck_via_check(
    target: LanguageRepr,
    candidate: LanguageRepr,
    strategy: Strategy = Ascending(),
) -> Answer:
    bound = check(target, candidate, strategy)
    if bound is BOTTOM:
        return BOTTOM

    # j outside the candidate restricts it to Empty, whose check is bottom
    j = candidate.next_member(0)
    while j is not None and j <= bound:
        probe = check(restrict_to_singleton(target, j), restrict_to_singleton(candidate, j), strategy)
        if probe is not BOTTOM:
            return j
        j = candidate.next_member(j + 1)
    return bound


def _excise_below(
    threshold: int,
    target: LanguageRepr,
    candidate: LanguageRepr,
    strategy: Strategy,
    budget: int,
) -> Answer:
    if threshold <= 0:
        # no natural is below the threshold
        return BOTTOM
    removed = set()
    working: LanguageRepr = candidate
    while True:
        witness = check(target, working, strategy)
        if witness is BOTTOM:
            return BOTTOM
        if witness < threshold:
            # excised elements are >= threshold, so the least witness is unaffected
            return mincheck_via_check(target, working, strategy)
        removed.add(witness)
        if len(removed) > budget:
            logger.error(f"Excision budget {budget} exhausted on {candidate} vs {target}")
            raise BudgetExhausted(f"More than {budget} excisions for {candidate} against {target}")
        working = ExcisedLanguage(candidate, frozenset(removed))
        logger.debug(f"Excised {witness} (threshold {threshold}), working candidate {working}")


def cb_filter_via_check(
    bound: int,
    target: LanguageRepr,
    candidate: LanguageRepr,
    strategy: Strategy = Ascending(),
    budget: int = EXCISION_BUDGET,
) -> Answer:
    """Same contract as bcheck(bound, target, candidate)."""
    return _excise_below(bound, target, candidate, strategy, budget)


def pb_filter_via_check(
    target: LanguageRepr,
    candidate: LanguageRepr,
    seen: Sequence[Answer],
    strategy: Strategy = Ascending(),
    budget: int = EXCISION_BUDGET,
) -> Answer:
    """Same contract as hcheck(target, candidate, seen)."""
    threshold = max_positive(seen)
    if threshold is BOTTOM:
        return BOTTOM
    return _excise_below(threshold, target, candidate, strategy, budget)
