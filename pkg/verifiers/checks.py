# verifiers/checks.py
import random
from itertools import islice
from typing import Sequence

from config.constants import RANDOM_STRATEGY_WINDOW
from core.language import BOTTOM, Answer, LanguageRepr, iter_difference
from core.transcript import sample
from verifiers.kinds import (
    Arbitrary,
    Ascending,
    ConstantBounded,
    DescendingCapped,
    Minimal,
    PositiveBounded,
    SeededRandom,
    Simulated,
    Strategy,
    UnknownVerifier,
    VerifierKind,
)


def check(target: LanguageRepr, candidate: LanguageRepr, strategy: Strategy = Ascending()) -> Answer:
    """Bottom iff candidate ⊆ target, else a witness of candidate \\ target chosen by strategy."""
    witnesses = iter_difference(candidate, target)
    first = next(witnesses, None)
    if first is None:
        return BOTTOM

    if isinstance(strategy, Ascending):
        return first

    if isinstance(strategy, DescendingCapped):
        chosen = first
        if first <= strategy.cap:
            for w in witnesses:
                if w > strategy.cap:
                    break
                chosen = w
        return chosen

    if isinstance(strategy, SeededRandom):
        pool = [first] + list(islice(witnesses, RANDOM_STRATEGY_WINDOW - 1))
        rng = random.Random(f"{strategy.seed}|{target}|{candidate}")
        return rng.choice(pool)

    raise UnknownVerifier(f"Unknown strategy: {strategy!r}")


def mincheck(target: LanguageRepr, candidate: LanguageRepr) -> Answer:
    return next(iter_difference(candidate, target), BOTTOM)


def bcheck(bound: int, target: LanguageRepr, candidate: LanguageRepr) -> Answer:
    least = mincheck(target, candidate)
    if least is BOTTOM or least >= bound:
        return BOTTOM
    return least


def max_positive(seen: Sequence[Answer]) -> Answer:
    positives = sample(seen)
    return max(positives) if positives else BOTTOM


def hcheck(target: LanguageRepr, candidate: LanguageRepr, seen: Sequence[Answer]) -> Answer:
    """Least counterexample strictly below the largest positive seen so far."""
    threshold = max_positive(seen)
    if threshold is BOTTOM:
        return BOTTOM
    least = mincheck(target, candidate)
    if least is BOTTOM or least >= threshold:
        return BOTTOM
    return least


def apply_verifier(
    kind: VerifierKind,
    target: LanguageRepr,
    candidate: LanguageRepr,
    seen: Sequence[Answer] = (),
) -> Answer:
    """Answer one correctness query with the configured verifier."""
    if isinstance(kind, Arbitrary):
        return check(target, candidate, kind.strategy)
    if isinstance(kind, Minimal):
        return mincheck(target, candidate)
    if isinstance(kind, ConstantBounded):
        return bcheck(kind.bound, target, candidate)
    if isinstance(kind, PositiveBounded):
        return hcheck(target, candidate, seen)
    if isinstance(kind, Simulated):
        # local import: adapters build on check()
        from verifiers.adapters import cb_filter_via_check, mincheck_via_check, pb_filter_via_check

        inner = kind.inner
        if isinstance(inner, Minimal):
            return mincheck_via_check(target, candidate, kind.strategy)
        if isinstance(inner, ConstantBounded):
            return cb_filter_via_check(inner.bound, target, candidate, kind.strategy)
        return pb_filter_via_check(target, candidate, seen, kind.strategy)
    raise UnknownVerifier(f"Unknown verifier kind: {kind!r}")
