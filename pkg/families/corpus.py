# families/corpus.py
"""Fixed catalog corpus of (target, candidate) pairs for the verifier experiments."""
from itertools import product
from typing import List, Sequence, Tuple

from core.language import (
    EMPTY,
    UNIVERSE,
    AllAbove,
    Finite,
    LanguageRepr,
    Pow2AtLeast,
    Pow32Finite,
    UpTo,
    difference_is_finite,
    iter_difference,
)
from core.transcript import Transcript

Pair = Tuple[LanguageRepr, LanguageRepr]

SEEN_PREFIX = 3


def catalog_languages(quick: bool = False) -> List[LanguageRepr]:
    languages: List[LanguageRepr] = [
        Finite(()),
        Finite((0,)),
        Finite((0, 2)),
        Finite((1, 2, 3)),
        Finite((2, 6)),
        Finite((9, 12)),
        UpTo(2),
        UpTo(5),
        AllAbove(3),
        Pow2AtLeast(1),
        Pow32Finite(((0, 1), (1, 1), (0, 4))),
        UNIVERSE,
    ]
    if quick:
        return languages
    return languages + [
        Finite((1,)),
        Finite((2, 4, 6)),
        Finite((5, 9)),
        Finite((9, 10, 12)),
        UpTo(0),
        UpTo(3),
        AllAbove(0),
        AllAbove(8),
        Pow2AtLeast(0),
        Pow2AtLeast(2),
        Pow2AtLeast(3),
        Pow32Finite(((0, 1), (1, 1))),
        Pow32Finite(((1, 0), (0, 2))),
        EMPTY,
    ]


def catalog_pairs(quick: bool = False) -> List[Pair]:
    """Every ordered (target, candidate) pair over the catalog languages."""
    languages = catalog_languages(quick)
    return list(product(languages, languages))


def seen_prefix(target: LanguageRepr, length: int = SEEN_PREFIX) -> List:
    """Ascending transcript prefix used as `seen` for positive-bounded checks."""
    return Transcript(target).prefix(length)


def _least_witness_below(target: LanguageRepr, candidate: LanguageRepr, threshold: int) -> bool:
    least = next(iter_difference(candidate, target), None)
    return least is not None and least < threshold


def filter_tractable(pairs: Sequence[Pair], threshold: int) -> List[Pair]:
    """
    Pairs on which excision through CHECK terminates for this threshold:
    candidate \\ target is finite or has a member below the threshold.
    """
    return [
        (target, candidate)
        for target, candidate in pairs
        if difference_is_finite(candidate, target) or _least_witness_below(target, candidate, threshold)
    ]


def threshold_of(seen: Sequence) -> int:
    positives = [x for x in seen if isinstance(x, int)]
    return max(positives) if positives else 0


def pb_tractable_pairs(pairs: Sequence[Pair]) -> List[Tuple[LanguageRepr, LanguageRepr, List]]:
    """(target, candidate, seen) triples, seen being the target's ascending prefix."""
    triples = []
    for target, candidate in pairs:
        seen = seen_prefix(target)
        if filter_tractable([(target, candidate)], threshold_of(seen)):
            triples.append((target, candidate, seen))
    return triples
