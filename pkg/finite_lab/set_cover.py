# finite_lab/set_cover.py
"""
Minimum set cover, its reduction to minimum-query finite synthesis, and
the minimum counterexample set on the synthesis side.
"""
import logging
import math
from itertools import combinations
from typing import FrozenSet, List, Optional, Sequence, Tuple

from config.constants import MINCEX_DOMAIN_LIMIT, SET_COVER_SET_LIMIT
from core.errors import LabError
from finite_lab.concept_class import DomainTooLarge, FiniteConceptClass, SetCoverInstance

logger = logging.getLogger(__name__)


class Uncoverable(LabError, ValueError):
    """Raised when some universe element is in no set"""
    pass


def min_hitting_set(masks: Sequence[int], width: int) -> Tuple[int, ...]:
    """
    Smallest set of bit positions meeting every mask, by increasing-size search.

    Only positions occurring in some mask are tried. Returns () when there
    are no masks.
    """
    masks = [m for m in set(masks)]
    if not masks:
        return ()
    if any(m == 0 for m in masks):
        raise Uncoverable("An empty mask cannot be hit")

    union = 0
    for m in masks:
        union |= m
    positions = [j for j in range(width) if union >> j & 1]

    for size in range(1, len(positions) + 1):
        for chosen in combinations(positions, size):
            picked = 0
            for j in chosen:
                picked |= 1 << j
            if all(m & picked for m in masks):
                return chosen
    raise Uncoverable("No hitting set exists")  # unreachable: all positions hit every mask


# ============================================
# SET COVER
# ============================================

def _cover_masks(instance: SetCoverInstance) -> Tuple[int, List[int]]:
    position = {x: j for j, x in enumerate(instance.universe)}
    masks = []
    for s in instance.sets:
        mask = 0
        for x in s:
            mask |= 1 << position[x]
        masks.append(mask)
    return (1 << len(instance.universe)) - 1, masks


def _greedy_cover(universe_mask: int, masks: List[int]) -> List[int]:
    covered = 0
    chosen: List[int] = []
    while covered != universe_mask:
        best = max(range(len(masks)), key=lambda i: (bin(masks[i] & ~covered).count("1"), -i))
        if masks[best] & ~covered == 0:
            break
        chosen.append(best)
        covered |= masks[best]
    return chosen


def min_set_cover(instance: SetCoverInstance) -> Tuple[int, ...]:
    """
    Exact minimum cover (0-based set indices) by branch and bound.

    Branches on the uncovered element covered by the fewest sets; a
    greedy cover gives the initial upper bound and ceil(remaining /
    widest remaining set) the lower bound.

    Raises:
        Uncoverable: some element is in no set
        DomainTooLarge: more than SET_COVER_SET_LIMIT sets
    """
    if len(instance.sets) > SET_COVER_SET_LIMIT:
        raise DomainTooLarge(f"{len(instance.sets)} sets > limit {SET_COVER_SET_LIMIT}")

    universe_mask, masks = _cover_masks(instance)
    union = 0
    for m in masks:
        union |= m
    if union != universe_mask:
        missing = [x for j, x in enumerate(instance.universe) if not union >> j & 1]
        raise Uncoverable(f"Elements in no set: {missing}")

    best: List[int] = _greedy_cover(universe_mask, masks)
    covering = {j: [i for i, m in enumerate(masks) if m >> j & 1] for j in range(len(instance.universe))}

    def search(covered: int, chosen: List[int]) -> None:
        nonlocal best
        if covered == universe_mask:
            if len(chosen) < len(best):
                best = chosen.copy()
            return
        remaining = universe_mask & ~covered
        widest = max(bin(m & remaining).count("1") for m in masks)
        if len(chosen) + math.ceil(bin(remaining).count("1") / widest) >= len(best):
            return
        element = min(
            (j for j in covering if remaining >> j & 1),
            key=lambda j: (len(covering[j]), j),
        )
        for i in covering[element]:
            chosen.append(i)
            search(covered | masks[i], chosen)
            chosen.pop()

    search(0, [])
    logger.debug(f"Minimum cover of size {len(best)}: {sorted(best)}")
    return tuple(sorted(best))


# ============================================
# REDUCTION
# ============================================

def setcover_to_fis(instance: SetCoverInstance) -> FiniteConceptClass:
    """
    Finite synthesis problem whose minimum counterexample set has the size
    of the minimum cover.

    Examples e_0..e_{k-1} stand for the sets; element x_j becomes the
    concept {e_i | x_j ∈ S_i}; the target is the empty concept, listed
    last. Elements with identical incidence give one concept.

    Raises:
        Uncoverable: some element is in no set (its concept would equal the target)
    """
    domain = tuple(range(len(instance.sets)))
    concepts: List[FrozenSet[int]] = []
    for x in instance.universe:
        concept = frozenset(i for i, s in enumerate(instance.sets) if x in s)
        if not concept:
            raise Uncoverable(f"Element {x} is in no set")
        if concept not in concepts:
            concepts.append(concept)
    concepts.append(frozenset())
    return FiniteConceptClass(domain, tuple(concepts), target=len(concepts) - 1)


def min_counterexample_set(cls: FiniteConceptClass, target: Optional[int] = None) -> FrozenSet[int]:
    """
    Fewest examples separating the target from every other concept.

    Args:
        cls: the class
        target: concept index, defaults to cls.target

    Raises:
        DomainTooLarge: domain above MINCEX_DOMAIN_LIMIT
    """
    target = cls.target if target is None else target
    if target is None or not 0 <= target < len(cls):
        raise ValueError(f"Target index {target} is not a concept of the class")
    if len(cls.domain) > MINCEX_DOMAIN_LIMIT:
        raise DomainTooLarge(f"Domain of {len(cls.domain)} > limit {MINCEX_DOMAIN_LIMIT}")

    goal = cls.mask(cls.concepts[target])
    diffs = [cls.mask(c) ^ goal for i, c in enumerate(cls.concepts) if i != target]
    chosen = min_hitting_set(diffs, len(cls.domain))
    return frozenset(cls.domain[j] for j in chosen)
