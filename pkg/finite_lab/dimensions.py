# finite_lab/dimensions.py
import logging
import math
from itertools import combinations
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from config.constants import FLOAT_DIGITS, TD_CONCEPT_LIMIT, VC_DOMAIN_LIMIT
from finite_lab.concept_class import DomainTooLarge, FiniteConceptClass
from finite_lab.set_cover import min_hitting_set

logger = logging.getLogger(__name__)

LabeledExample = Tuple[int, bool]


def _require_domain(cls: FiniteConceptClass) -> None:
    if len(cls.domain) > VC_DOMAIN_LIMIT:
        raise DomainTooLarge(f"Domain of {len(cls.domain)} > limit {VC_DOMAIN_LIMIT}")


def vc_dimension(cls: FiniteConceptClass) -> int:
    """Size of the largest shattered subset of the domain (exhaustive)."""
    _require_domain(cls)
    matrix = cls.incidence()
    d = len(cls.domain)
    best = 0
    for size in range(1, d + 1):
        if 1 << size > len(cls):
            break
        if not any(
            np.unique(matrix[:, list(columns)], axis=0).shape[0] == 1 << size
            for columns in combinations(range(d), size)
        ):
            # no shattered set of this size, so none larger
            break
        best = size
    return best


class TeachingResult(BaseModel):
    dimension: int
    sequences: List[List[LabeledExample]]


def teaching_set(cls: FiniteConceptClass, index: int) -> List[LabeledExample]:
    """A minimum labeled sample consistent with concept `index` only."""
    goal = cls.mask(cls.concepts[index])
    diffs = [cls.mask(c) ^ goal for i, c in enumerate(cls.concepts) if i != index]
    positions = min_hitting_set(diffs, len(cls.domain))
    concept = cls.concepts[index]
    return [(cls.domain[j], cls.domain[j] in concept) for j in positions]


def teaching_dimension(cls: FiniteConceptClass) -> TeachingResult:
    """
    TD(C) = max over concepts of the smallest uniquely consistent labeled sample.

    Raises:
        DomainTooLarge: domain above VC_DOMAIN_LIMIT or class above TD_CONCEPT_LIMIT
    """
    _require_domain(cls)
    if len(cls) > TD_CONCEPT_LIMIT:
        raise DomainTooLarge(f"{len(cls)} concepts > limit {TD_CONCEPT_LIMIT}")

    sequences = [teaching_set(cls, i) for i in range(len(cls))]
    dimension = max(len(s) for s in sequences)
    logger.debug(f"TD={dimension} over {len(cls)} concepts")
    return TeachingResult(dimension=dimension, sequences=sequences)


def consistent_concepts(cls: FiniteConceptClass, sample: List[LabeledExample]) -> List[int]:
    return [
        i for i, concept in enumerate(cls.concepts)
        if all((x in concept) == label for x, label in sample)
    ]


class BoundsReport(BaseModel):
    vc: int
    td: int
    size: int
    lower: Optional[float]
    upper: int
    passed: bool
    skipped_lower: bool

    def describe(self) -> str:
        lower = "-" if self.lower is None else f"{self.lower:.6g}"
        return f"{lower} ≤ {self.td} ≤ {self.upper}"


def td_bounds_check(cls: FiniteConceptClass) -> BoundsReport:
    """
    VC/log2|C| ≤ TD ≤ |C| - 1, compared exactly as 2^VC ≤ |C|^TD.

    The lower bound is skipped for single-concept classes (log2 1 = 0).
    """
    vc = vc_dimension(cls)
    td = teaching_dimension(cls).dimension
    size = len(cls)
    upper = size - 1
    if size == 1:
        return BoundsReport(vc=vc, td=td, size=size, lower=None, upper=upper, passed=td <= upper, skipped_lower=True)

    lower = round(vc / math.log2(size), FLOAT_DIGITS)
    passed = (1 << vc) <= size ** td and td <= upper
    if not passed:
        logger.error(f"Bounds violated: vc={vc} td={td} |C|={size}")
    return BoundsReport(vc=vc, td=td, size=size, lower=lower, upper=upper, passed=passed, skipped_lower=False)
