# families/generators.py
"""
Language families behind the separation experiments.

notcb        finite sets above a bound B (bounded counterexamples are blind)
notcb-tails  AllAbove(b) for b >= B (the infinite members of the same family)
notpb        the chain UpTo(0) ⊂ UpTo(1) ⊂ ... (positive-bounded ones are blind)
pb           finite subsets of {3^j * 2^i} holding some 3*2^k, plus Pow2AtLeast(i)
cbnotpb      UpTo(0..B-1), every counterexample between members is < B
"""
import logging
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Tuple

from config.constants import (
    FAMILY_CBNOTPB,
    FAMILY_IDS,
    FAMILY_NOTCB,
    FAMILY_NOTCB_TAILS,
    FAMILY_NOTPB,
    FAMILY_PB,
)
from config.settings import settings
from core.errors import LabError, LanguageParseError
from core.language import (
    AllAbove,
    Finite,
    LanguageRepr,
    Pow2AtLeast,
    Pow32Finite,
    UpTo,
    parse_language,
    pow32_pair,
)

logger = logging.getLogger(__name__)

NOTCB_SPAN = 16  # random notcb members draw from B+1 .. B+NOTCB_SPAN
DEFAULT_PB_FINITE = 20
DEFAULT_TAIL_COUNT = 8


class FamilyPredicateError(LabError, ValueError):
    """Raised when a member or a parameter violates the family's defining predicate"""
    pass


class UnknownFamily(LabError, ValueError):
    """Raised for an unregistered family id"""
    pass


# ============================================
# PREDICATES
# ============================================

def is_notcb_member(bound: int, language: LanguageRepr) -> bool:
    return isinstance(language, Finite) and bool(language.elements) and language.elements[0] > bound


def is_notcb_tail(bound: int, language: LanguageRepr) -> bool:
    return isinstance(language, AllAbove) and language.b >= bound


def is_notpb_member(language: LanguageRepr) -> bool:
    return isinstance(language, UpTo)


def is_pb_member(language: LanguageRepr) -> bool:
    if isinstance(language, Pow2AtLeast):
        return True
    return isinstance(language, Pow32Finite) and any(j == 1 for j, _ in language.pairs)


def is_cbnotpb_member(bound: int, language: LanguageRepr) -> bool:
    return isinstance(language, UpTo) and language.i < bound


def _require(ok: bool, message: str) -> None:
    if not ok:
        raise FamilyPredicateError(message)


# ============================================
# GENERATORS
# ============================================

def family_notcb(
    bound: int,
    sizes: Tuple[int, int] = (1, 3),
    count: int = 20,
    seed: int = 0,
) -> List[LanguageRepr]:
    """
    Finite members of Family 1, every element above bound.

    The first member is always Finite{B+1, B+4}; the rest are drawn with
    random.Random(seed), sizes between sizes[0] and sizes[1] inclusive.
    """
    _require(bound >= 0, f"notcb bound must be >= 0, got {bound}")
    low, high = sizes
    _require(1 <= low <= high <= NOTCB_SPAN, f"Bad notcb size range {sizes}")

    rng = random.Random(seed)
    members: List[LanguageRepr] = [Finite((bound + 1, bound + 4))]
    seen = {members[0]}
    attempts = 0
    while len(members) < count and attempts < count * 50:
        attempts += 1
        size = rng.randint(low, high)
        candidate = Finite(tuple(rng.sample(range(bound + 1, bound + 1 + NOTCB_SPAN), size)))
        if candidate not in seen:
            seen.add(candidate)
            members.append(candidate)

    for member in members:
        _require(is_notcb_member(bound, member), f"{member} is not above {bound}")
    return members


def family_notcb_tails(bound: int, count: int = DEFAULT_TAIL_COUNT) -> List[LanguageRepr]:
    _require(bound >= 0 and count >= 1, f"Bad notcb-tails parameters ({bound}, {count})")
    return [AllAbove(b) for b in range(bound, bound + count)]


def family_notpb(max_index: int) -> List[LanguageRepr]:
    _require(max_index >= 0, f"notpb max index must be >= 0, got {max_index}")
    return [UpTo(i) for i in range(max_index + 1)]


def family_pb_members(
    max_exponent: int,
    count_finite: int = DEFAULT_PB_FINITE,
    seed: int = 0,
    max_size: int = 8,
) -> List[LanguageRepr]:
    """
    Family 3 members: finite L^32 sets, then Pow2AtLeast(0..max_exponent).

    Args:
        max_exponent: largest exponent of 2 used anywhere
        count_finite: number of finite members
        seed: generator seed
        max_size: largest finite member

    Returns:
        Members, Pow32Finite{(0,1),(1,1),(0,4)} first when max_exponent allows it
    """
    _require(max_exponent >= 1, f"pb max exponent must be >= 1, got {max_exponent}")
    _require(max_size >= 1, f"pb max size must be >= 1, got {max_size}")

    rng = random.Random(seed)
    finite: List[LanguageRepr] = []
    if max_exponent >= 4:
        finite.append(Pow32Finite(((0, 1), (1, 1), (0, 4))))
    seen = set(finite)
    attempts = 0
    while len(finite) < count_finite and attempts < count_finite * 50:
        attempts += 1
        size = rng.randint(1, max_size)
        pairs = {(1, rng.randint(0, max_exponent))}
        while len(pairs) < size:
            pairs.add((rng.randint(0, 1), rng.randint(0, max_exponent)))
        candidate = Pow32Finite(tuple(pairs))
        if candidate not in seen:
            seen.add(candidate)
            finite.append(candidate)

    members = finite[:count_finite] + [Pow2AtLeast(i) for i in range(max_exponent + 1)]
    for member in members:
        _require(is_pb_member(member), f"{member} has no 3*2^k element")
    return members


def family_cbnotpb(bound: int) -> List[LanguageRepr]:
    _require(bound >= 1, f"cbnotpb bound must be >= 1, got {bound}")
    return [UpTo(i) for i in range(bound)]


# ============================================
# FAMILY SPECS
# ============================================

@dataclass(frozen=True)
class FamilySpec:
    """A family id plus the parameters its generator takes."""

    family_id: str
    params: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.family_id not in FAMILY_IDS:
            raise UnknownFamily(f"Unknown family: {self.family_id!r} (known: {', '.join(FAMILY_IDS)})")

    @classmethod
    def default(cls, family_id: str, seed: int = 0) -> "FamilySpec":
        """Parameters from settings."""
        defaults: Dict[str, Dict[str, Any]] = {
            FAMILY_NOTCB: {"bound": settings.NOTCB_BOUND, "seed": seed},
            FAMILY_NOTCB_TAILS: {"bound": settings.NOTCB_BOUND},
            FAMILY_NOTPB: {"max_index": settings.NOTPB_MAX_INDEX},
            FAMILY_PB: {"max_exponent": settings.PB_MAX_EXPONENT, "seed": seed},
            FAMILY_CBNOTPB: {"bound": settings.CBNOTPB_BOUND},
        }
        if family_id not in defaults:
            raise UnknownFamily(f"Unknown family: {family_id!r} (known: {', '.join(FAMILY_IDS)})")
        return cls(family_id, defaults[family_id])

    def members(self) -> List[LanguageRepr]:
        generators: Dict[str, Callable[..., List[LanguageRepr]]] = {
            FAMILY_NOTCB: family_notcb,
            FAMILY_NOTCB_TAILS: family_notcb_tails,
            FAMILY_NOTPB: family_notpb,
            FAMILY_PB: family_pb_members,
            FAMILY_CBNOTPB: family_cbnotpb,
        }
        try:
            return generators[self.family_id](**self.params)
        except TypeError as e:
            raise FamilyPredicateError(f"Bad parameters for {self.family_id}: {e}") from e

    def admits(self, language: LanguageRepr) -> bool:
        """Family predicate (membership of language in the whole family, not just the generated list)."""
        bound = self.params.get("bound", 0)
        if self.family_id == FAMILY_NOTCB:
            return is_notcb_member(bound, language)
        if self.family_id == FAMILY_NOTCB_TAILS:
            return is_notcb_tail(bound, language)
        if self.family_id == FAMILY_NOTPB:
            return is_notpb_member(language) and language.i <= self.params.get("max_index", language.i)
        if self.family_id == FAMILY_PB:
            return is_pb_member(language)
        return is_cbnotpb_member(bound, language)

    def resolve_target(self, text: str) -> LanguageRepr:
        """
        A target named on the command line: an index into members() or a
        language rendering admitted by the family.
        """
        text = text.strip()
        if text.isdigit():
            index = int(text)
            if self.family_id in (FAMILY_NOTPB, FAMILY_CBNOTPB):
                target: LanguageRepr = UpTo(index)
            else:
                members = self.members()
                if index >= len(members):
                    raise FamilyPredicateError(f"{self.family_id} has {len(members)} members, no index {index}")
                target = members[index]
        else:
            try:
                target = parse_language(text)
            except LanguageParseError as e:
                raise FamilyPredicateError(str(e)) from e
            if self.family_id == FAMILY_PB and isinstance(target, Finite):
                if all(pow32_pair(x) is not None for x in target.elements):
                    target = Pow32Finite.from_values(target.elements)

        if not self.admits(target):
            raise FamilyPredicateError(f"{target} is not a member of family {self.family_id}")
        return target
