# core/language.py
"""
Closed catalog of decidable language representations.

Each form answers membership, "next member at or above x", "next
non-member at or above x" and the shape of its tail. Those four
primitives decide subset and enumerate ordered difference witnesses for
every pair of forms without scanning unbounded ranges.
"""
import bisect
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property
from itertools import islice
from typing import FrozenSet, Iterable, Iterator, List, Optional, Tuple, Union

from core.errors import InvalidExample, LanguageParseError, UnsupportedPair

# Tail shapes
FINITE_TAIL = "finite"  # finitely many members
DENSE_TAIL = "dense"    # contains every natural above some point
POW2_TAIL = "pow2"      # cofinitely many powers of two, nothing else above some point
TAILS = (FINITE_TAIL, DENSE_TAIL, POW2_TAIL)


class _Bottom:
    """The end-of-sequence / no-answer marker. Never equal to any Example."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "⊥"

    def __reduce__(self):
        return (_Bottom, ())


BOTTOM = _Bottom()

Example = int
Answer = Union[int, _Bottom]


def require_example(value) -> int:
    """Validate that value is a natural number and return it."""
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise InvalidExample(f"Examples are natural numbers, got {value!r}")
    return value


def is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def pow32_pair(n: int) -> Optional[Tuple[int, int]]:
    """Return (j, i) with n = 3^j * 2^i and j in {0, 1}, or None."""
    if n <= 0:
        return None
    j = 0
    if n % 3 == 0:
        j, n = 1, n // 3
    if not is_power_of_two(n):
        return None
    return (j, n.bit_length() - 1)


class LanguageRepr(ABC):
    """A decidable set of naturals from the closed catalog."""

    tail: str = FINITE_TAIL

    @abstractmethod
    def contains(self, x: int) -> bool:
        ...

    @abstractmethod
    def next_member(self, x: int) -> Optional[int]:
        """Least member >= x, or None."""

    @abstractmethod
    def next_nonmember(self, x: int) -> Optional[int]:
        """Least non-member >= x, or None when every n >= x is a member."""

    def max_element(self) -> Optional[int]:
        """Largest member for finite forms (None if empty or infinite)."""
        return None

    def tail_cover(self, tail: str) -> Optional[int]:
        """
        Threshold T such that every member above T of any language with
        the given tail shape is also a member of self; None if no such T.
        """
        return None


class _Explicit(LanguageRepr):
    """Shared lookups for forms that list their members."""

    @property
    @abstractmethod
    def values(self) -> Tuple[int, ...]:
        ...

    @cached_property
    def _value_set(self) -> FrozenSet[int]:
        return frozenset(self.values)

    def contains(self, x: int) -> bool:
        return x in self._value_set

    def next_member(self, x: int) -> Optional[int]:
        i = bisect.bisect_left(self.values, x)
        return self.values[i] if i < len(self.values) else None

    def next_nonmember(self, x: int) -> int:
        y = x
        while y in self._value_set:
            y += 1
        return y

    def max_element(self) -> Optional[int]:
        return self.values[-1] if self.values else None


@dataclass(frozen=True, repr=False)
class Finite(_Explicit):
    elements: Tuple[int, ...] = ()

    def __post_init__(self):
        cleaned = tuple(sorted({require_example(x) for x in self.elements}))
        object.__setattr__(self, "elements", cleaned)

    @property
    def values(self) -> Tuple[int, ...]:
        return self.elements

    def __str__(self) -> str:
        return "Finite{" + ",".join(str(x) for x in self.elements) + "}"

    __repr__ = __str__


@dataclass(frozen=True, repr=False)
class Pow32Finite(_Explicit):
    """{3^j * 2^i | (j, i) in pairs}, j in {0, 1}."""

    pairs: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        cleaned = set()
        for pair in self.pairs:
            j, i = pair
            if j not in (0, 1):
                raise InvalidExample(f"Pow32Finite exponent of 3 must be 0 or 1, got {j}")
            cleaned.add((j, require_example(i)))
        ordered = tuple(sorted(cleaned, key=lambda p: 3 ** p[0] * 2 ** p[1]))
        object.__setattr__(self, "pairs", ordered)

    @cached_property
    def values(self) -> Tuple[int, ...]:
        return tuple(3 ** j * 2 ** i for j, i in self.pairs)

    @classmethod
    def from_values(cls, values: Iterable[int]) -> "Pow32Finite":
        pairs = []
        for value in values:
            pair = pow32_pair(value)
            if pair is None:
                raise InvalidExample(f"{value} is not of the form 3^j*2^i")
            pairs.append(pair)
        return cls(tuple(pairs))

    def __str__(self) -> str:
        return "Pow32Finite{" + ",".join(f"({j},{i})" for j, i in self.pairs) + "}"

    __repr__ = __str__


@dataclass(frozen=True, repr=False)
class UpTo(LanguageRepr):
    """{n | n <= i}"""

    i: int

    def __post_init__(self):
        require_example(self.i)

    def contains(self, x: int) -> bool:
        return x <= self.i

    def next_member(self, x: int) -> Optional[int]:
        return x if x <= self.i else None

    def next_nonmember(self, x: int) -> int:
        return max(x, self.i + 1)

    def max_element(self) -> int:
        return self.i

    def __str__(self) -> str:
        return f"UpTo({self.i})"

    __repr__ = __str__


@dataclass(frozen=True, repr=False)
class AllAbove(LanguageRepr):
    """{n | n > b}"""

    b: int
    tail = DENSE_TAIL

    def __post_init__(self):
        require_example(self.b)

    def contains(self, x: int) -> bool:
        return x > self.b

    def next_member(self, x: int) -> int:
        return max(x, self.b + 1)

    def next_nonmember(self, x: int) -> Optional[int]:
        return x if x <= self.b else None

    def tail_cover(self, tail: str) -> int:
        return self.b

    def __str__(self) -> str:
        return f"AllAbove({self.b})"

    __repr__ = __str__


@dataclass(frozen=True, repr=False)
class Pow2AtLeast(LanguageRepr):
    """{2^j | j >= k}"""

    k: int
    tail = POW2_TAIL

    def __post_init__(self):
        require_example(self.k)

    @property
    def least(self) -> int:
        return 1 << self.k

    def contains(self, x: int) -> bool:
        return x >= self.least and is_power_of_two(x)

    def next_member(self, x: int) -> int:
        if x <= self.least:
            return self.least
        return 1 << (x - 1).bit_length()

    def next_nonmember(self, x: int) -> int:
        y = x
        while self.contains(y):
            y += 1
        return y

    def tail_cover(self, tail: str) -> Optional[int]:
        return self.least if tail == POW2_TAIL else None

    def __str__(self) -> str:
        return f"Pow2AtLeast({self.k})"

    __repr__ = __str__


@dataclass(frozen=True, repr=False)
class Empty(LanguageRepr):
    def contains(self, x: int) -> bool:
        return False

    def next_member(self, x: int) -> None:
        return None

    def next_nonmember(self, x: int) -> int:
        return x

    def __str__(self) -> str:
        return "Empty"

    __repr__ = __str__


@dataclass(frozen=True, repr=False)
class Universe(LanguageRepr):
    tail = DENSE_TAIL

    def contains(self, x: int) -> bool:
        return True

    def next_member(self, x: int) -> int:
        return x

    def next_nonmember(self, x: int) -> None:
        return None

    def tail_cover(self, tail: str) -> int:
        return -1

    def __str__(self) -> str:
        return "Universe"

    __repr__ = __str__


EMPTY = Empty()
UNIVERSE = Universe()

CATALOG_FORMS = (Finite, UpTo, AllAbove, Pow2AtLeast, Pow32Finite, Empty, Universe)


@dataclass(frozen=True, repr=False)
class ExcisedLanguage(LanguageRepr):
    """A catalog language minus a finite exclusion set (working candidates only)."""

    base: LanguageRepr
    removed: FrozenSet[int] = frozenset()

    @property
    def tail(self) -> str:
        return self.base.tail

    def contains(self, x: int) -> bool:
        return x not in self.removed and self.base.contains(x)

    def next_member(self, x: int) -> Optional[int]:
        y = self.base.next_member(x)
        while y is not None and y in self.removed:
            y = self.base.next_member(y + 1)
        return y

    def next_nonmember(self, x: int) -> Optional[int]:
        options = [r for r in self.removed if r >= x]
        outside = self.base.next_nonmember(x)
        if outside is not None:
            options.append(outside)
        return min(options) if options else None

    def max_element(self) -> Optional[int]:
        return self.base.max_element()

    def tail_cover(self, tail: str) -> Optional[int]:
        cover = self.base.tail_cover(tail)
        if cover is None or not self.removed:
            return cover
        return max(cover, max(self.removed))

    def __str__(self) -> str:
        return f"{self.base}\\{{" + ",".join(str(x) for x in sorted(self.removed)) + "}"

    __repr__ = __str__


# ============================================
# SET OPERATIONS
# ============================================

def _cofinal_bound(a: LanguageRepr, b: LanguageRepr) -> Optional[int]:
    """T with every member of a above T inside b, or None when a \\ b is infinite."""
    if a.tail not in TAILS:
        raise UnsupportedPair(f"No tail rule for {a} against {b}")
    if a.tail == FINITE_TAIL:
        top = a.max_element()
        return -1 if top is None else top
    return b.tail_cover(a.tail)


def iter_difference(a: LanguageRepr, b: LanguageRepr) -> Iterator[int]:
    """Members of a \\ b in ascending order (infinite iff the difference is)."""
    limit = _cofinal_bound(a, b)
    x = 0
    while True:
        y = a.next_member(x)
        if y is None or (limit is not None and y > limit):
            return
        z = b.next_nonmember(y)
        if z is None:
            return
        if z == y:
            yield y
            x = y + 1
        else:
            # [y, z) lies inside b
            x = z


def contains(language: LanguageRepr, x: int) -> bool:
    return language.contains(require_example(x))


def subset_of(a: LanguageRepr, b: LanguageRepr) -> bool:
    return next(iter_difference(a, b), None) is None


def difference_is_finite(a: LanguageRepr, b: LanguageRepr) -> bool:
    return _cofinal_bound(a, b) is not None


def difference_witnesses(a: LanguageRepr, b: LanguageRepr, limit: int) -> List[int]:
    if limit < 1:
        raise ValueError("limit must be at least 1")
    return list(islice(iter_difference(a, b), limit))


def min_element(language: LanguageRepr) -> Answer:
    least = language.next_member(0)
    return BOTTOM if least is None else least


def languages_equal(a: LanguageRepr, b: LanguageRepr) -> bool:
    return subset_of(a, b) and subset_of(b, a)


def restrict_to_singleton(language: LanguageRepr, j: int) -> LanguageRepr:
    """language ∩ {j} as Finite({j}) or Empty."""
    return Finite((j,)) if language.contains(j) else EMPTY


# ============================================
# PARSING
# ============================================

_CALL = re.compile(r"^(UpTo|AllAbove|Pow2AtLeast)\((\d+)\)$")
_FINITE = re.compile(r"^Finite\{([\d,\s]*)\}$")
_POW32 = re.compile(r"^Pow32Finite\{(.*)\}$")
_PAIR = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_language(text: str) -> LanguageRepr:
    """Inverse of str() for catalog forms."""
    text = text.strip()
    if text == "Empty":
        return EMPTY
    if text == "Universe":
        return UNIVERSE

    match = _CALL.match(text)
    if match:
        form, arg = match.group(1), int(match.group(2))
        return {"UpTo": UpTo, "AllAbove": AllAbove, "Pow2AtLeast": Pow2AtLeast}[form](arg)

    match = _FINITE.match(text)
    if match:
        body = match.group(1).strip()
        if not body:
            return Finite(())
        try:
            return Finite(tuple(int(part) for part in body.split(",")))
        except ValueError as e:
            raise LanguageParseError(f"Bad Finite element list in {text!r}") from e

    match = _POW32.match(text)
    if match:
        body = match.group(1)
        pairs = [(int(j), int(i)) for j, i in _PAIR.findall(body)]
        if _PAIR.sub("", body).replace(",", "").strip():
            raise LanguageParseError(f"Bad pair list in {text!r}")
        try:
            return Pow32Finite(tuple(pairs))
        except InvalidExample as e:
            raise LanguageParseError(str(e)) from e

    raise LanguageParseError(f"Unknown language rendering: {text!r}")
