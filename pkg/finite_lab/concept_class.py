# finite_lab/concept_class.py
"""
Explicit finite concept classes and set-cover instances, their text
formats and seeded random generators.

`.cls`:
    domain: 0 1 2
    target: 1          (optional, 0-based concept index)
    0 2                (one concept per line, `-` for the empty concept)

`.scv`:
    universe: 1 2 3
    1 2                (one set per line, `-` for the empty set)

Blank lines and `#` comments are ignored in both.
"""
import logging
import random
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from core.errors import LabError

logger = logging.getLogger(__name__)

EMPTY_LINE_MARK = "-"


class DomainTooLarge(LabError, ValueError):
    """Raised when an exact computation is asked on a class above its size limit"""
    pass


class ClassFileError(LabError, ValueError):
    """Raised for a malformed .cls or .scv file; carries the 1-based line number"""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class FiniteConceptClass:
    domain: Tuple[int, ...]
    concepts: Tuple[FrozenSet[int], ...]
    target: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(sorted(set(self.domain))))
        object.__setattr__(self, "concepts", tuple(frozenset(c) for c in self.concepts))
        universe = set(self.domain)
        if len(set(self.concepts)) != len(self.concepts):
            raise ClassFileError("Concepts must be distinct as sets")
        for index, concept in enumerate(self.concepts):
            if not concept <= universe:
                raise ClassFileError(f"Concept {index} has elements outside the domain: {sorted(concept - universe)}")
        if self.target is not None and not 0 <= self.target < len(self.concepts):
            raise ClassFileError(f"Target index {self.target} out of range")

    def __len__(self) -> int:
        return len(self.concepts)

    def incidence(self) -> np.ndarray:
        """Boolean matrix, one row per concept, one column per domain point."""
        matrix = np.zeros((len(self.concepts), len(self.domain)), dtype=bool)
        column = {x: j for j, x in enumerate(self.domain)}
        for i, concept in enumerate(self.concepts):
            for x in concept:
                matrix[i, column[x]] = True
        return matrix

    def mask(self, concept: Iterable[int]) -> int:
        """Bitmask over domain positions."""
        position = {x: j for j, x in enumerate(self.domain)}
        value = 0
        for x in concept:
            value |= 1 << position[x]
        return value


@dataclass(frozen=True)
class SetCoverInstance:
    universe: Tuple[int, ...]
    sets: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "universe", tuple(dict.fromkeys(self.universe)))
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))
        allowed = set(self.universe)
        for index, s in enumerate(self.sets):
            if not s <= allowed:
                raise ClassFileError(f"Set {index + 1} has elements outside the universe: {sorted(s - allowed)}")


# ============================================
# FILE FORMATS
# ============================================

def _meaningful_lines(text: str) -> List[Tuple[int, str]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((number, line))
    return lines


def _numbers(text: str, number: int) -> List[int]:
    if text == EMPTY_LINE_MARK:
        return []
    try:
        values = [int(part) for part in text.split()]
    except ValueError:
        raise ClassFileError(f"Expected whitespace-separated naturals, got {text!r}", number) from None
    if any(v < 0 for v in values):
        raise ClassFileError("Elements must be natural numbers", number)
    return values


def _header(lines: List[Tuple[int, str]], key: str) -> Tuple[int, str]:
    if not lines or not lines[0][1].startswith(f"{key}:"):
        number = lines[0][0] if lines else 1
        raise ClassFileError(f"First line must be '{key}: ...'", number)
    number, line = lines[0]
    return number, line.split(":", 1)[1].strip()


def parse_class(text: str) -> FiniteConceptClass:
    lines = _meaningful_lines(text)
    number, body = _header(lines, "domain")
    domain = _numbers(body, number)
    if len(set(domain)) != len(domain):
        raise ClassFileError("Domain repeats an element", number)

    rest = lines[1:]
    target: Optional[int] = None
    if rest and rest[0][1].startswith("target:"):
        target_line, value = rest[0][0], rest[0][1].split(":", 1)[1].strip()
        if not value.isdigit():
            raise ClassFileError(f"Bad target index {value!r}", target_line)
        target = int(value)
        rest = rest[1:]

    concepts = []
    seen = {}
    universe = set(domain)
    for number, line in rest:
        concept = frozenset(_numbers(line, number))
        if not concept <= universe:
            raise ClassFileError(f"Elements outside the domain: {sorted(concept - universe)}", number)
        if concept in seen:
            raise ClassFileError(f"Duplicate of the concept on line {seen[concept]}", number)
        seen[concept] = number
        concepts.append(concept)
    if not concepts:
        raise ClassFileError("A class needs at least one concept", lines[-1][0])
    if target is not None and target >= len(concepts):
        raise ClassFileError(f"Target index {target} out of range ({len(concepts)} concepts)")
    return FiniteConceptClass(tuple(domain), tuple(concepts), target)


def parse_cover(text: str) -> SetCoverInstance:
    lines = _meaningful_lines(text)
    number, body = _header(lines, "universe")
    universe = _numbers(body, number)
    if not universe:
        raise ClassFileError("Universe must not be empty", number)
    allowed = set(universe)
    sets = []
    for number, line in lines[1:]:
        s = frozenset(_numbers(line, number))
        if not s <= allowed:
            raise ClassFileError(f"Elements outside the universe: {sorted(s - allowed)}", number)
        sets.append(s)
    if not sets:
        raise ClassFileError("An instance needs at least one set", lines[-1][0])
    return SetCoverInstance(tuple(universe), tuple(sets))


def _render_line(values: Iterable[int]) -> str:
    ordered = sorted(values)
    return " ".join(str(v) for v in ordered) if ordered else EMPTY_LINE_MARK


def render_class(cls: FiniteConceptClass) -> str:
    lines = ["domain: " + " ".join(str(x) for x in cls.domain)]
    if cls.target is not None:
        lines.append(f"target: {cls.target}")
    lines.extend(_render_line(c) for c in cls.concepts)
    return "\n".join(lines) + "\n"


# ============================================
# BUILT-IN AND RANDOM CLASSES
# ============================================

def powerset_class(size: int) -> FiniteConceptClass:
    """All subsets of {0..size-1}, ordered by bitmask."""
    domain = tuple(range(size))
    concepts = tuple(frozenset(x for x in domain if bits >> x & 1) for bits in range(1 << size))
    return FiniteConceptClass(domain, concepts)


def singletons_class(size: int) -> FiniteConceptClass:
    domain = tuple(range(size))
    return FiniteConceptClass(domain, tuple(frozenset({x}) for x in domain))


def random_class(rng: random.Random, max_domain: int = 6, min_size: int = 2, max_size: int = 32) -> FiniteConceptClass:
    """Distinct random concepts over {0..d-1}, 1 <= d <= max_domain."""
    d = rng.randint(1, max_domain)
    size = rng.randint(min_size, min(max_size, 1 << d))
    masks = rng.sample(range(1 << d), size)
    domain = tuple(range(d))
    concepts = tuple(frozenset(x for x in domain if m >> x & 1) for m in masks)
    return FiniteConceptClass(domain, concepts)


def random_cover(rng: random.Random, max_sets: int = 8, max_elements: int = 6) -> SetCoverInstance:
    """Coverable random instance: every element lands in at least one set."""
    m = rng.randint(1, max_elements)
    k = rng.randint(1, max_sets)
    universe = tuple(range(1, m + 1))
    sets = [set(x for x in universe if rng.random() < 0.4) for _ in range(k)]
    for x in universe:
        if not any(x in s for s in sets):
            sets[rng.randrange(k)].add(x)
    return SetCoverInstance(universe, tuple(frozenset(s) for s in sets))
