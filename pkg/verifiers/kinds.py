# verifiers/kinds.py
from dataclasses import dataclass, field
from typing import Optional, Union

from config.constants import DEFAULT_DESCENDING_CAP
from core.errors import LabError


class UnknownVerifier(LabError, ValueError):
    """Raised for an unparseable verifier or strategy name"""
    pass


# ============================================
# ARBITRARY-CHECK STRATEGIES
# ============================================

@dataclass(frozen=True)
class Ascending:
    def __str__(self) -> str:
        return "ascending"


@dataclass(frozen=True)
class DescendingCapped:
    """Largest witness <= cap (least witness when none is)."""

    cap: int = DEFAULT_DESCENDING_CAP

    def __str__(self) -> str:
        return f"descending:{self.cap}"


@dataclass(frozen=True)
class SeededRandom:
    seed: int = 0

    def __str__(self) -> str:
        return f"random:{self.seed}"


Strategy = Union[Ascending, DescendingCapped, SeededRandom]
STRATEGY_TYPES = (Ascending, DescendingCapped, SeededRandom)


# ============================================
# VERIFIER KINDS
# ============================================

@dataclass(frozen=True)
class Arbitrary:
    """CHECK: some element of candidate \\ target, picked by strategy."""

    strategy: Strategy = field(default_factory=Ascending)

    def __str__(self) -> str:
        return f"check({self.strategy})"


@dataclass(frozen=True)
class Minimal:
    """MINCHECK"""

    def __str__(self) -> str:
        return "mincheck"


@dataclass(frozen=True)
class ConstantBounded:
    """BCHECK with an explicit bound B"""

    bound: int

    def __post_init__(self):
        if self.bound < 0:
            raise UnknownVerifier(f"bcheck bound must be a natural number, got {self.bound}")

    def __str__(self) -> str:
        return f"bcheck:{self.bound}"


@dataclass(frozen=True)
class PositiveBounded:
    """HCHECK"""

    def __str__(self) -> str:
        return "hcheck"


@dataclass(frozen=True)
class Simulated:
    """A minimal or bounded verifier answered through arbitrary CHECK calls."""

    inner: Union[Minimal, ConstantBounded, PositiveBounded]
    strategy: Strategy = field(default_factory=Ascending)

    def __post_init__(self):
        if not isinstance(self.inner, (Minimal, ConstantBounded, PositiveBounded)):
            raise UnknownVerifier(f"Cannot simulate {self.inner}")

    def __str__(self) -> str:
        return f"{self.inner}~check({self.strategy})"


VerifierKind = Union[Arbitrary, Minimal, ConstantBounded, PositiveBounded, Simulated]
VERIFIER_TYPES = (Arbitrary, Minimal, ConstantBounded, PositiveBounded, Simulated)


def is_complete(kind: VerifierKind) -> bool:
    """Bottom means subset for CHECK and MINCHECK (and their simulations)."""
    if isinstance(kind, Simulated):
        return isinstance(kind.inner, Minimal)
    return isinstance(kind, (Arbitrary, Minimal))


def is_stateless(kind: VerifierKind) -> bool:
    """True when the verdict depends only on (target, candidate)."""
    inner = kind.inner if isinstance(kind, Simulated) else kind
    return not isinstance(inner, PositiveBounded)


def parse_strategy(text: Optional[str]) -> Strategy:
    """`ascending`, `descending[:H]` or `random[:SEED]`."""
    if not text or text == "ascending":
        return Ascending()
    name, _, arg = text.partition(":")
    try:
        if name == "descending":
            return DescendingCapped(int(arg)) if arg else DescendingCapped()
        if name == "random":
            return SeededRandom(int(arg)) if arg else SeededRandom()
    except ValueError as e:
        raise UnknownVerifier(f"Bad strategy parameter in {text!r}") from e
    raise UnknownVerifier(f"Unknown strategy: {text!r}")


def parse_verifier(text: str, strategy: Optional[Strategy] = None) -> VerifierKind:
    """
    Parse a verifier name as accepted by the CLI.

    Args:
        text: `check`, `mincheck`, `bcheck:B`, `hcheck`, optionally suffixed
              with `~check` to request the simulation through CHECK
        strategy: strategy for CHECK (and for simulations)

    Returns:
        VerifierKind
    """
    strategy = strategy or Ascending()
    text = text.strip()
    base, simulated, rest = text.partition("~")
    if simulated and rest != "check":
        raise UnknownVerifier(f"Only simulation through check is supported: {text!r}")

    if base == "check":
        kind: VerifierKind = Arbitrary(strategy)
    elif base == "mincheck":
        kind = Minimal()
    elif base == "hcheck":
        kind = PositiveBounded()
    elif base.startswith("bcheck:"):
        try:
            kind = ConstantBounded(int(base.split(":", 1)[1]))
        except ValueError as e:
            raise UnknownVerifier(f"Bad bcheck bound in {text!r}") from e
    else:
        raise UnknownVerifier(f"Unknown verifier: {text!r}")

    if simulated:
        if isinstance(kind, Arbitrary):
            raise UnknownVerifier("check~check is not a simulation")
        return Simulated(kind, strategy)
    return kind
