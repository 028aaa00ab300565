# core/queries.py
"""Query/response model of an oracle interface and the named interface presets."""
from dataclasses import dataclass
from typing import Dict, FrozenSet, Tuple, Type, Union

from core.errors import InterfaceViolation
from core.language import BOTTOM, Answer, LanguageRepr


# ============================================
# QUERIES
# ============================================

@dataclass(frozen=True)
class Membership:
    example: int


@dataclass(frozen=True)
class PositiveWitness:
    pass


@dataclass(frozen=True)
class NegativeWitness:
    pass


@dataclass(frozen=True)
class Correctness:
    candidate: LanguageRepr


@dataclass(frozen=True)
class CraftedCorrectness:
    candidate: LanguageRepr
    crafted: LanguageRepr


@dataclass(frozen=True)
class DistinguishingInput:
    examples: FrozenSet[int]
    candidate: LanguageRepr


Query = Union[Membership, PositiveWitness, NegativeWitness, Correctness, CraftedCorrectness, DistinguishingInput]


# ============================================
# RESPONSES
# ============================================

@dataclass(frozen=True)
class Label:
    positive: bool

    def __str__(self) -> str:
        return "positive" if self.positive else "negative"


POSITIVE = Label(True)
NEGATIVE = Label(False)


@dataclass(frozen=True)
class Witness:
    example: Answer


@dataclass(frozen=True)
class Verdict:
    counterexample: Answer = BOTTOM

    @property
    def accepted(self) -> bool:
        return self.counterexample is BOTTOM


@dataclass(frozen=True)
class Distinguisher:
    other: LanguageRepr
    example: int


@dataclass(frozen=True)
class NoDistinguisher:
    pass


Response = Union[Label, Witness, Verdict, Distinguisher, NoDistinguisher]


@dataclass(frozen=True)
class OracleInterfaceSpec:
    """Allowed (query type, response type) pairs of an oracle."""

    name: str
    allowed: FrozenSet[Tuple[Type, Type]]

    def conforms(self, query, response) -> bool:
        return (type(query), type(response)) in self.allowed

    def require(self, query, response) -> None:
        if not self.conforms(query, response):
            raise InterfaceViolation(
                f"{type(query).__name__}->{type(response).__name__} not allowed by '{self.name}' interface"
            )

    def supports(self, query_type: Type) -> bool:
        return any(q is query_type for q, _ in self.allowed)

    def union(self, other: "OracleInterfaceSpec", name: str) -> "OracleInterfaceSpec":
        return OracleInterfaceSpec(name, self.allowed | other.allowed)


CEGIS_INTERFACE = OracleInterfaceSpec(
    "cegis",
    frozenset({(PositiveWitness, Witness), (Correctness, Verdict)}),
)
MEMBERSHIP_INTERFACE = OracleInterfaceSpec("membership", frozenset({(Membership, Label)}))
ANGLUIN_INTERFACE = OracleInterfaceSpec(
    "angluin",
    frozenset({(Membership, Label), (Correctness, Verdict)}),
)
DISTINGUISHING_INTERFACE = OracleInterfaceSpec(
    "distinguishing",
    frozenset({
        (PositiveWitness, Witness),
        (DistinguishingInput, Distinguisher),
        (DistinguishingInput, NoDistinguisher),
        (Membership, Label),
    }),
)
ICE_INTERFACE = OracleInterfaceSpec(
    "ice",
    frozenset({(PositiveWitness, Witness), (NegativeWitness, Witness), (Correctness, Verdict)}),
)
SAMPLE_COMPLEXITY_INTERFACE = CEGIS_INTERFACE.union(DISTINGUISHING_INTERFACE, "sample-complexity")

PRESETS: Dict[str, OracleInterfaceSpec] = {
    spec.name: spec
    for spec in (
        CEGIS_INTERFACE,
        MEMBERSHIP_INTERFACE,
        ANGLUIN_INTERFACE,
        DISTINGUISHING_INTERFACE,
        ICE_INTERFACE,
        SAMPLE_COMPLEXITY_INTERFACE,
    )
}


def get_preset(name: str) -> OracleInterfaceSpec:
    try:
        return PRESETS[name]
    except KeyError:
        raise InterfaceViolation(f"Unknown oracle interface preset: {name}") from None
