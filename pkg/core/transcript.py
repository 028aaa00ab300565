# core/transcript.py
import random
from dataclasses import dataclass, field
from itertools import islice
from typing import Iterator, List, Sequence, Set, Tuple

from config.constants import SHUFFLE_BLOCK
from core.errors import TranscriptError
from core.language import BOTTOM, FINITE_TAIL, Answer, LanguageRepr, require_example

ORDER_ASCENDING = "ascending"
ORDER_SHUFFLE = "shuffle"
ORDER_SCRIPTED = "scripted"


@dataclass(frozen=True)
class TranscriptOrder:
    """Enumeration strategy for a transcript."""

    kind: str = ORDER_ASCENDING
    seed: int = 0
    script: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in (ORDER_ASCENDING, ORDER_SHUFFLE, ORDER_SCRIPTED):
            raise TranscriptError(f"Unknown transcript order: {self.kind}")
        object.__setattr__(self, "script", tuple(require_example(x) for x in self.script))

    @classmethod
    def ascending(cls) -> "TranscriptOrder":
        return cls(ORDER_ASCENDING)

    @classmethod
    def shuffled(cls, seed: int) -> "TranscriptOrder":
        return cls(ORDER_SHUFFLE, seed=seed)

    @classmethod
    def scripted(cls, values: Sequence[int]) -> "TranscriptOrder":
        return cls(ORDER_SCRIPTED, script=tuple(values))

    def __str__(self) -> str:
        if self.kind == ORDER_SHUFFLE:
            return f"shuffle:{self.seed}"
        if self.kind == ORDER_SCRIPTED:
            return "scripted:" + ",".join(str(x) for x in self.script)
        return ORDER_ASCENDING


ASCENDING = TranscriptOrder.ascending()


def parse_order(text: str, default_seed: int = 0) -> TranscriptOrder:
    """Parse `ascending`, `shuffle[:SEED]` or `scripted:1,2,3`."""
    text = text.strip()
    if text == ORDER_ASCENDING:
        return ASCENDING
    if text == ORDER_SHUFFLE:
        return TranscriptOrder.shuffled(default_seed)
    kind, _, arg = text.partition(":")
    try:
        if kind == ORDER_SHUFFLE:
            return TranscriptOrder.shuffled(int(arg))
        if kind == ORDER_SCRIPTED:
            values = [int(part) for part in arg.split(",") if part.strip()]
            return TranscriptOrder.scripted(values)
    except ValueError as e:
        raise TranscriptError(f"Bad transcript order {text!r}: {e}") from e
    raise TranscriptError(f"Unknown transcript order: {text!r}")


def enumerate_members(source: LanguageRepr) -> Iterator[int]:
    """Members of source in ascending order."""
    x = source.next_member(0)
    while x is not None:
        yield x
        x = source.next_member(x + 1)


@dataclass(frozen=True)
class Transcript:
    """
    Non-redundant enumeration of a source language, followed by bottom
    forever once a finite source is exhausted.
    """

    source: LanguageRepr
    order: TranscriptOrder = ASCENDING

    def __post_init__(self):
        if len(set(self.order.script)) != len(self.order.script):
            raise TranscriptError("Scripted transcript repeats an example")
        for x in self.order.script:
            if not self.source.contains(x):
                raise TranscriptError(f"Scripted example {x} is not in {self.source}")

    @property
    def finite(self) -> bool:
        return self.source.tail == FINITE_TAIL

    def _members(self) -> Iterator[int]:
        order = self.order
        if order.kind == ORDER_ASCENDING:
            yield from enumerate_members(self.source)
        elif order.kind == ORDER_SHUFFLE:
            rng = random.Random(order.seed)
            members = enumerate_members(self.source)
            if self.finite:
                pool = list(members)
                rng.shuffle(pool)
                yield from pool
                return
            while True:
                block = list(islice(members, SHUFFLE_BLOCK))
                if not block:
                    return
                rng.shuffle(block)
                yield from block
        else:
            scripted: Set[int] = set(order.script)
            yield from order.script
            for x in enumerate_members(self.source):
                if x not in scripted:
                    yield x

    def entries(self) -> Iterator[Answer]:
        """τ(0), τ(1), ... (infinite)."""
        yield from self._members()
        while True:
            yield BOTTOM

    def prefix(self, n: int) -> List[Answer]:
        return list(islice(self.entries(), n))


def sample(entries: Sequence[Answer]) -> Set[int]:
    """SAMPLE of a transcript prefix: its non-bottom entries."""
    return {x for x in entries if x is not BOTTOM}


@dataclass(frozen=True)
class CexEntry:
    value: Answer
    verifier: str
    candidate: str
    probe: bool = False


@dataclass
class CexSequence:
    """Counterexample replies of a dialogue, with provenance per entry."""

    entries: List[CexEntry] = field(default_factory=list)

    def append(self, entry: CexEntry) -> None:
        self.entries.append(entry)

    @property
    def emitted(self) -> List[Answer]:
        return [entry.value for entry in self.entries]

    def examples(self) -> Set[int]:
        return {entry.value for entry in self.entries if entry.value is not BOTTOM}

    def __len__(self) -> int:
        return len(self.entries)
