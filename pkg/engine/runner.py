# engine/runner.py
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, field_validator

from config.constants import EXIT_BUDGET_EXHAUSTED, EXIT_CONVERGED_WRONG, EXIT_IDENTIFIED
from config.settings import settings
from core.language import BOTTOM, LanguageRepr, languages_equal
from core.transcript import ASCENDING, TranscriptOrder
from engine.dialogue import DialogueSession, MemoryBoundExceeded, exchange
from learners.base import LearnerState
from learners.registry import build_learner
from utils.query_tracker import QueryTracker
from verifiers.kinds import Arbitrary, is_complete

logger = logging.getLogger(__name__)


class RunConfig(BaseModel):
    """Everything one CEGIS run depends on."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    family_id: Optional[str] = None
    target: LanguageRepr
    verifier: Any = Field(default_factory=Arbitrary)
    learner_id: str
    order: TranscriptOrder = ASCENDING
    step_budget: int = Field(default_factory=lambda: settings.DEFAULT_STEP_BUDGET)
    stability_window: int = Field(default_factory=lambda: settings.DEFAULT_STABILITY_WINDOW)
    memory_bound: int = Field(default_factory=lambda: settings.DEFAULT_MEMORY_BOUND)
    seed: int = Field(default_factory=lambda: settings.OGIS_LAB_SEED)
    concepts: Optional[List[LanguageRepr]] = None

    @field_validator("stability_window")
    @classmethod
    def window_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("stability window must be at least 1")
        return v

    @field_validator("step_budget")
    @classmethod
    def budget_natural(cls, v: int) -> int:
        if v < 0:
            raise ValueError("step budget must be >= 0")
        return v

    @field_validator("memory_bound")
    @classmethod
    def bound_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("memory bound must be at least 1 byte")
        return v

    def with_order(self, order: TranscriptOrder) -> "RunConfig":
        return self.model_copy(update={"order": order})

    def echo(self) -> Dict[str, Any]:
        echo: Dict[str, Any] = {
            "family": self.family_id,
            "target": str(self.target),
            "verifier": str(self.verifier),
            "learner": self.learner_id,
            "order": str(self.order),
            "step_budget": self.step_budget,
            "stability_window": self.stability_window,
            "memory_bound": self.memory_bound,
            "seed": self.seed,
        }
        if self.concepts is not None:
            echo["concepts"] = [str(c) for c in self.concepts]
        return echo


class TraceEntry(BaseModel):
    step: int
    hypothesis: str


class RunResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    config: Dict[str, Any]
    converged: bool
    identified: bool
    final_hypothesis: LanguageRepr
    steps_used: int
    positive_queries: int
    correctness_queries: int
    probe_queries: int = 0
    cached_verdicts: int = 0
    counterexamples: int = 0
    hypothesis_trace: List[TraceEntry] = Field(default_factory=list)
    max_state_bytes: int = 0
    finite_memory: bool = True

    @property
    def budget_exhausted(self) -> bool:
        return not self.converged

    @property
    def exit_code(self) -> int:
        if self.identified:
            return EXIT_IDENTIFIED
        if self.budget_exhausted:
            return EXIT_BUDGET_EXHAUSTED
        return EXIT_CONVERGED_WRONG

    def metrics(self) -> Dict[str, Any]:
        return {
            "converged": self.converged,
            "identified": self.identified,
            "final_hypothesis": str(self.final_hypothesis),
            "steps_used": self.steps_used,
            "positive_queries": self.positive_queries,
            "correctness_queries": self.correctness_queries,
            "probe_queries": self.probe_queries,
            "cached_verdicts": self.cached_verdicts,
            "counterexamples": self.counterexamples,
            "max_state_bytes": self.max_state_bytes,
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "config": self.config,
            "metrics": self.metrics(),
            "hypothesis_trace": [entry.model_dump() for entry in self.hypothesis_trace],
        }


def audit_memory(states: Sequence[LearnerState]) -> int:
    """Largest serialized state of a run (states[0] is the initial state)."""
    return max((state.serialized_size for state in states), default=0)


def run_cegis(config: RunConfig) -> RunResult:
    """
    Drive one CEGIS dialogue until convergence or budget.

    Convergence: the hypothesis stayed the same, with no probe pending, for
    `stability_window` consecutive steps; complete verifiers must also have
    accepted it in the last step.

    Raises:
        UnknownLearner: learner id is not registered
        MemoryBoundExceeded: a finite-memory learner outgrew memory_bound
        InconsistentOracle: the oracle broke consistency (defect)
    """
    learner = build_learner(config.learner_id, config.concepts)
    tracker = QueryTracker()
    session = DialogueSession(config.target, config.verifier, config.order, tracker=tracker)
    complete = is_complete(config.verifier)

    state = learner.initial_state()
    states = [state]
    trace = [TraceEntry(step=0, hypothesis=str(state.hypothesis))]
    stable = 0
    converged = False
    steps = 0

    while steps < config.step_budget:
        steps += 1
        step = exchange(session, learner, state)
        next_state = step.state
        states.append(next_state)

        if learner.finite_memory and next_state.serialized_size > config.memory_bound:
            logger.error(f"{config.learner_id} state grew to {next_state.serialized_size} bytes at step {steps}")
            raise MemoryBoundExceeded(
                f"{config.learner_id}: {next_state.serialized_size} bytes > bound {config.memory_bound}"
            )

        if next_state.hypothesis != state.hypothesis:
            trace.append(TraceEntry(step=steps, hypothesis=str(next_state.hypothesis)))

        unchanged = not step.probe and next_state.probe is None and next_state.hypothesis == state.hypothesis
        stable = stable + 1 if unchanged else 0
        state = next_state

        if stable >= config.stability_window and (not complete or step.verdict is BOTTOM):
            converged = True
            break

    identified = converged and languages_equal(state.hypothesis, config.target)
    tracker.log_summary()
    summary = tracker.get_summary()
    result = RunResult(
        config=config.echo(),
        converged=converged,
        identified=identified,
        final_hypothesis=state.hypothesis,
        steps_used=steps,
        positive_queries=summary["positive_queries"],
        correctness_queries=summary["correctness_queries"],
        probe_queries=summary["probe_queries"],
        cached_verdicts=summary["cached_verdicts"],
        counterexamples=len(session.cex.examples()),
        hypothesis_trace=trace,
        max_state_bytes=audit_memory(states),
        finite_memory=learner.finite_memory,
    )
    logger.info(
        f"Run {config.learner_id} on {config.target} with {config.verifier} ({config.order}): "
        f"converged={converged} identified={identified} after {steps} steps"
    )
    return result


class IdentificationSummary(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    orders: List[str]
    results: List[RunResult]

    @property
    def identified_all(self) -> bool:
        return bool(self.results) and all(result.identified for result in self.results)

    @property
    def max_state_bytes(self) -> int:
        return max((result.max_state_bytes for result in self.results), default=0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "identified_all": self.identified_all,
            "orders": self.orders,
            "results": [result.to_dict() for result in self.results],
        }


def identify_over_orders(config: RunConfig, orders: Sequence[TranscriptOrder]) -> IdentificationSummary:
    """Run config once per transcript order; results keep the order of `orders`."""
    if not orders:
        raise ValueError("identify_over_orders needs at least one order")

    configs = [config.with_order(order) for order in orders]
    with ThreadPoolExecutor(max_workers=settings.MAX_WORKERS) as pool:
        results = list(pool.map(run_cegis, configs))

    summary = IdentificationSummary(orders=[str(order) for order in orders], results=results)
    logger.info(f"Identification over {len(orders)} orders of {config.target}: {summary.identified_all}")
    return summary
