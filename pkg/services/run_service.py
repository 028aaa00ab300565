# services/run_service.py
"""Single CEGIS runs from textual parameters, shared by the CLI and the HTTP surface."""
import logging
from typing import List, Optional, Sequence, Tuple

from config.settings import settings
from core.language import LanguageRepr, parse_language
from core.transcript import parse_order
from engine.runner import RunConfig, RunResult, run_cegis
from families.generators import FamilySpec
from learners.base import MissingConcepts, UnknownLearner
from learners.registry import LEARNER_IDS
from services.report_service import Report
from verifiers.kinds import parse_strategy, parse_verifier

logger = logging.getLogger(__name__)


def _concepts_for(
    learner: str,
    family: Optional[FamilySpec],
    concepts: Optional[Sequence[str]],
) -> Optional[List[LanguageRepr]]:
    if concepts:
        return [parse_language(text) for text in concepts]
    if learner != "consistent-enum":
        return None
    if family is None:
        raise MissingConcepts("consistent-enum needs explicit concepts or a family to enumerate")
    return family.members()


def build_run_config(
    *,
    target: str,
    learner: str,
    family: Optional[str] = None,
    verifier: str = "check",
    strategy: str = "ascending",
    order: str = "ascending",
    budget: Optional[int] = None,
    window: Optional[int] = None,
    memory_bound: Optional[int] = None,
    seed: Optional[int] = None,
    concepts: Optional[Sequence[str]] = None,
) -> RunConfig:
    """
    Resolve textual run parameters into a RunConfig.

    A bare `random` strategy or `shuffle` order takes the run seed.

    Raises:
        UnknownLearner, UnknownVerifier, UnknownFamily, FamilyPredicateError,
        LanguageParseError, TranscriptError: bad parameters
        ValueError: budget, window or memory bound out of range
    """
    if learner not in LEARNER_IDS:
        raise UnknownLearner(f"Unknown learner: {learner!r} (known: {', '.join(LEARNER_IDS)})")
    seed = settings.OGIS_LAB_SEED if seed is None else seed

    spec = FamilySpec.default(family, seed) if family else None
    language = spec.resolve_target(target) if spec else parse_language(target)
    kind = parse_verifier(verifier, parse_strategy(f"random:{seed}" if strategy == "random" else strategy))

    options = {
        "step_budget": budget,
        "stability_window": window,
        "memory_bound": memory_bound,
    }
    return RunConfig(
        family_id=family,
        target=language,
        verifier=kind,
        learner_id=learner,
        order=parse_order(order, default_seed=seed),
        seed=seed,
        concepts=_concepts_for(learner, spec, concepts),
        **{name: value for name, value in options.items() if value is not None},
    )


def run_report(config: RunConfig) -> Tuple[RunResult, Report]:
    """Execute run_cegis and wrap the result in a report."""
    result = run_cegis(config)
    report = Report(
        command="run",
        invocation=config.echo(),
        results=[result.to_dict()],
        summary={"run": {"passed": result.identified, "metrics": result.metrics()}},
        passed=result.identified,
    )
    logger.info(f"Run report ready: exit code {result.exit_code}")
    return result, report
