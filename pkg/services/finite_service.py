# services/finite_service.py
"""Finite-class analyses on `.cls` / `.scv` file text, shared by the CLI and the HTTP surface."""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Optional

from finite_lab.concept_class import parse_class, parse_cover
from finite_lab.dimensions import td_bounds_check, teaching_dimension, vc_dimension
from finite_lab.queries import ogis_sample_complexity
from finite_lab.set_cover import min_counterexample_set, min_set_cover, setcover_to_fis
from services.report_service import Report

logger = logging.getLogger(__name__)

FINITE_ANALYSES = ("td", "vc", "bounds", "mincex", "reduce", "mogis")


@dataclass(frozen=True)
class FiniteOutcome:
    report: Report
    headline: str


def _report(analysis: str, passed: bool, metrics: Dict, invocation: Dict) -> Report:
    return Report(
        command=f"finite {analysis}",
        invocation=invocation,
        results=[metrics],
        summary={analysis: {"passed": passed, "metrics": metrics}},
        passed=passed,
    )


def _td(text: str, invocation: Dict) -> FiniteOutcome:
    result = teaching_dimension(parse_class(text))
    metrics = {"td": result.dimension, "teaching_sets": [[list(e) for e in s] for s in result.sequences]}
    return FiniteOutcome(_report("td", True, metrics, invocation), f"TD={result.dimension}")


def _vc(text: str, invocation: Dict) -> FiniteOutcome:
    vc = vc_dimension(parse_class(text))
    return FiniteOutcome(_report("vc", True, {"vc": vc}, invocation), f"VC={vc}")


def _bounds(text: str, invocation: Dict) -> FiniteOutcome:
    bounds = td_bounds_check(parse_class(text))
    verdict = "pass" if bounds.passed else "FAIL"
    return FiniteOutcome(_report("bounds", bounds.passed, bounds.model_dump(), invocation), f"{verdict} {bounds.describe()}")


def _mincex(text: str, invocation: Dict) -> FiniteOutcome:
    cls = parse_class(text)
    target = invocation.get("target")
    chosen = sorted(min_counterexample_set(cls, target))
    metrics = {"target": cls.target if target is None else target, "size": len(chosen), "examples": chosen}
    return FiniteOutcome(_report("mincex", True, metrics, invocation), f"min counterexample set {chosen} (size {len(chosen)})")


def _reduce(text: str, invocation: Dict) -> FiniteOutcome:
    instance = parse_cover(text)
    cover = min_set_cover(instance)
    mincex = sorted(min_counterexample_set(setcover_to_fis(instance)))
    passed = len(cover) == len(mincex)
    metrics = {"cover": list(cover), "cover_size": len(cover), "mincex": mincex, "mincex_size": len(mincex)}
    headline = f"cover size {len(cover)} {list(cover)}, reduced min counterexample set size {len(mincex)}"
    return FiniteOutcome(_report("reduce", passed, metrics, invocation), headline)


def _mogis(text: str, invocation: Dict) -> FiniteOutcome:
    sample = ogis_sample_complexity(parse_class(text))
    metrics = sample.model_dump()
    headline = f"{'pass' if sample.passed else 'FAIL'} M_OGIS={sample.worst_case} ≥ TD={sample.teaching_dimension}"
    return FiniteOutcome(_report("mogis", sample.passed, metrics, invocation), headline)


_ANALYSES: Dict[str, Callable[[str, Dict], FiniteOutcome]] = {
    "td": _td,
    "vc": _vc,
    "bounds": _bounds,
    "mincex": _mincex,
    "reduce": _reduce,
    "mogis": _mogis,
}


def analyze(analysis: str, text: str, source: str = "-", target: Optional[int] = None) -> FiniteOutcome:
    """
    Run one finite-lab analysis on file text.

    Args:
        analysis: one of FINITE_ANALYSES
        text: `.cls` text (`.scv` for reduce)
        source: file name echoed in the report
        target: concept index for mincex (defaults to the file's target)

    Raises:
        ValueError: unknown analysis
        ClassFileError: malformed file (carries the line number)
        DomainTooLarge, Uncoverable: instance outside the exhaustive limits
    """
    if analysis not in _ANALYSES:
        raise ValueError(f"Unknown finite analysis: {analysis!r} (known: {', '.join(FINITE_ANALYSES)})")
    invocation = {"file": source}
    if target is not None:
        invocation["target"] = target
    outcome = _ANALYSES[analysis](text, invocation)
    logger.info(f"finite {analysis} on {source}: {outcome.headline}")
    return outcome
