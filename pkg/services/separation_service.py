# services/separation_service.py
"""
The separation battery: named, versioned experiments checking the
verifier equivalences and separations with brute-force oracles.
"""
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from itertools import permutations
from typing import Any, Callable, Dict, List, Optional, Sequence

from pydantic import BaseModel, Field

from config.constants import EXPERIMENT_VERSIONS
from config.settings import settings
from core.language import BOTTOM, Finite, LanguageRepr, Pow2AtLeast, Pow32Finite, UpTo, subset_of
from core.transcript import ASCENDING, TranscriptOrder
from engine.adversary import adversary_search
from engine.runner import RunConfig, RunResult, identify_over_orders, run_cegis
from families.corpus import catalog_pairs, filter_tractable, pb_tractable_pairs
from families.generators import family_cbnotpb, family_notcb, family_notcb_tails, family_pb_members
from finite_lab.concept_class import FiniteConceptClass, powerset_class, random_class, random_cover, singletons_class
from finite_lab.dimensions import td_bounds_check, teaching_dimension, vc_dimension
from finite_lab.queries import ogis_sample_complexity
from finite_lab.set_cover import min_counterexample_set, min_set_cover, setcover_to_fis
from services.report_service import Report
from verifiers.adapters import cb_filter_via_check, mincheck_via_check, pb_filter_via_check
from verifiers.checks import bcheck, hcheck, mincheck
from verifiers.kinds import (
    Arbitrary,
    Ascending,
    ConstantBounded,
    DescendingCapped,
    Minimal,
    PositiveBounded,
    SeededRandom,
    Simulated,
)

logger = logging.getLogger(__name__)

MAX_FAILURES_LISTED = 10


class ExperimentOutcome(BaseModel):
    id: str
    version: str
    title: str
    passed: bool
    metrics: Dict[str, Any] = Field(default_factory=dict)
    failures: List[str] = Field(default_factory=list)


class SeparationService:
    """
    Runs the experiment battery.

    quick mode shrinks corpus sizes and sweeps; the set of experiments and
    their pass conditions stay the same.
    """

    def __init__(self, seed: Optional[int] = None, quick: bool = False):
        self.seed = settings.OGIS_LAB_SEED if seed is None else seed
        self.quick = quick
        self.experiments: Dict[str, Callable[[], ExperimentOutcome]] = {
            "E1": self.minimal_via_check,
            "E2": self.filters_via_check,
            "E3": self.bounded_blind_on_notcb,
            "E4": self.chain_separates_hcheck,
            "E5": self.pbcegis_identifies_family3,
            "E6": self.adversary_confusion,
            "E7": self.bounded_beats_hcheck,
            "E8": self.history_simulations,
            "E9": self.tails_need_unbounded,
            "F1": self.dimensions_known_classes,
            "F2": self.td_bounds_random,
            "F3": self.set_cover_reduction,
            "F4": self.sample_complexity_random,
        }
        logger.info(f"SeparationService ready (seed={self.seed}, quick={self.quick})")

    # ============================================
    # BATTERY
    # ============================================

    def run_battery(self, ids: Optional[Sequence[str]] = None) -> Report:
        """Run the selected experiments (all by default); report ordered by id."""
        selected = sorted(ids or self.experiments)
        unknown = [i for i in selected if i not in self.experiments]
        if unknown:
            raise ValueError(f"Unknown experiments: {unknown} (known: {', '.join(sorted(self.experiments))})")

        with ThreadPoolExecutor(max_workers=settings.MAX_WORKERS) as pool:
            outcomes = list(pool.map(lambda i: self.experiments[i](), selected))

        passed = all(outcome.passed for outcome in outcomes)
        for outcome in outcomes:
            mark = "✅" if outcome.passed else "❌"
            logger.info(f"{mark} {outcome.id} v{outcome.version} {outcome.title}")

        return Report(
            command="separations",
            invocation={"seed": self.seed, "quick": self.quick, "experiments": selected},
            results=[outcome.model_dump() for outcome in outcomes],
            summary={
                o.id: {"passed": o.passed, "version": o.version, "metrics": o.metrics} for o in outcomes
            },
            passed=passed,
        )

    def _outcome(
        self,
        experiment_id: str,
        title: str,
        passed: bool,
        metrics: Dict[str, Any],
        failures: List[str],
    ) -> ExperimentOutcome:
        return ExperimentOutcome(
            id=experiment_id,
            version=EXPERIMENT_VERSIONS[experiment_id],
            title=title,
            passed=passed and not failures,
            metrics=metrics,
            failures=failures[:MAX_FAILURES_LISTED],
        )

    def _strategies(self):
        return [Ascending(), DescendingCapped(), SeededRandom(self.seed)]

    def _size(self, full: int, quick: int) -> int:
        return quick if self.quick else full

    @staticmethod
    def _same_run(a: RunResult, b: RunResult) -> bool:
        return a.metrics() == b.metrics() and a.hypothesis_trace == b.hypothesis_trace

    # ============================================
    # VERIFIER EQUIVALENCES
    # ============================================

    def minimal_via_check(self) -> ExperimentOutcome:
        pairs = catalog_pairs(self.quick)
        failures: List[str] = []
        comparisons = 0
        for strategy in self._strategies():
            for target, candidate in pairs:
                comparisons += 1
                expected = mincheck(target, candidate)
                got = mincheck_via_check(target, candidate, strategy)
                if got != expected:
                    failures.append(f"{strategy}: {candidate} vs {target}: {got} != {expected}")

        runs = [("chain", UpTo(3)), ("gold-finite", Finite((9, 12)))]
        runs_compared = 0
        for learner_id, target in runs:
            native = run_cegis(RunConfig(target=target, verifier=Minimal(), learner_id=learner_id, seed=self.seed))
            for strategy in self._strategies():
                runs_compared += 1
                simulated = run_cegis(
                    RunConfig(
                        target=target,
                        verifier=Simulated(Minimal(), strategy),
                        learner_id=learner_id,
                        seed=self.seed,
                    )
                )
                if not self._same_run(native, simulated):
                    failures.append(f"{learner_id} on {target}: mincheck~check({strategy}) run differs")

        enough = self.quick or len(pairs) >= 500
        metrics = {"pairs": len(pairs), "comparisons": comparisons, "runs_compared": runs_compared}
        return self._outcome("E1", "minimal counterexamples through arbitrary CHECK", enough, metrics, failures)

    def filters_via_check(self) -> ExperimentOutcome:
        bound = settings.NOTCB_BOUND
        pairs = catalog_pairs(self.quick)
        cb_pairs = filter_tractable(pairs, bound)
        pb_triples = pb_tractable_pairs(pairs)
        failures: List[str] = []
        for strategy in self._strategies():
            for target, candidate in cb_pairs:
                expected = bcheck(bound, target, candidate)
                got = cb_filter_via_check(bound, target, candidate, strategy)
                if got != expected:
                    failures.append(f"bcheck:{bound} {strategy}: {candidate} vs {target}: {got} != {expected}")
            for target, candidate, seen in pb_triples:
                expected = hcheck(target, candidate, seen)
                got = pb_filter_via_check(target, candidate, seen, strategy)
                if got != expected:
                    failures.append(f"hcheck {strategy}: {candidate} vs {target}: {got} != {expected}")

        metrics = {"cb_pairs": len(cb_pairs), "pb_pairs": len(pb_triples), "bound": bound}
        return self._outcome("E2", "bounded filters through arbitrary CHECK", True, metrics, failures)

    # ============================================
    # SEPARATIONS ON THE LANGUAGE FAMILIES
    # ============================================

    def bounded_blind_on_notcb(self) -> ExperimentOutcome:
        bound = settings.NOTCB_BOUND
        members = family_notcb(bound, count=self._size(20, 12), seed=self.seed)
        pairs = list(permutations(members, 2))
        failures: List[str] = []
        non_subset = 0
        for target, candidate in pairs:
            if not subset_of(candidate, target):
                non_subset += 1
            verdict = bcheck(bound, target, candidate)
            if verdict is not BOTTOM:
                failures.append(f"bcheck:{bound} returned {verdict} for {candidate} vs {target}")

        for target in members:
            blind = run_cegis(
                RunConfig(target=target, verifier=ConstantBounded(bound), learner_id="gold-finite", seed=self.seed)
            )
            if blind.counterexamples:
                failures.append(f"bcheck:{bound} gave {blind.counterexamples} counterexamples on {target}")
            unbounded = run_cegis(RunConfig(target=target, verifier=Arbitrary(), learner_id="gold-finite", seed=self.seed))
            if not unbounded.identified:
                failures.append(f"gold-finite with check did not identify {target}")

        trap_class = [Finite((9, 10, 12)), Finite((9, 12))]
        trap = {}
        for name, verifier in (("bcheck", ConstantBounded(bound)), ("check", Arbitrary())):
            result = run_cegis(
                RunConfig(
                    target=Finite((9, 12)),
                    verifier=verifier,
                    learner_id="consistent-enum",
                    concepts=trap_class,
                    seed=self.seed,
                )
            )
            trap[name] = result.exit_code
        if trap != {"bcheck": 3, "check": 0}:
            failures.append(f"superset trap exit codes {trap}")

        passed = len(pairs) >= 100 and non_subset >= 20
        metrics = {
            "members": len(members),
            "pairs": len(pairs),
            "non_subset_pairs": non_subset,
            "superset_trap_exit_codes": trap,
        }
        return self._outcome("E3", "constant-bounded counterexamples are blind on notcb", passed, metrics, failures)

    def chain_separates_hcheck(self) -> ExperimentOutcome:
        top = self._size(20, 8)
        failures: List[str] = []
        blind_counterexamples = 0
        for i in range(top + 1):
            for strategy in self._strategies():
                result = run_cegis(
                    RunConfig(target=UpTo(i), verifier=Arbitrary(strategy), learner_id="chain", seed=self.seed)
                )
                if not result.identified or result.correctness_queries != i + 2:
                    failures.append(
                        f"chain on UpTo({i}) with check({strategy}): identified={result.identified} "
                        f"queries={result.correctness_queries}"
                    )
            blind = run_cegis(RunConfig(target=UpTo(i), verifier=PositiveBounded(), learner_id="chain", seed=self.seed))
            blind_counterexamples += blind.counterexamples
            if blind.identified:
                failures.append(f"chain identified UpTo({i}) under hcheck")
            if blind.counterexamples:
                failures.append(f"hcheck gave {blind.counterexamples} counterexamples to chain on UpTo({i})")

        hcheck_pairs = 0
        for i in range(top + 1):
            seen = list(range(i + 1))
            for j in range(i + 1, top + 1):
                hcheck_pairs += 1
                verdict = hcheck(UpTo(i), UpTo(j), seen)
                if verdict is not BOTTOM:
                    failures.append(f"hcheck returned {verdict} for UpTo({j}) vs UpTo({i})")

        metrics = {"max_index": top, "hcheck_pairs": hcheck_pairs, "hcheck_counterexamples": blind_counterexamples}
        return self._outcome("E4", "chain learner separates check from hcheck", True, metrics, failures)

    def pbcegis_identifies_family3(self) -> ExperimentOutcome:
        finite_count = self._size(50, 10)
        tail_top = self._size(10, 4)
        members = family_pb_members(settings.PB_MAX_EXPONENT, count_finite=finite_count, seed=self.seed, max_size=8)
        targets = [m for m in members if isinstance(m, Pow32Finite)]
        targets += [Pow2AtLeast(i) for i in range(tail_top + 1)]
        orders = [ASCENDING] + [TranscriptOrder.shuffled(self.seed + k) for k in range(self._size(9, 2))]

        failures: List[str] = []
        state_bytes = set()
        for target in targets:
            summary = identify_over_orders(
                RunConfig(target=target, verifier=PositiveBounded(), learner_id="pbcegis-family3", seed=self.seed),
                orders,
            )
            state_bytes.add(summary.max_state_bytes)
            if not summary.identified_all:
                missed = [o for o, r in zip(summary.orders, summary.results) if not r.identified]
                failures.append(f"pbcegis-family3 missed {target} under {missed}")

        metrics = {
            "targets": len(targets),
            "orders": len(orders),
            "max_state_bytes": sorted(state_bytes),
        }
        return self._outcome("E5", "pbcegis identifies Family 3 with hcheck", len(state_bytes) == 1, metrics, failures)

    def adversary_confusion(self) -> ExperimentOutcome:
        lossy = adversary_search("gold-lossy")
        pbcegis = adversary_search("pbcegis-family3")
        failures: List[str] = []
        if not lossy.found:
            failures.append("no confusion witness against gold-lossy")
        if pbcegis.found:
            failures.append(f"confusion witness against pbcegis-family3: {pbcegis.witness.to_dict()}")
        metrics = {"gold-lossy": lossy.to_dict(), "pbcegis-family3": pbcegis.to_dict()}
        return self._outcome("E6", "finite-memory confusion search", True, metrics, failures)

    def bounded_beats_hcheck(self) -> ExperimentOutcome:
        bound = settings.CBNOTPB_BOUND
        members = family_cbnotpb(bound)
        descending = list(reversed(members))
        failures: List[str] = []

        def run(target: LanguageRepr, concepts: List[LanguageRepr], verifier) -> RunResult:
            return run_cegis(
                RunConfig(target=target, verifier=verifier, learner_id="consistent-enum", concepts=concepts, seed=self.seed)
            )

        for target in members:
            if not run(target, members, ConstantBounded(bound)).identified:
                failures.append(f"ascending bcheck:{bound} missed {target}")
            if not run(target, descending, ConstantBounded(bound)).identified:
                failures.append(f"descending bcheck:{bound} missed {target}")
            identified = run(target, descending, PositiveBounded()).identified
            if identified != (target == descending[0]):
                failures.append(f"descending hcheck on {target}: identified={identified}")

        hcheck_pairs = 0
        for i, target in enumerate(members):
            seen = list(range(i + 1))
            for candidate in members[i + 1:]:
                hcheck_pairs += 1
                if hcheck(target, candidate, seen) is not BOTTOM:
                    failures.append(f"hcheck saw a counterexample for {candidate} vs {target}")

        metrics = {"bound": bound, "members": len(members), "hcheck_pairs": hcheck_pairs}
        return self._outcome("E7", "bounded counterexamples beat hcheck on cbnotpb", True, metrics, failures)

    def history_simulations(self) -> ExperimentOutcome:
        bound = settings.NOTCB_BOUND
        cases = [
            ("history-gold", Finite((9, 12))),
            ("history-gold", Finite((2, 6))),
            ("history-family3", Pow32Finite(((0, 1), (1, 1), (0, 4)))),
            ("history-family3", Pow2AtLeast(2)),
            ("history-chain", UpTo(3)),
        ]
        failures: List[str] = []
        compared = 0
        for learner_id, target in cases:
            for inner in (Minimal(), ConstantBounded(bound), PositiveBounded()):
                native = run_cegis(RunConfig(target=target, verifier=inner, learner_id=learner_id, seed=self.seed))
                for strategy in self._strategies():
                    compared += 1
                    simulated = run_cegis(
                        RunConfig(
                            target=target,
                            verifier=Simulated(inner, strategy),
                            learner_id=learner_id,
                            seed=self.seed,
                        )
                    )
                    if not self._same_run(native, simulated):
                        failures.append(f"{learner_id} on {target}: {inner} vs {Simulated(inner, strategy)} differ")

        metrics = {"cases": len(cases), "runs_compared": compared}
        return self._outcome("E8", "infinite-memory learners under simulated verifiers", True, metrics, failures)

    def tails_need_unbounded(self) -> ExperimentOutcome:
        bound = settings.NOTCB_BOUND
        tails = family_notcb_tails(bound, count=self._size(8, 4))
        failures: List[str] = []
        for target in tails:
            for verifier in (PositiveBounded(), Arbitrary()):
                result = run_cegis(
                    RunConfig(target=target, verifier=verifier, learner_id="consistent-enum", concepts=tails, seed=self.seed)
                )
                if not result.identified:
                    failures.append(f"{verifier} missed {target}")
            blind = run_cegis(
                RunConfig(
                    target=target,
                    verifier=ConstantBounded(bound),
                    learner_id="consistent-enum",
                    concepts=tails,
                    seed=self.seed,
                )
            )
            if blind.identified != (target == tails[0]):
                failures.append(f"bcheck:{bound} on {target}: identified={blind.identified}")

        metrics = {"bound": bound, "members": len(tails)}
        return self._outcome("E9", "notcb tails need unbounded counterexamples", True, metrics, failures)

    # ============================================
    # FINITE CLASSES
    # ============================================

    def _random_classes(self) -> List[FiniteConceptClass]:
        rng = random.Random(self.seed)
        return [random_class(rng) for _ in range(self._size(100, 20))]

    def dimensions_known_classes(self) -> ExperimentOutcome:
        expected = {"powerset3": (3, 3), "singles4": (1, 1)}
        classes = {"powerset3": powerset_class(3), "singles4": singletons_class(4)}
        measured = {name: (teaching_dimension(cls).dimension, vc_dimension(cls)) for name, cls in classes.items()}
        failures = [
            f"{name}: (TD, VC)={measured[name]} != {expected[name]}"
            for name in classes
            if measured[name] != expected[name]
        ]
        metrics = {name: {"td": td, "vc": vc} for name, (td, vc) in measured.items()}
        return self._outcome("F1", "teaching and VC dimension of known classes", True, metrics, failures)

    def td_bounds_random(self) -> ExperimentOutcome:
        classes = self._random_classes()
        failures: List[str] = []
        for index, cls in enumerate(classes):
            bounds = td_bounds_check(cls)
            if not bounds.passed:
                failures.append(f"class {index}: {bounds.describe()} (vc={bounds.vc}, |C|={bounds.size})")
        metrics = {"classes": len(classes)}
        return self._outcome("F2", "VC/log|C| ≤ TD ≤ |C|-1 on random classes", True, metrics, failures)

    def set_cover_reduction(self) -> ExperimentOutcome:
        rng = random.Random(self.seed)
        instances = [random_cover(rng) for _ in range(self._size(50, 10))]
        failures: List[str] = []
        sizes = []
        for index, instance in enumerate(instances):
            cover = len(min_set_cover(instance))
            mincex = len(min_counterexample_set(setcover_to_fis(instance)))
            sizes.append(cover)
            if cover != mincex:
                failures.append(f"instance {index}: cover {cover} != min counterexample set {mincex}")
        metrics = {"instances": len(instances), "max_cover": max(sizes, default=0)}
        return self._outcome("F3", "set cover reduces to minimum counterexample sets", True, metrics, failures)

    def sample_complexity_random(self) -> ExperimentOutcome:
        classes = self._random_classes()
        failures: List[str] = []
        slack = []
        for index, cls in enumerate(classes):
            report = ogis_sample_complexity(cls)
            slack.append(report.worst_case - report.teaching_dimension)
            if not report.passed:
                failures.append(f"class {index}: {report.worst_case} examples < TD {report.teaching_dimension}")
        metrics = {"classes": len(classes), "min_slack": min(slack, default=0)}
        return self._outcome("F4", "OGIS sample complexity is at least TD", True, metrics, failures)
