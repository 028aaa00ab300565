# cli/commands.py
"""ogis-lab command line: single runs, the separation battery, finite-class analyses."""
import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Optional, Tuple

import click

from config.constants import EXIT_FAILED, FAMILY_IDS, REPORT_FORMATS, VERIFIER_NAMES
from config.settings import settings
from core.errors import LabError
from learners.registry import LEARNER_IDS
from services.finite_service import analyze
from services.ledger_service import RunLedger
from services.report_service import Report, write_report
from services.run_service import build_run_config, run_report
from services.separation_service import SeparationService

logger = logging.getLogger(__name__)


@contextmanager
def _usage_errors():
    """Bad parameters exit 2 with a one-line diagnostic; other lab errors exit 1."""
    try:
        yield
    except ValueError as e:
        raise click.UsageError(str(e)) from e
    except LabError as e:
        raise click.ClickException(str(e)) from e


def _report_options(command):
    command = click.option("--record", is_flag=True, default=False, help="Persist the report in the run ledger")(command)
    command = click.option(
        "--format", "fmt", type=click.Choice(REPORT_FORMATS), default="json", show_default=True
    )(command)
    command = click.option("--out", type=click.Path(dir_okay=False), default=None, help="Report file")(command)
    return command


def _emit(report: Report, fmt: str, out: Optional[str], record: bool, echo_report: bool = True) -> None:
    text = write_report(report, fmt, out)
    if not out and echo_report:
        click.echo(text, nl=False)
    if record:
        record_id = RunLedger().record(report)
        click.echo(f"recorded {record_id}", err=True)


@click.group()
@click.option("--verbose", is_flag=True, default=False, help="Debug logging")
def main(verbose: bool):
    """Oracle-guided inductive synthesis laboratory."""
    level = logging.DEBUG if verbose else getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


@main.command()
@click.option("--family", type=click.Choice(FAMILY_IDS), default=None, help="Family the target belongs to")
@click.option("--target", required=True, help="Member index within the family, or a language rendering")
@click.option("--verifier", default="check", show_default=True, help=f"One of {', '.join(VERIFIER_NAMES)} (suffix ~check to simulate)")
@click.option("--strategy", default="ascending", show_default=True, help="ascending, descending[:H] or random[:SEED]")
@click.option("--learner", required=True, help=f"One of {', '.join(LEARNER_IDS)}")
@click.option("--order", default="ascending", show_default=True, help="ascending, shuffle[:SEED] or scripted:1,2,3")
@click.option("--concept", "concepts", multiple=True, help="Concept rendering for consistent-enum (repeatable)")
@click.option("--budget", type=int, default=None, help="Step budget")
@click.option("--window", type=int, default=None, help="Stability window")
@click.option("--memory-bound", type=int, default=None, help="State bytes allowed for finite-memory learners")
@click.option("--seed", type=int, envvar="OGIS_LAB_SEED", default=None)
@_report_options
@click.pass_context
def run(
    ctx: click.Context,
    family: Optional[str],
    target: str,
    verifier: str,
    strategy: str,
    learner: str,
    order: str,
    concepts: Tuple[str, ...],
    budget: Optional[int],
    window: Optional[int],
    memory_bound: Optional[int],
    seed: Optional[int],
    out: Optional[str],
    fmt: str,
    record: bool,
):
    """Run one CEGIS dialogue; exit 0 identified, 3 converged wrong, 4 budget exhausted."""
    with _usage_errors():
        config = build_run_config(
            target=target,
            learner=learner,
            family=family,
            verifier=verifier,
            strategy=strategy,
            order=order,
            budget=budget,
            window=window,
            memory_bound=memory_bound,
            seed=seed,
            concepts=concepts,
        )
    try:
        result, report = run_report(config)
    except LabError as e:
        raise click.ClickException(str(e)) from e

    _emit(report, fmt, out, record)
    click.echo(
        f"{'identified' if result.identified else 'not identified'}: {result.final_hypothesis} "
        f"after {result.steps_used} steps, {result.correctness_queries} correctness queries",
        err=True,
    )
    ctx.exit(result.exit_code)


@main.command()
@click.option("--seed", type=int, envvar="OGIS_LAB_SEED", default=None)
@click.option("--quick", is_flag=True, default=False, help="Reduced corpus sizes")
@click.option("--only", multiple=True, help="Experiment id to run (repeatable)")
@_report_options
@click.pass_context
def separations(
    ctx: click.Context,
    seed: Optional[int],
    quick: bool,
    only: Tuple[str, ...],
    out: Optional[str],
    fmt: str,
    record: bool,
):
    """Run the separation battery; exit 0 iff every experiment passes."""
    service = SeparationService(seed=seed, quick=quick)
    with _usage_errors():
        report = service.run_battery(list(only) or None)

    _emit(report, fmt, out, record)
    for experiment_id, entry in report.summary.items():
        click.echo(f"{experiment_id}: {'pass' if entry['passed'] else 'FAIL'}", err=True)
    ctx.exit(0 if report.passed else EXIT_FAILED)


@main.group()
def finite():
    """Analyses of finite concept classes (.cls) and set-cover instances (.scv)."""


def _finite(ctx: click.Context, analysis: str, path: str, out, fmt, record, target: Optional[int] = None):
    with _usage_errors():
        outcome = analyze(analysis, Path(path).read_text(), source=Path(path).name, target=target)
    click.echo(outcome.headline)
    _emit(outcome.report, fmt, out, record, echo_report=False)
    ctx.exit(0 if outcome.report.passed else EXIT_FAILED)


_FILE = click.argument("path", type=click.Path(exists=True, dir_okay=False))


@finite.command()
@_FILE
@_report_options
@click.pass_context
def td(ctx, path, out, fmt, record):
    """Teaching dimension."""
    _finite(ctx, "td", path, out, fmt, record)


@finite.command()
@_FILE
@_report_options
@click.pass_context
def vc(ctx, path, out, fmt, record):
    """VC dimension."""
    _finite(ctx, "vc", path, out, fmt, record)


@finite.command()
@_FILE
@_report_options
@click.pass_context
def bounds(ctx, path, out, fmt, record):
    """Check VC/log2|C| ≤ TD ≤ |C|-1."""
    _finite(ctx, "bounds", path, out, fmt, record)


@finite.command()
@_FILE
@click.option("--target", type=int, default=None, help="Concept index (defaults to the file's target)")
@_report_options
@click.pass_context
def mincex(ctx, path, target, out, fmt, record):
    """Minimum counterexample set for a target concept."""
    _finite(ctx, "mincex", path, out, fmt, record, target=target)


@finite.command()
@_FILE
@_report_options
@click.pass_context
def reduce(ctx, path, out, fmt, record):
    """Minimum set cover next to the min counterexample set of its reduction."""
    _finite(ctx, "reduce", path, out, fmt, record)


@finite.command()
@_FILE
@_report_options
@click.pass_context
def mogis(ctx, path, out, fmt, record):
    """OGIS sample complexity next to the teaching dimension."""
    _finite(ctx, "mogis", path, out, fmt, record)


@main.command()
@click.option("--limit", type=int, default=10, show_default=True)
def history(limit: int):
    """List the most recent ledger records."""
    for entry in RunLedger().recent(limit):
        click.echo(
            f"{entry['created_at']}  {entry['id']}  {entry['command']:<14} "
            f"seed={entry['seed']}  {'pass' if entry['passed'] else 'FAIL'}"
        )


if __name__ == "__main__":
    main()
