import json
import logging
import tempfile
from pathlib import Path
from typing import Callable, Optional

import click
from rich.console import Console
from rich.table import Table

from analyse_src.suite_registry import SUITE_CHOICES, run_suites
from data_ingestion.data_ingestion import load_document
from src.clebsch_inv import clebsch_from_gamma
from src.coble_gamma import evaluate_all, power_sums
from src.errors import CubicSurfaceError, InputError
from src.galois_twist import TwistResult, run_twist_job
from src.settings import get_settings
from src.surface_builder import solve_equation_problem

# Configure logging for the script
logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s")

INPUT_EXIT_CODE = InputError.exit_code
console = Console(stderr=True)


class CubicGroup(click.Group):
    """Command group reporting usage errors with the input error exit code."""

    def make_context(self, info_name, args, parent=None, **extra):
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click.UsageError as exc:
            exc.exit_code = INPUT_EXIT_CODE
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as exc:
            exc.exit_code = INPUT_EXIT_CODE
            raise


def write_json(path: str, document) -> None:
    Path(path).write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")


def _run(ctx: click.Context, output: Optional[str], action: Callable[[], dict]) -> dict:
    """Runs ``action``; a library failure is written to ``output`` and ends the command with its exit code."""
    try:
        document = action()
    except CubicSurfaceError as failure:
        console.print(f"[bold red]{failure.reason}[/bold red]: {failure.message}")
        if output:
            write_json(output, failure.to_json())
        ctx.exit(failure.exit_code)
    if output:
        write_json(output, document)
    return document


output_option = click.option("--output", "-o", required=True, type=click.Path(dir_okay=False), help="Result file.")
input_argument = click.argument("input_file", type=click.Path(exists=True, dir_okay=False))


@click.group(cls=CubicGroup)
def main():
    """Exact computations with marked cubic surfaces."""


@main.command()
@input_argument
@output_option
@click.pass_context
def gamma(ctx: click.Context, input_file: str, output: str):
    """The 40 invariants, their power sums and Clebsch's invariants of a six-point configuration.

    The result is deterministic, so --seed, --samples, --bound and --workers do not apply.
    """

    def action() -> dict:
        config = load_document(input_file, "config").to_config()
        values = evaluate_all(config)
        return {
            "config": config.to_json(),
            "gamma": values.to_json(),
            "power_sums": power_sums(values).to_json(),
            "clebsch": clebsch_from_gamma(values).to_json(),
        }

    _run(ctx, output, action)
    console.print(f"Invariants written to {output}.")


@main.command()
@input_argument
@output_option
@click.option("--orchestrate", is_flag=True, help="Run the zenml equation pipeline.")
@click.pass_context
def equation(ctx: click.Context, input_file: str, output: str, orchestrate: bool):
    """A rational cubic surface with the given Clebsch invariants.

    The construction is deterministic, so --seed, --samples, --bound and --workers do not apply.
    """

    def action() -> dict:
        if orchestrate:
            from pipelines.equation_pipeline import equation_pipeline

            run = equation_pipeline(clebsch_path=input_file)
            return run.steps["equation_step"].output.load()
        return solve_equation_problem(load_document(input_file, "clebsch").to_clebsch()).to_json()

    _run(ctx, output, action)
    console.print(f"Surface written to {output}.")


@main.command()
@click.argument("suites", nargs=-1, required=True, type=click.Choice(SUITE_CHOICES))
@click.option("--seed", type=int, default=None, help="Master seed (defaults to the configured seed).")
@click.option("--samples", type=click.IntRange(min=1), default=None, help="Configurations behind the relation data.")
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None, help="Report file.")
@click.pass_context
def verify(ctx: click.Context, suites: tuple, seed: Optional[int], samples: Optional[int], output: Optional[str]):
    """Runs verification suites and reports every check.

    The suites run serially with no point search, so --bound and --workers do not apply.
    """
    settings = get_settings()
    seed = settings.seed if seed is None else seed
    samples = samples or settings.relation_samples

    def action() -> dict:
        report = run_suites(suites, seed, samples)
        return {
            "seed": seed,
            "samples": samples,
            "suites": list(suites),
            "passed": int(report["passed"].sum()),
            "failed": int((~report["passed"]).sum()),
            "checks": report.to_dict(orient="records"),
        }

    document = _run(ctx, output, action)
    table = Table(title=f"Verification (seed {seed})")
    for column in ("suite", "check", "expected", "observed", "passed"):
        table.add_column(column)
    for row in document["checks"]:
        table.add_row(row["suite"], row["check"], row["expected"], row["observed"], "[green]yes[/green]" if row["passed"] else "[red]no[/red]")
    console.print(table)
    console.print(f"{document['passed']} passed, {document['failed']} failed.")


@main.command()
@input_argument
@output_option
@click.option("--bound", type=click.IntRange(min=0), default=None, help="Height bound of the point search.")
@click.option("--seed", type=int, default=None, help="Seed of the relation data.")
@click.option("--samples", type=click.IntRange(min=1), default=None, help="Configurations behind the relation data.")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Point search workers.")
@click.option("--all-points", is_flag=True, help="Test every candidate instead of stopping at the first success.")
@click.option("--orchestrate", is_flag=True, help="Run the zenml twist pipeline.")
@click.pass_context
def twist(
    ctx: click.Context,
    input_file: str,
    output: str,
    bound: Optional[int],
    seed: Optional[int],
    samples: Optional[int],
    workers: Optional[int],
    all_points: bool,
    orchestrate: bool,
):
    """Searches the twisted moduli space of a job for a rational cubic surface."""

    def action() -> dict:
        job = load_document(input_file, "twist")
        overrides = {"bound": bound, "seed": seed, "samples": samples, "workers": workers}
        job = job.model_copy(update={k: v for k, v in overrides.items() if v is not None})
        if all_points:
            job = job.model_copy(update={"all_points": True})
        if orchestrate:
            result = _orchestrated_twist(job)
        else:
            result = run_twist_job(
                job.to_field_data(),
                job.to_rho(),
                job.bound,
                seed=job.seed,
                samples=job.samples,
                anchors=job.anchor_gammas(),
                workers=job.workers,
                all_points=job.all_points,
            )
        result.require_success()
        return result.to_json()

    document = _run(ctx, output, action)
    console.print(f"{len(document['points'])} candidates, {len(document['successes'])} surfaces; written to {output}.")


def _orchestrated_twist(job) -> TwistResult:
    from pipelines.twist_pipeline import twist_pipeline

    with tempfile.TemporaryDirectory() as directory:
        job_path = Path(directory) / "job.json"
        job_path.write_text(job.model_dump_json(), encoding="utf-8")
        run = twist_pipeline(job_path=str(job_path))
    outcome = run.steps["surface_recovery_step"].output.load()
    return TwistResult.from_json(outcome["model"], outcome["result"])


if __name__ == "__main__":
    main()
