"""Command line entry point.

Exit codes of `sspa verify`: 0 when every query is Secure, 1 when one has an attack, 2 when one is Unknown, 3 when the
model cannot be read or the command line is wrong, 4 when the engine fails. `sspa corpus` exits 1 when a model differs
from the manifest.
"""

# standard library
import sys

from pathlib import Path

# typing
from typing import Any, Optional

# third parties
import click

# application configuration
from youwol.sspa.configuration import EngineLimits, OracleBounds

# application services
from youwol.sspa.services import get_service_engine_limits, get_service_oracle_bounds, get_service_report

# application model
from youwol.sspa.model import ModelError
from youwol.sspa.parser import ParseError

# application tasks
from youwol.sspa.tasks import VerifyOptions, build_task_corpus, build_task_verify, render_outcomes

EXIT_BAD_INPUT = 3
EXIT_INTERNAL = 4


class _Commands(click.Group):
    """Usage errors exit with EXIT_BAD_INPUT, failures of the engine with EXIT_INTERNAL."""

    def main(self, *args: Any, **kwargs: Any) -> Any:
        kwargs["standalone_mode"] = False
        try:
            return super().main(*args, **kwargs)
        except click.ClickException as error:
            error.show()
            sys.exit(EXIT_BAD_INPUT)
        except click.Abort:
            click.echo("sspa: aborted", err=True)
            sys.exit(EXIT_INTERNAL)
        except Exception as error:  # pylint: disable=broad-except
            click.echo(f"sspa: internal error: {error!r}", err=True)
            sys.exit(EXIT_INTERNAL)


def _limits(
    max_rules: Optional[int], timeout: Optional[float], max_depth: Optional[int], transform: bool
) -> EngineLimits:
    return get_service_engine_limits()().with_overrides(
        max_rules=max_rules,
        timeout=timeout,
        max_term_depth=max_depth,
        transform_knowledge=True if transform else None,
    )


def _bounds(pool: Optional[int], steps: Optional[int], oracle_depth: Optional[int]) -> OracleBounds:
    return get_service_oracle_bounds()().with_overrides(nonce_pool=pool, max_steps=steps, max_depth=oracle_depth)


@click.group(cls=_Commands)
@click.option("--verbose", is_flag=True, help="Also report debug lines.")
def sspa(verbose: bool) -> None:
    """Verify reachability queries of stateful security protocols."""
    get_service_report(verbose=verbose)()


@sspa.command()
@click.argument("model", type=click.Path(path_type=Path))
@click.option("--query", "queries", multiple=True, help="Query to check; all queries when omitted.")
@click.option("--max-rules", type=int, default=None, help="Stop the saturation after this many rules.")
@click.option("--timeout", type=float, default=None, help="Stop the saturation after this many seconds.")
@click.option("--max-depth", type=int, default=None, help="Drop rules with deeper terms.")
@click.option("--transform-knowledge", is_flag=True, help="Also transform rules concluding knowledge.")
@click.option("--trace", is_flag=True, help="Print the derivation tree and trace of every attack.")
@click.option("--oracle", is_flag=True, help="Cross-check each query with the bounded ground oracle.")
@click.option("--pool", type=int, default=None, help="Oracle: fresh values per nonce.")
@click.option("--steps", type=int, default=None, help="Oracle: configurations explored.")
@click.option("--oracle-depth", type=int, default=None, help="Oracle: deepest term.")
@click.option("--dump-kb", type=click.Path(path_type=Path), default=None, help="Write every archived rule there.")
@click.option("--json", "json_path", type=click.Path(path_type=Path), default=None, help="Write the report there.")
@click.option("--jobs", type=int, default=1, help="Queries checked in parallel, after one shared saturation.")
def verify(
    model: Path,
    queries: tuple[str, ...],
    max_rules: Optional[int],
    timeout: Optional[float],
    max_depth: Optional[int],
    transform_knowledge: bool,
    trace: bool,
    oracle: bool,
    pool: Optional[int],
    steps: Optional[int],
    oracle_depth: Optional[int],
    dump_kb: Optional[Path],
    json_path: Optional[Path],
    jobs: int,
) -> None:
    """Saturate MODEL and answer its queries."""
    # pylint: disable=too-many-arguments
    if not model.is_file():
        click.echo(f"sspa: no model file {model}", err=True)
        sys.exit(EXIT_BAD_INPUT)
    options = VerifyOptions(queries=queries, trace=trace, oracle=oracle, dump_kb=dump_kb, jobs=jobs)
    task = build_task_verify(
        options,
        limits=_limits(max_rules, timeout, max_depth, transform_knowledge),
        bounds=_bounds(pool, steps, oracle_depth),
    )
    try:
        report = task.run(model)
    except (ParseError, ModelError) as error:
        click.echo(f"sspa: {model}: {error}", err=True)
        sys.exit(EXIT_BAD_INPUT)
    click.echo(report.render_text(with_trace=trace))
    if json_path is not None:
        report.write_json(json_path)
    sys.exit(report.exit_code())


@sspa.command()
@click.argument("names", nargs=-1)
@click.option("--oracle", is_flag=True, help="Cross-check the verdicts with the bounded ground oracle.")
@click.option("--max-rules", type=int, default=None, help="Stop each saturation after this many rules.")
@click.option("--timeout", type=float, default=None, help="Stop each saturation after this many seconds.")
def corpus(names: tuple[str, ...], oracle: bool, max_rules: Optional[int], timeout: Optional[float]) -> None:
    """Verify the bundled models, or those in NAMES, against their expected verdicts."""
    task = build_task_corpus(names, oracle=oracle, limits=_limits(max_rules, timeout, None, False))
    try:
        outcomes = task.run()
    except KeyError as error:
        click.echo(f"sspa: {error.args[0]}", err=True)
        sys.exit(EXIT_BAD_INPUT)
    click.echo(render_outcomes(outcomes))
    sys.exit(0 if all(outcome.passed for outcome in outcomes) else 1)


def run() -> None:
    """Run the command line."""
    sspa()  # pylint: disable=no-value-for-parameter


if __name__ == "__main__":
    run()
