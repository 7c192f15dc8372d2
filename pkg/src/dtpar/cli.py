"""``dtpar`` command line: run scenario files or the randomized check suite.

Exit status: 0 on success, 1 if any check report fails, 2 on malformed input.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import __version__
from .scenario import ScenarioError, load_scenario, render, run_scenario, verify_report
from .verify import run_all

EXIT_OK, EXIT_CHECK_FAILED, EXIT_PARSE = 0, 1, 2


def _emit(reports, fmt: str, out: str | None) -> None:
    if out is None:
        if reports:
            click.echo(render(reports, fmt), nl=False)
        return
    target = Path(out)
    target.mkdir(parents=True, exist_ok=True)
    ext = "json" if fmt == "doc" else "tsv"
    for i, r in enumerate(reports, 1):
        (target / f"{i:02d}-{r.command}.{ext}").write_text(render([r], fmt))


@click.group()
@click.version_option(version=__version__, prog_name="dtpar")
def main():
    """Exact wall-crossing series calculus."""


@main.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--out", type=click.Path(file_okay=False), default=None, help="Write one file per report here.")
@click.option("--format", "fmt", type=click.Choice(["tsv", "doc"]), default="tsv", show_default=True)
def run(file, out, fmt):
    """Run the commands listed in a scenario FILE."""
    try:
        reports = run_scenario(load_scenario(file))
    except ScenarioError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    _emit(reports, fmt, out)
    failed = [r for r in reports if not r.ok]
    for r in failed:
        click.echo(f"check failed: {r.command}", err=True)
    sys.exit(EXIT_CHECK_FAILED if failed else EXIT_OK)


@main.command()
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--max-d", type=click.IntRange(1, 8), default=5, show_default=True)
def verify(seed, max_d):
    """Run the randomized oracle and property checks."""
    report = verify_report(run_all(seed, max_d))
    click.echo(report.to_tsv(), nl=False)
    sys.exit(EXIT_OK if report.ok else EXIT_CHECK_FAILED)


if __name__ == "__main__":
    main()
