"""
Shared plumbing for the command handlers: exit codes, exception translation,
report assembly and rendering.
"""
import logging
import time
from contextlib import contextmanager
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, List, Optional

import typer
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from app.config import settings
from app.exceptions import ResourceLimitError
from app.models.report import CheckResult, RunReport

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_ARGS = 2
EXIT_RESOURCE = 3

console = Console()
err_console = Console(stderr=True)

N_OPTION = typer.Option(2, "--n", min=1, help="Matrix size")
JSON_OPTION = typer.Option(None, "--json", help="Write the JSON report to this path")
SEED_OPTION = typer.Option(None, "--seed", help="Sampling seed (config default when omitted)")
FORCE_OPTION = typer.Option(False, "--force", help="Ignore resource caps")


@contextmanager
def exit_codes(command: str) -> Iterator[None]:
    """
    Translate exceptions into exit codes.

    ValueError family -> 2, ResourceLimitError -> 3, anything else -> 1.
    """
    try:
        yield
    except (typer.Exit, typer.Abort):
        raise
    except ResourceLimitError as e:
        logger.warning(f"{command}: resource limit: {e}")
        err_console.print(f"[red]Resource limit:[/red] {escape(str(e))}")
        raise typer.Exit(code=EXIT_RESOURCE)
    except ValueError as e:
        logger.warning(f"{command}: invalid arguments: {e}")
        err_console.print(f"[red]Error:[/red] {escape(str(e))}")
        raise typer.Exit(code=EXIT_BAD_ARGS)
    except Exception as e:
        logger.error(f"{command}: unexpected error: {e}")
        err_console.print(f"[red]Internal error:[/red] {escape(str(e))}")
        raise typer.Exit(code=EXIT_FAILED)


def build_report(
    command: str,
    params: Dict[str, Any],
    checks: List[CheckResult],
    seed: Optional[int] = None,
    started: Optional[float] = None,
) -> RunReport:
    report = RunReport.from_checks(settings.schema_version, command, params, checks, seed)
    if settings.record_timing and started is not None:
        report.wall_ms = int((time.perf_counter() - started) * 1000)
        report.timestamp = datetime.now(timezone.utc).isoformat()
    return report


def render_checks(report: RunReport) -> None:
    table = Table(title=report.command)
    table.add_column("Check")
    table.add_column("Result")
    table.add_column("Detail", overflow="fold")
    for check in report.checks:
        result = "[green]pass[/green]" if check.passed else "[red]FAIL[/red]"
        table.add_row(escape(check.name), result, escape(check.detail))
    console.print(table)
    verdict = "[green]PASS[/green]" if report.passed else "[red]FAIL[/red]"
    console.print(f"{report.command}: {verdict}")


def finish(report: RunReport, json_path: Optional[Path]) -> None:
    """Render, optionally write JSON, and exit 1 when any check failed."""
    render_checks(report)
    if json_path is not None:
        json_path.write_text(report.to_json(), encoding="utf-8")
        logger.info(f"Report written to {json_path}")
    if not report.passed:
        raise typer.Exit(code=EXIT_FAILED)


def run_suite(
    command: str,
    params: Dict[str, Any],
    suite: Callable[[], List[CheckResult]],
    json_path: Optional[Path] = None,
    seed: Optional[int] = None,
) -> None:
    started = time.perf_counter()
    with exit_codes(command):
        checks = suite()
    finish(build_report(command, params, checks, seed, started), json_path)


def resolve_seed(seed: Optional[int]) -> int:
    return settings.default_seed if seed is None else seed
