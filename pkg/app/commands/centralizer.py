"""
``centralizer`` command: degree-by-degree centralizer of c_1.
"""
import logging
import time
from pathlib import Path
from typing import Optional

import typer
from rich.table import Table

from app.commands.common import FORCE_OPTION, JSON_OPTION, N_OPTION, build_report, console, exit_codes, finish
from app.services.verification_service import verification_service

logger = logging.getLogger(__name__)


def centralizer_command(
    n: int = N_OPTION,
    max_degree: int = typer.Option(4, "--max-degree", min=0),
    witnesses: bool = typer.Option(False, "--witnesses", help="Print the nullspace basis"),
    force: bool = FORCE_OPTION,
    json_path: Optional[Path] = JSON_OPTION,
):
    """
    Compare the centralizer of c_1 with Q[c_1, ..., c_n] in each degree.

    Exits 3 when a degree exceeds the resource caps.
    """
    started = time.perf_counter()
    with exit_codes("centralizer"):
        checks, reports = verification_service.centralizer(n, max_degree, force, witnesses)

    table = Table(title=f"Centralizer of c_1 in O(M_{n})")
    for column in ("degree", "ambient", "nullspace", "expected", "span", "gr", "delta-phi"):
        table.add_column(column, justify="right")
    for report in reports:
        table.add_row(
            str(report.degree),
            str(report.ambient_dimension),
            str(report.nullspace_dimension),
            str(report.expected_dimension),
            "ok" if report.span_check else "FAIL",
            "-" if report.gr_check is None else ("ok" if report.gr_check else "FAIL"),
            "ok" if report.injectivity_check else "FAIL",
        )
    console.print(table)
    if witnesses:
        for report in reports:
            for witness in report.witnesses:
                typer.echo(f"d={report.degree}: {witness}")

    report = build_report(
        "centralizer", {"n": n, "max_degree": max_degree, "force": force}, checks, started=started
    )
    finish(report, json_path)
