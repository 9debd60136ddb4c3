"""
``verify`` command group: the invariant suites on the commutative side.
"""
import logging
from pathlib import Path
from typing import Optional

import typer

from app.commands.common import FORCE_OPTION, JSON_OPTION, N_OPTION, SEED_OPTION, resolve_seed, run_suite
from app.services.poisson_service import StructureName
from app.services.verification_service import verification_service

logger = logging.getLogger(__name__)

router = typer.Typer(help="Run verification suites")

STRUCTURE_OPTION = typer.Option(None, "--structure", help="Restrict to one structure")


def _structure(value: Optional[StructureName]) -> Optional[str]:
    return value.value if value is not None else None


@router.command("jacobi")
def verify_jacobi(
    n: int = N_OPTION,
    structure: Optional[StructureName] = STRUCTURE_OPTION,
    json_path: Optional[Path] = JSON_OPTION,
):
    """Jacobi identity on every generator triple."""
    run_suite(
        "verify jacobi",
        {"n": n, "structure": _structure(structure)},
        lambda: verification_service.jacobi(n, _structure(structure)),
        json_path,
    )


@router.command("involutive")
def verify_involutive(
    n: int = N_OPTION,
    structure: Optional[StructureName] = STRUCTURE_OPTION,
    json_path: Optional[Path] = JSON_OPTION,
):
    """{c_i, c_j} = 0 for all pairs."""
    run_suite(
        "verify involutive",
        {"n": n, "structure": _structure(structure) or StructureName.SEMICLASSICAL.value},
        lambda: verification_service.involutive(n, _structure(structure)),
        json_path,
    )


@router.command("limit")
def verify_limit(
    n: int = N_OPTION,
    seed: Optional[int] = SEED_OPTION,
    pairs: int = typer.Option(50, "--pairs", min=0, help="Random monomial pairs"),
    force: bool = FORCE_OPTION,
    json_path: Optional[Path] = JSON_OPTION,
):
    """Semiclassical limit of commutators against the bracket."""
    seed = resolve_seed(seed)
    run_suite(
        "verify limit",
        {"n": n, "pairs": pairs},
        lambda: verification_service.quantum_limit(n, seed, pairs, force),
        json_path,
        seed=seed,
    )


@router.command("sl2")
def verify_sl2(
    max_degree: int = typer.Option(6, "--max-degree", min=0),
    bound: int = typer.Option(3, "--bound", min=1, help="Largest exponent in the closed-form checks"),
    json_path: Optional[Path] = JSON_OPTION,
):
    """O(SL_2): table, closed forms for {a+d, .}, centralizer of the trace."""
    run_suite(
        "verify sl2",
        {"max_degree": max_degree, "bound": bound},
        lambda: verification_service.sl2(max_degree, bound),
        json_path,
    )


@router.command("gr-weight")
def verify_gr_weight(
    n: int = N_OPTION,
    max_degree: int = typer.Option(4, "--max-degree", min=0),
    seed: Optional[int] = SEED_OPTION,
    json_path: Optional[Path] = JSON_OPTION,
):
    """Weight identity of the graded bracket, filtration and flip checks."""
    seed = resolve_seed(seed)
    run_suite(
        "verify gr-weight",
        {"n": n, "max_degree": max_degree},
        lambda: verification_service.gr_weight(n, max_degree, seed),
        json_path,
        seed=seed,
    )


@router.command("delta-phi")
def verify_delta_phi(n: int = N_OPTION, json_path: Optional[Path] = JSON_OPTION):
    """(delta o phi)(c_i) = e_i."""
    run_suite("verify delta-phi", {"n": n}, lambda: verification_service.delta_phi(n), json_path)


@router.command("charpoly")
def verify_charpoly(n: int = N_OPTION, json_path: Optional[Path] = JSON_OPTION):
    """Principal minors against det(tI - A), and the Casimir checks."""
    run_suite("verify charpoly", {"n": n}, lambda: verification_service.charpoly(n), json_path)
