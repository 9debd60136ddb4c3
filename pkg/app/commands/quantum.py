"""
``quantum`` command group: suites on O_t(M_n).
"""
from pathlib import Path
from typing import Optional

import typer

from app.commands.common import FORCE_OPTION, JSON_OPTION, N_OPTION, SEED_OPTION, resolve_seed, run_suite
from app.services.verification_service import verification_service

router = typer.Typer(help="Quantized matrix algebra suites")


@router.command("commute")
def quantum_commute(n: int = N_OPTION, force: bool = FORCE_OPTION, json_path: Optional[Path] = JSON_OPTION):
    """[sigma_i, sigma_j] = 0 and sigma_i -> c_i at t = 1."""
    run_suite("quantum commute", {"n": n}, lambda: verification_service.quantum_commute(n, force), json_path)


@router.command("limit")
def quantum_limit(
    n: int = N_OPTION,
    seed: Optional[int] = SEED_OPTION,
    pairs: int = typer.Option(50, "--pairs", min=0),
    force: bool = FORCE_OPTION,
    json_path: Optional[Path] = JSON_OPTION,
):
    """Commutator limits against the semiclassical bracket."""
    seed = resolve_seed(seed)
    run_suite(
        "quantum limit",
        {"n": n, "pairs": pairs},
        lambda: verification_service.quantum_limit(n, seed, pairs, force),
        json_path,
        seed=seed,
    )


@router.command("det-central")
def quantum_det_central(n: int = N_OPTION, force: bool = FORCE_OPTION, json_path: Optional[Path] = JSON_OPTION):
    """[det_t, x[i,j]] = 0 for every generator."""
    run_suite("quantum det-central", {"n": n}, lambda: verification_service.quantum_det_central(n, force), json_path)


@router.command("minor-convention")
def quantum_minor_convention(n: int = N_OPTION, force: bool = FORCE_OPTION, json_path: Optional[Path] = JSON_OPTION):
    """sigma_n against det_t under the signed and sign-free weightings."""
    run_suite(
        "quantum minor-convention", {"n": n}, lambda: verification_service.minor_convention(n, force), json_path
    )


@router.command("rewriting")
def quantum_rewriting(
    n: int = N_OPTION,
    seed: Optional[int] = SEED_OPTION,
    words: int = typer.Option(30, "--words", min=1),
    force: bool = FORCE_OPTION,
    json_path: Optional[Path] = JSON_OPTION,
):
    """Confluence of the rewriting and associativity of the product."""
    seed = resolve_seed(seed)
    run_suite(
        "quantum rewriting",
        {"n": n, "words": words},
        lambda: verification_service.quantum_rewriting(n, seed, words, force),
        json_path,
        seed=seed,
    )
