"""
``rank``, ``weyl`` and ``gap`` commands.
"""
import logging
from pathlib import Path
from typing import Optional

import typer

from app.commands.common import FORCE_OPTION, JSON_OPTION, N_OPTION, SEED_OPTION, resolve_seed, run_suite
from app.models.leafrank import SpaceTag
from app.models.report import CheckResult
from app.services.leafrank_service import PermWord, leafrank_service
from app.services.poisson_service import StructureName, get_table

logger = logging.getLogger(__name__)

SPACE_OPTION = typer.Option(SpaceTag.SL, "--space", help="m, gl or sl")


def rank_command(
    space: SpaceTag = SPACE_OPTION,
    n: int = N_OPTION,
    samples: Optional[int] = typer.Option(None, "--samples", min=1),
    seed: Optional[int] = SEED_OPTION,
    structure: StructureName = typer.Option(StructureName.SEMICLASSICAL, "--structure"),
    json_path: Optional[Path] = JSON_OPTION,
):
    """
    Largest exact rank of the bracket matrix at seeded points of the space.

    The check passes when the largest even rank not above the stated value
    is reached; on SL_n that is n(n-1) itself. On M_n and GL_n the stated
    value is odd, and ``rank-bound`` only records that no sample exceeds it.
    """
    seed = resolve_seed(seed)

    def suite():
        report = leafrank_service.sampled_rank(n, space, get_table(structure, n), samples, seed)
        detail = (
            f"max rank {report.max_rank} over {report.samples} samples, "
            f"target {report.reachable_rank}, stated {report.expected_rank}"
        )
        if report.note:
            detail += f"; {report.note}"
        checks = [
            CheckResult(name="rank-reached", passed=report.max_rank == report.reachable_rank, detail=detail)
        ]
        if report.space != SpaceTag.SL:
            checks.append(
                CheckResult(
                    name="rank-bound",
                    passed=report.max_rank <= report.expected_rank,
                    detail=f"no sample exceeds the stated rank {report.expected_rank}",
                )
            )
        checks.append(
            CheckResult(name="rank-even", passed=report.max_rank % 2 == 0, detail="antisymmetric bracket matrix")
        )
        return checks

    run_suite(
        "rank",
        {"space": SpaceTag(space).value, "n": n, "samples": samples, "structure": structure.value},
        suite,
        json_path,
        seed=seed,
    )


def weyl_command(n: int = N_OPTION, force: bool = FORCE_OPTION, json_path: Optional[Path] = JSON_OPTION):
    """Leaf dimensions over S_n x S_n: maximum n(n-1) at the longest element pair."""

    def suite():
        report = leafrank_service.max_leaf_dimension(n, force)
        top = PermWord.longest(n).images
        at_longest = (list(top), list(top)) in [tuple(pair) for pair in report.attained_at]
        return [
            CheckResult(
                name="max-leaf-dimension",
                passed=report.max_leaf_dimension == report.expected,
                detail=f"max {report.max_leaf_dimension}, expected {report.expected}",
            ),
            CheckResult(
                name="attained-at-longest",
                passed=at_longest,
                detail=f"attained at {len(report.attained_at)} pair(s)",
            ),
            CheckResult(
                name="length-bound",
                passed=report.bound_holds and report.bound_max == report.expected,
                detail=f"bound holds everywhere: {report.bound_holds}; bound max {report.bound_max}",
            ),
        ]

    run_suite("weyl", {"n": n, "force": force}, suite, json_path)


def gap_command(
    space: SpaceTag = SPACE_OPTION,
    n: int = N_OPTION,
    sample: bool = typer.Option(False, "--sample", help="Also count with the sampled rank"),
    samples: Optional[int] = typer.Option(None, "--samples", min=1),
    seed: Optional[int] = SEED_OPTION,
    json_path: Optional[Path] = JSON_OPTION,
):
    """dim - rank/2 against the dimension of Q[c_1, ..., c_n]."""
    seed = resolve_seed(seed)

    def suite():
        computed = None
        if sample:
            computed = leafrank_service.sampled_rank(n, space, samples=samples, seed=seed).max_rank
        report = leafrank_service.integrability_gap(n, space, computed)
        verdict = "integrable" if report.integrable else "not integrable"
        detail = (
            f"dim {report.dimension}, rank {report.stated_rank}, required {report.required_dimension}, "
            f"actual {report.subalgebra_dimension}: {verdict}"
        )
        if report.computed_rank is not None:
            detail += f"; with sampled rank {report.computed_rank}: required {report.required_from_computed}"
        checks = [CheckResult(name="integrability-count", passed=True, detail=detail)]
        if report.space == SpaceTag.SL:
            expected = n * (n + 1) // 2 - 1
            checks.append(
                CheckResult(
                    name="sl-required-dimension",
                    passed=report.required_dimension == str(expected),
                    detail=f"required dimension equals C(n+1,2) - 1 = {expected}",
                )
            )
        return checks

    run_suite(
        "gap",
        {"space": SpaceTag(space).value, "n": n, "sample": sample},
        suite,
        json_path,
        seed=seed if sample else None,
    )
