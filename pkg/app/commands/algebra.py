"""
Commands that print polynomials: ``bracket`` and ``charcoeff``.
"""
import logging
from typing import Optional

import typer

from app.algebra.context import matrix_context
from app.algebra.polynomial import format_polynomial, parse_polynomial
from app.commands.common import N_OPTION, exit_codes
from app.services.invariant_service import char_coeff, char_coeff_via_charpoly
from app.services.poisson_service import StructureName, bracket, get_table

logger = logging.getLogger(__name__)


def bracket_command(
    f: str = typer.Argument(..., help="First polynomial, e.g. \"x[1,1]\""),
    g: str = typer.Argument(..., help="Second polynomial"),
    structure: StructureName = typer.Option(StructureName.SEMICLASSICAL, "--structure"),
    n: int = N_OPTION,
):
    """
    Print the bracket {f, g} in canonical form.

    Exits 2 on parse or context errors.
    """
    with exit_codes("bracket"):
        context = matrix_context(n)
        table = get_table(structure, n)
        value = bracket(parse_polynomial(f, context), parse_polynomial(g, context), table)
        typer.echo(format_polynomial(value, context))


def charcoeff_command(
    n: int = N_OPTION,
    i: Optional[int] = typer.Option(None, "--i", help="Coefficient index (all when omitted)"),
    via_charpoly: bool = typer.Option(False, "--via-charpoly", help="Read c_i off det(tI - A)"),
):
    """Print c_i, the sum of the i x i principal minors."""
    with exit_codes("charcoeff"):
        context = matrix_context(n)
        indices = [i] if i is not None else list(range(1, n + 1))
        compute = char_coeff_via_charpoly if via_charpoly else char_coeff
        for index in indices:
            value = compute(n, index)
            prefix = f"c{index} = " if i is None else ""
            typer.echo(prefix + format_polynomial(value, context))
