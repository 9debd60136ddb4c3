"""
Poisson centralizer toolkit
Command-line entry point: logging setup and command registration.
"""
import logging

import typer

from app.commands.algebra import bracket_command, charcoeff_command
from app.commands.centralizer import centralizer_command
from app.commands.leafrank import gap_command, rank_command, weyl_command
from app.commands.quantum import router as quantum_router
from app.commands.verify import router as verify_router
from app.config import settings

# Configure logging
logging.basicConfig(
    level=logging.DEBUG if settings.debug else settings.log_level,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)

app = typer.Typer(
    help="Exact verification of Poisson centralizers on matrix coordinate rings",
    no_args_is_help=True,
)

app.command("bracket")(bracket_command)
app.command("charcoeff")(charcoeff_command)
app.command("centralizer")(centralizer_command)
app.command("rank")(rank_command)
app.command("weyl")(weyl_command)
app.command("gap")(gap_command)
app.add_typer(verify_router, name="verify")
app.add_typer(quantum_router, name="quantum")


if __name__ == "__main__":
    app()
