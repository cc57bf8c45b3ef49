import sys
from pathlib import Path
from typing import Optional

import typer
from loguru import logger
from rich.console import Console
from rich.table import Table
from typing_extensions import Annotated

from airytools.airy import (
    ZeroKind,
    real_zeros
)
from airytools.cli import (
    airy,
    bounds,
    config,
    galerkin,
    halfline,
    quasimode,
    transmission
)
from airytools.cli.common import (
    OutOption,
    parse_boundary
)
from airytools.exception import handle_exceptions
from airytools.export import write_json
from airytools.geometry import (
    make_domain,
    parse_potential
)
from airytools.margin import margin as compute_margin

logger.remove()
logger.add(sys.stderr, level="ERROR")

console = Console()

app = typer.Typer()
app.add_typer(config.app, name='config', help="Inspect JSON configuration files")
app.add_typer(airy.app, name='airy', help="Airy function evaluation")
app.add_typer(halfline.app, name='halfline', help="Half-line complex Airy operator")
app.add_typer(transmission.app, name='transmission', help="Transmission problem on the real line")
app.add_typer(galerkin.app, name='galerkin', help="Galerkin cross-checks on a finite interval")
app.add_typer(quasimode.app, name='quasimode', help="Boundary quasimodes on a disk or annulus")
app.add_typer(bounds.app, name='bounds', help="Closed-form bounds")


@app.callback()
def root(
    ctx: typer.Context,
    config_file: Annotated[Optional[Path], typer.Option(
        "--config", help="JSON file of option defaults, nested by command", exists=True, dir_okay=False
    )] = None,
    verbose: Annotated[bool, typer.Option("--verbose", "-v", help="Log at DEBUG level")] = False
):
    if verbose:
        logger.remove()
        logger.add(sys.stderr, level="DEBUG")
    if config_file is not None:
        defaults = config.load_config(config_file)
        ctx.default_map = {**(ctx.default_map or {}), **defaults}
        logger.debug(f"option defaults loaded from {config_file}")


@app.command(name='zeros', help="Real zeros of Ai or Ai'")
@handle_exceptions()
def zeros(
    kind: Annotated[str, typer.Option(help="ai or aip")] = "ai",
    count: Annotated[int, typer.Option(help="How many zeros, at most 20")] = 5,
    table: Annotated[bool, typer.Option("--table", help="Print a table instead of JSON")] = False,
    out: OutOption = None
):
    found = real_zeros(ZeroKind.from_flag(kind), count)
    if not table:
        write_json([zero.as_dict() for zero in found], out)
        return
    zero_table = Table(show_header=True, header_style="bold magenta")
    zero_table.add_column("n", style="dim")
    zero_table.add_column(f"zero of {found[0].kind.label if found else kind}")
    for zero in found:
        zero_table.add_row(str(zero.n), f"{zero.value:.15f}")
    console.print(zero_table)


@app.command(name='margin', help='Semiclassical margin Lambda_m on a disk or annulus')
@handle_exceptions()
def margin(
    domain: Annotated[str, typer.Option(help="disk or annulus")] = "disk",
    radius: Annotated[float, typer.Option(help="Outer radius")] = 1.0,
    inner_radius: Annotated[Optional[float], typer.Option(help="Inner radius of the annulus")] = None,
    potential: Annotated[str, typer.Option(help="Polynomial potential in x1, x2")] = "x1",
    bc: Annotated[str, typer.Option(help="d, n, r or t")] = "d",
    kappa: Annotated[float, typer.Option(help="Robin or transmission coupling")] = 0.0,
    exterior: Annotated[str, typer.Option(help="Outer condition for transmission: d or n")] = "d",
    out: OutOption = None
):
    report = compute_margin(
        make_domain(domain, radius, inner_radius),
        parse_potential(potential),
        parse_boundary(bc),
        kappa,
        parse_boundary(exterior, "dn"),
    )
    write_json(report.as_dict(), out)


def main():
    app()


if __name__ == "__main__":
    main()
