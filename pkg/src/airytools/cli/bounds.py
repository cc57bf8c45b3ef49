from typing import Optional

import typer
from typing_extensions import Annotated

from airytools import bounds
from airytools.cli.common import OutOption
from airytools.exception import handle_exceptions
from airytools.export import (
    write_csv,
    write_json
)

app = typer.Typer()


@app.command(name='laplace', help='Integral of exp(-alpha t^3 + beta t) against its closed-form bound')
@handle_exceptions()
def laplace(
    grid: Annotated[bool, typer.Option("--grid", help="Sweep a log grid over [1e-3, 10]^2")] = False,
    size: Annotated[int, typer.Option(help="Grid points per axis")] = 20,
    alpha: Annotated[Optional[float], typer.Option(help="Cubic coefficient")] = None,
    beta: Annotated[Optional[float], typer.Option(help="Linear coefficient")] = None,
    out: OutOption = None
):
    if grid:
        write_csv(bounds.LaplacePair.columns, bounds.laplace_grid(size), out)
        return
    if alpha is None or beta is None:
        raise typer.BadParameter("give --alpha and --beta, or --grid")
    write_json(bounds.laplace_pair(alpha, beta).as_dict(), out)


@app.command(name='ratio', help='Laplace-method ratio for alpha = 1/12, beta = omega')
@handle_exceptions()
def ratio(
    omega: Annotated[float, typer.Option(help="Frequency in [5, 50]")] = 30.0,
    out: OutOption = None
):
    write_json({"omega": omega, "ratio": bounds.laplace_asymptotic_ratio(omega)}, out)
