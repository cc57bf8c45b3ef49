import typer
from typing_extensions import Annotated

from airytools import transmission
from airytools.cli.common import (
    OutOption,
    parse_floats
)
from airytools.exception import handle_exceptions
from airytools.export import (
    write_csv,
    write_json
)

app = typer.Typer()


@app.command(name='trajectory', help='Transmission branch lambda(y) from the Neumann start')
@handle_exceptions()
def trajectory(
    n: Annotated[int, typer.Option("-n", "--n", help="Pair index")] = 1,
    ymax: Annotated[float, typer.Option(help="Largest transmission parameter")] = 100.0,
    steps: Annotated[int, typer.Option(help="Grid points")] = 256,
    out: OutOption = None
):
    branch = transmission.pair_unit(n, ymax, steps)
    write_csv(branch.columns, branch.table(), out)


@app.command(name='count', help='Count roots of the transmission function inside a rectangle')
@handle_exceptions()
def count(
    y: Annotated[float, typer.Option("--y", help="Transmission parameter")] = 0.0,
    rect: Annotated[str, typer.Option(help="Rectangle as RE_MIN,RE_MAX,IM_MIN,IM_MAX")] = "0,2,-5,5",
    out: OutOption = None
):
    rectangle = transmission.Rectangle(*parse_floats(rect, 4, "--rect"))
    write_json(transmission.count_zeros(y, rectangle).as_dict(), out)
