import typer
from typing_extensions import Annotated

from airytools import halfline
from airytools.cli.common import (
    OutOption,
    parse_boundary
)
from airytools.exception import handle_exceptions
from airytools.export import (
    write_csv,
    write_json
)

app = typer.Typer()


@app.command(name='eig', help='Eigenvalue of -d^2/dx^2 + ijx on the half-line')
@handle_exceptions()
def eig(
    bc: Annotated[str, typer.Option(help="Boundary condition at x=0: d, n or r")] = "r",
    j: Annotated[float, typer.Option(help="Current magnitude j > 0")] = 1.0,
    kappa: Annotated[float, typer.Option(help="Robin coupling (ignored for d and n)")] = 0.0,
    n: Annotated[int, typer.Option("-n", "--n", help="Branch index")] = 1,
    out: OutOption = None
):
    problem = halfline.HalfLineProblem(j, kappa, parse_boundary(bc, "dnr"))
    lam = halfline.eigenvalue(problem, n)
    payload = {
        "bc": problem.bc_type.label,
        "j": problem.j,
        "kappa": problem.kappa,
        "y": problem.reduced_parameter,
        "n": n,
        "re": lam.real,
        "im": lam.imag,
        "dlambda_dj": halfline.dlambda_dj(problem, n),
    }
    write_json(payload, out)


@app.command(name='trajectory', help='Robin branch lambda(y) from the Neumann limit')
@handle_exceptions()
def trajectory(
    n: Annotated[int, typer.Option("-n", "--n", help="Branch index")] = 1,
    ymax: Annotated[float, typer.Option(help="Largest Robin parameter")] = 50.0,
    steps: Annotated[int, typer.Option(help="Grid points (at least 64)")] = 256,
    out: OutOption = None
):
    traj = halfline.trajectory(n, ymax, steps)
    write_csv(traj.columns, traj.table(), out)
