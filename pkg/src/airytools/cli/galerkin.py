import numpy as np
import typer
from typing_extensions import Annotated

from airytools import bounds, galerkin, halfline
from airytools.boundary import (
    BoundaryKind,
    BoundaryType
)
from airytools.cli.common import (
    OutOption,
    parse_boundary,
    parse_floats
)
from airytools.exception import handle_exceptions
from airytools.export import (
    write_csv,
    write_json
)

app = typer.Typer()

LengthOption = Annotated[float, typer.Option("--L", help="Interval length")]
BasisOption = Annotated[int, typer.Option("--N", help="Number of basis functions")]


def _config(length: float, basis: int, j: float, kappa: float, bc: str) -> galerkin.GalerkinConfig:
    bc_type = parse_boundary(bc, "dnr")
    y = kappa if bc_type is BoundaryType.ROBIN else 0.0
    return galerkin.GalerkinConfig(length, basis, j, BoundaryKind(bc_type, y))


@app.command(name='leftmost', help='Leftmost Galerkin eigenvalue on [0, L] against the half-line value')
@handle_exceptions()
def leftmost(
    length: LengthOption = 10.0,
    basis: BasisOption = 200,
    j: Annotated[float, typer.Option(help="Current magnitude j > 0")] = 1.0,
    kappa: Annotated[float, typer.Option(help="Robin coupling")] = 1.0,
    bc: Annotated[str, typer.Option(help="Condition at x=0: d, n or r")] = "r",
    out: OutOption = None
):
    config = _config(length, basis, j, kappa, bc)
    lam = galerkin.leftmost_eigenvalue(config)
    reference = halfline.eigenvalue(halfline.HalfLineProblem(j, kappa, config.left.type), 1)
    write_json({
        "L": length,
        "N": basis,
        "j": j,
        "kappa": kappa,
        "bc": config.left.type.label,
        "galerkin": lam,
        "halfline": reference,
        "difference": abs(lam - reference),
    }, out)


@app.command(name='spectrum', help='All Galerkin eigenvalues with their backward residuals')
@handle_exceptions()
def spectrum(
    length: LengthOption = 10.0,
    basis: BasisOption = 200,
    j: Annotated[float, typer.Option(help="Current magnitude")] = 1.0,
    kappa: Annotated[float, typer.Option(help="Robin coupling")] = 1.0,
    bc: Annotated[str, typer.Option(help="Condition at x=0: d, n or r")] = "r",
    csv: Annotated[bool, typer.Option("--csv", help="Write CSV instead of JSON")] = False,
    out: OutOption = None
):
    result = galerkin.eigensolve(galerkin.assemble(_config(length, basis, j, kappa, bc)))
    if csv:
        write_csv(result.columns, result.table(), out)
    else:
        write_json(result.as_dict(), out)


@app.command(name='resolvent', help='Resolvent norm along the vertical line Re z = gamma')
@handle_exceptions()
def resolvent(
    gamma: Annotated[float, typer.Option(help="Real part of the scan line")] = 0.0,
    nu_range: Annotated[str, typer.Option(help="Imaginary range as A,B")] = "-10,10",
    samples: Annotated[int, typer.Option(help="Scan points")] = galerkin.SCAN_SAMPLES,
    length: LengthOption = 10.0,
    basis: BasisOption = 200,
    j: Annotated[float, typer.Option(help="Current magnitude")] = 1.0,
    kappa: Annotated[float, typer.Option(help="Robin coupling")] = 1.0,
    bc: Annotated[str, typer.Option(help="Condition at x=0: d, n or r")] = "r",
    out: OutOption = None
):
    nu_min, nu_max = parse_floats(nu_range, 2, "--nu-range")
    matrix = galerkin.assemble(_config(length, basis, j, kappa, bc))
    scan = galerkin.resolvent_scan(matrix, gamma, nu_min, nu_max, samples)
    write_csv(scan.columns, scan.table(), out)


@app.command(name='semigroup', help='Norm of exp(-tA) for the whole-line surrogate against exp(-t^3/12)')
@handle_exceptions()
def semigroup(
    t_max: Annotated[float, typer.Option(help="Final time")] = 3.0,
    points: Annotated[int, typer.Option(help="Number of time samples")] = 31,
    length: Annotated[float, typer.Option("--L", help="Half width of the box [-L, L]")] = 12.0,
    basis: BasisOption = 400,
    out: OutOption = None
):
    matrix = galerkin.whole_line_surrogate(length, basis)
    times = np.linspace(0.0, t_max, points)
    norms = galerkin.semigroup_profile(matrix, times)
    bound = np.array([bounds.semigroup_whole_line_bound(float(t)) for t in times])
    write_csv(("t", "norm", "bound"), np.column_stack([times, norms, bound]), out)
