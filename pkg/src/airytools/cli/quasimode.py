from typing import Optional

import typer
from typing_extensions import Annotated

from airytools import margin as margin_module
from airytools.boundary import BoundaryType
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
from airytools.geometry import (
    BoundaryRole,
    make_domain,
    parse_potential
)
from airytools.quasimode import (
    DEFAULT_CUTOFF,
    MIN_LAYER_POINTS,
    GridSpec,
    quasimode_value,
    residual_scaling
)
from airytools.query import by_role

app = typer.Typer()

DomainOption = Annotated[str, typer.Option(help="disk or annulus")]
RadiusOption = Annotated[float, typer.Option(help="Outer radius")]
InnerOption = Annotated[Optional[float], typer.Option(help="Inner radius of the annulus")]
PotentialOption = Annotated[str, typer.Option(help="Polynomial potential in x1, x2")]
BoundaryOption = Annotated[str, typer.Option(help="d, n, r or t")]
KappaOption = Annotated[float, typer.Option(help="Robin or transmission coupling")]
PointOption = Annotated[Optional[int], typer.Option(help="Index into the perp points; first minimizer when omitted")]


def _select_point(domain: str, radius: float, inner_radius: Optional[float], potential: str, bc: str,
                  kappa: float, point: Optional[int]):
    bc_type = parse_boundary(bc)
    model = parse_potential(potential)
    report = margin_module.margin(make_domain(domain, radius, inner_radius), model, bc_type, kappa)
    if point is None:
        chosen = report.minimizers[0]
        if bc_type is BoundaryType.TRANSMISSION:
            chosen = report.get(by_role(lambda role: role is BoundaryRole.INTERFACE)) or chosen
    elif 0 <= point < len(report.points):
        chosen = report.points[point]
    else:
        raise typer.BadParameter(f"--point must lie in 0..{len(report.points) - 1}")
    # exterior points of a transmission domain carry the exterior condition
    if chosen.role is BoundaryRole.EXTERIOR and bc_type is BoundaryType.TRANSMISSION:
        bc_type = report.exterior
    return chosen, model, bc_type


@app.command(name='value', help='Two-term quasimode eigenvalue at a perp point')
@handle_exceptions()
def value(
    h: Annotated[float, typer.Option(help="Semiclassical parameter in (0, 0.5]")] = 0.01,
    domain: DomainOption = "disk",
    radius: RadiusOption = 1.0,
    inner_radius: InnerOption = None,
    potential: PotentialOption = "x1",
    bc: BoundaryOption = "d",
    kappa: KappaOption = 0.0,
    point: PointOption = None,
    out: OutOption = None
):
    chosen, _, bc_type = _select_point(domain, radius, inner_radius, potential, bc, kappa, point)
    write_json({"point": chosen.as_dict(), "h": h, "Lambda": quasimode_value(chosen, bc_type, kappa, h)}, out)


@app.command(name='residual', help='Residual of the boundary quasimode and its fitted power of h')
@handle_exceptions()
def residual(
    h_list: Annotated[str, typer.Option(help="Strictly decreasing values of h")] = "0.04,0.03,0.02,0.015,0.01",
    gamma: Annotated[float, typer.Option(help="Cutoff exponent in (0, 1/2)")] = DEFAULT_CUTOFF,
    layer_points: Annotated[int, typer.Option(help="Grid points per h^(2/3)")] = MIN_LAYER_POINTS,
    tangential_points: Annotated[int, typer.Option(help="Grid points per h^(1/2)")] = MIN_LAYER_POINTS,
    domain: DomainOption = "disk",
    radius: RadiusOption = 1.0,
    inner_radius: InnerOption = None,
    potential: PotentialOption = "x1",
    bc: BoundaryOption = "r",
    kappa: KappaOption = 1.0,
    point: PointOption = None,
    out: OutOption = None
):
    hs = parse_floats(h_list, name="--h-list")
    chosen, model, bc_type = _select_point(domain, radius, inner_radius, potential, bc, kappa, point)
    grid = GridSpec(layer_points, tangential_points)
    report = residual_scaling(chosen, model, bc_type, kappa, hs, grid, gamma)
    write_csv(report.columns, report.table(), out)
