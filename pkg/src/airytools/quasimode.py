"""Boundary quasimodes of -h^2 Laplace + iV near a perp point of a circle.

The trial function is U = chi(dist) w(rho) g(s): w is the first eigenfunction
of the one-dimensional model in the stretched normal variable
tau = j0^{1/3} rho / h^{2/3}, g the complex Gaussian in sigma = s / h^{1/2}.
Its residual under the exact polar Laplacian is measured on a finite
difference grid.
"""
import cmath
import math
from typing import (
    List,
    Optional,
    Sequence,
    Tuple
)

import numpy as np
from loguru import logger

from airytools import halfline, transmission
from airytools.airy import (
    OMEGA,
    SUPPORTED_RADIUS,
    eval_pair
)
from airytools.boundary import (
    BoundaryKind,
    BoundaryType
)
from airytools.exception import (
    DomainError,
    GridResolutionError,
    NondegeneracyError
)
from airytools.geometry import (
    BoundaryRole,
    PotentialModel
)
from airytools.margin import PerpPoint

MAX_H = 0.5
MAX_RESIDUAL_H = 0.1
MIN_LAYER_POINTS = 12
DEFAULT_CUTOFF = 0.4
PLUS_PHASE = cmath.exp(1j * math.pi / 6)


def _unit_eigenvalue(point: PerpPoint, bc: BoundaryType, kappa: float) -> complex:
    y = kappa * point.j0 ** (-1.0 / 3.0)
    if bc is BoundaryType.TRANSMISSION:
        return transmission.eigenvalue_unit(y, 1)
    return halfline.eigenvalue_unit(BoundaryKind(bc, y), 1)


def _check_pairing(point: PerpPoint, bc: BoundaryType) -> None:
    interface = point.role is BoundaryRole.INTERFACE
    if interface != (bc is BoundaryType.TRANSMISSION):
        raise DomainError(f"{bc.label} condition does not apply to a {point.role.tag} point")
    if not point.nondegenerate:
        raise NondegeneracyError(f"no tangential Gaussian at the degenerate point {point!r}")


def quasimode_value(point: PerpPoint, bc: BoundaryType, kappa: float, h: float) -> complex:
    if not 0 < h <= MAX_H:
        raise DomainError(f"semiclassical parameter h={h!r} outside (0, {MAX_H:g}]")
    _check_pairing(point, bc)
    lam = _unit_eigenvalue(point, bc, kappa)
    if point.conjugated:
        lam = lam.conjugate()
    return 1j * point.value + h ** (2.0 / 3.0) * point.j0 ** (2.0 / 3.0) * lam + h * point.mu1


def cutoff(r: np.ndarray, radius: float) -> np.ndarray:
    """Smooth step equal to 1 on [0, radius] and 0 beyond 2 radius."""
    t = np.clip((np.asarray(r, dtype=float) - radius) / radius, 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        rise = np.where(t > 0, np.exp(-1.0 / np.where(t > 0, t, 1.0)), 0.0)
        fall = np.where(t < 1, np.exp(-1.0 / np.where(t < 1, 1.0 - t, 1.0)), 0.0)
    return 1.0 - rise / (rise + fall)


class GridSpec:
    def __init__(
        self,
        layer_points: int = MIN_LAYER_POINTS,
        tangential_points: int = MIN_LAYER_POINTS,
        normal_step: Optional[float] = None
    ) -> None:
        if tangential_points < 4:
            raise DomainError(f"need at least 4 tangential points per h^(1/2), got {tangential_points}")
        self.layer_points = layer_points
        self.tangential_points = tangential_points
        self.normal_step = normal_step

    def __repr__(self) -> str:
        return (f'GridSpec(layer_points={self.layer_points}, tangential_points={self.tangential_points}, '
                f'normal_step={self.normal_step!r})')

    def refined(self) -> "GridSpec":
        step = None if self.normal_step is None else 0.5 * self.normal_step
        return GridSpec(2 * self.layer_points, 2 * self.tangential_points, step)

    def steps(self, h: float):
        layer = h ** (2.0 / 3.0)
        points = self.layer_points if self.normal_step is None else layer / self.normal_step
        if points < MIN_LAYER_POINTS:
            raise GridResolutionError(
                f"boundary layer h^(2/3)={layer:.3e} resolved by {points:.1f} < {MIN_LAYER_POINTS} points"
            )
        return layer / points, math.sqrt(h) / self.tangential_points


class QuasimodeReport:
    columns = ("h", "re_Lambda", "im_Lambda", "residual", "running_slope")

    def __init__(
        self,
        h_list: Sequence[float],
        lambda_values: Sequence[complex],
        residual_norms: Sequence[float],
        gamma: float
    ) -> None:
        self.h_list = np.asarray(h_list, dtype=float)
        self.lambda_values = np.asarray(lambda_values, dtype=complex)
        self.residual_norms = np.asarray(residual_norms, dtype=float)
        self.gamma = gamma

    def __repr__(self) -> str:
        return f'QuasimodeReport(points={len(self.h_list)}, gamma={self.gamma!r}, slope={self.fitted_slope:.4f})'

    @property
    def fitted_slope(self) -> float:
        return float(np.polyfit(np.log(self.h_list), np.log(self.residual_norms), 1)[0])

    def running_slopes(self) -> np.ndarray:
        slopes = [math.nan]
        for k in range(2, len(self.h_list) + 1):
            slopes.append(np.polyfit(np.log(self.h_list[:k]), np.log(self.residual_norms[:k]), 1)[0])
        return np.array(slopes)

    def table(self) -> np.ndarray:
        return np.column_stack([
            self.h_list,
            self.lambda_values.real,
            self.lambda_values.imag,
            self.residual_norms,
            self.running_slopes(),
        ])

    def as_dict(self) -> dict:
        return {
            "h": self.h_list.tolist(),
            "Lambda": [[value.real, value.imag] for value in self.lambda_values],
            "residual": self.residual_norms.tolist(),
            "fitted_slope": self.fitted_slope,
            "gamma": self.gamma,
        }


def _airy_profile(argument_shift: complex, phase: complex, tau: np.ndarray, mask: np.ndarray) -> np.ndarray:
    values = np.zeros(tau.shape, dtype=complex)
    for index in np.flatnonzero(mask):
        values[index] = eval_pair(phase * tau[index] + argument_shift).ai
    return values


def _potential_grid(potential: PotentialModel, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    flat = [potential.value(np.array([a, b])) for a, b in zip(x.ravel(), y.ravel())]
    return np.array(flat, dtype=float).reshape(x.shape)


class _PolarStencil:
    """Grid around the perp point: rows are normal offsets, columns tangential offsets."""
    def __init__(self, point: PerpPoint, h: float, gamma: float, grid: GridSpec) -> None:
        self.point = point
        self.h = h
        self.layer = h ** (2.0 / 3.0)
        self.support = h ** gamma
        self.dr, self.ds = grid.steps(h)
        curve = point.curve
        self.radius = curve.radius
        reach_rho = 2.0 * self.support + 4.0 * self.dr
        reach_s = 2.0 * self.support + 4.0 * self.ds
        if reach_rho >= self.radius:
            raise DomainError(f"cutoff support {2.0 * self.support:.3g} exceeds the radius {self.radius:g}")
        tau_max = 2.0 * self.support * point.j0 ** (1.0 / 3.0) / self.layer
        if tau_max + 2.0 > SUPPORTED_RADIUS:
            raise DomainError(f"cutoff radius reaches tau={tau_max:.1f}, beyond the Airy evaluator range")
        self.rows = int(math.ceil(reach_rho / self.dr))
        columns = int(math.ceil(reach_s / self.ds))
        # one ghost column on each side
        self.s = np.arange(-columns - 1, columns + 2) * self.ds
        # r = R + direction * rho
        if point.role is BoundaryRole.INTERFACE:
            self.direction = curve.normal_sign
        else:
            self.direction = -curve.normal_sign
        self.theta0 = curve.angle(point.s)
        self.dtheta = self.ds / self.radius

    def tangential(self) -> np.ndarray:
        sigma = self.s / math.sqrt(self.h)
        return np.exp(-0.5 * self.point.mu1 * sigma ** 2)

    def residual(self, rho: np.ndarray, field: np.ndarray, ghost: np.ndarray, lam: complex,
                 potential: PotentialModel, weights: np.ndarray) -> Tuple[float, float]:
        """Residual of the interior rows of `field` (shape rows x columns).

        `ghost` is the row one step beyond rho[0] towards negative rho.
        """
        padded = np.vstack([ghost[None, :], field])
        inner = padded[1:-1, 1:-1]
        forward = padded[2:, 1:-1]
        backward = padded[:-2, 1:-1]
        r = self.radius + self.direction * rho[:-1, None]
        u_rr = (forward - 2.0 * inner + backward) / self.dr ** 2
        u_r = self.direction * (forward - backward) / (2.0 * self.dr)
        u_tt = (padded[1:-1, 2:] - 2.0 * inner + padded[1:-1, :-2]) / self.dtheta ** 2
        laplacian = u_rr + u_r / r + u_tt / r ** 2

        theta = self.theta0 + self.s[1:-1] / self.radius
        center = self.point.curve.center
        x = center[0] + r * np.cos(theta)[None, :]
        y = center[1] + r * np.sin(theta)[None, :]
        potential_values = _potential_grid(potential, x, y)

        defect = -self.h ** 2 * laplacian + 1j * potential_values * inner - lam * inner
        area = (r * self.dr * self.dtheta) * weights[:-1, None]
        return float(np.sum(area * np.abs(defect) ** 2)), float(np.sum(area * np.abs(inner) ** 2))


def _exterior_residual(stencil: _PolarStencil, bc: BoundaryType, y: float, lam_unit: complex,
                       lam: complex, potential: PotentialModel) -> float:
    point = stencil.point
    scale = point.j0 ** (1.0 / 3.0) / stencil.layer
    rho = np.arange(stencil.rows + 2) * stencil.dr
    inside = rho < 2.0 * stencil.support
    profile = _airy_profile(OMEGA * lam_unit, PLUS_PHASE, scale * rho, inside)
    if point.conjugated:
        profile = profile.conj()
    if bc is BoundaryType.DIRICHLET:
        profile[0] = 0.0
    chi = cutoff(np.hypot(rho[:, None], stencil.s[None, :]), stencil.support)
    field = chi * profile[:, None] * stencil.tangential()[None, :]

    # d/drho U = y j0^(1/3) h^(-2/3) U at rho = 0
    slope = (y if bc is BoundaryType.ROBIN else 0.0) * scale
    ghost = field[1] - 2.0 * stencil.dr * slope * field[0]
    weights = np.ones(len(rho))
    if bc is BoundaryType.DIRICHLET:
        # boundary row is known; start at rho = dr
        numerator, denominator = stencil.residual(rho[1:], field[1:], field[0], lam, potential, weights[1:])
    else:
        weights[0] = 0.5
        numerator, denominator = stencil.residual(rho, field, ghost, lam, potential, weights)
    return math.sqrt(numerator / denominator)


def _interface_residual(stencil: _PolarStencil, y: float, lam_unit: complex, lam: complex,
                        potential: PotentialModel) -> float:
    point = stencil.point
    scale = point.j0 ** (1.0 / 3.0) / stencil.layer
    rho = np.arange(stencil.rows + 2) * stencil.dr
    inside = rho < 2.0 * stencil.support
    tau = scale * rho
    plus = np.zeros(len(rho), dtype=complex)
    minus = np.zeros(len(rho), dtype=complex)
    plus[inside] = transmission.eigenfunction_values(y, lam_unit, tau[inside])
    # minus side sampled at -rho, with its own one-sided value at rho = 0
    minus[inside] = transmission.eigenfunction_values(y, lam_unit, -np.maximum(tau[inside], np.finfo(float).tiny))
    if point.conjugated:
        plus, minus = plus.conj(), minus.conj()
    chi = cutoff(np.hypot(rho[:, None], stencil.s[None, :]), stencil.support)
    gauss = stencil.tangential()[None, :]
    plus_field = chi * plus[:, None] * gauss
    minus_field = chi * minus[:, None] * gauss

    # u'_+(0) = u'_-(0) = y j0^(1/3) h^(-2/3) (u_+(0) - u_-(0))
    jump = y * scale * (plus_field[0] - minus_field[0])
    plus_ghost = plus_field[1] - 2.0 * stencil.dr * jump
    minus_ghost = minus_field[1] + 2.0 * stencil.dr * jump
    weights = np.ones(len(rho))
    weights[0] = 0.5

    numerator, denominator = stencil.residual(rho, plus_field, plus_ghost, lam, potential, weights)
    direction = stencil.direction
    stencil.direction = -direction
    try:
        minus_numerator, minus_denominator = stencil.residual(
            rho, minus_field, minus_ghost, lam, potential, weights
        )
    finally:
        stencil.direction = direction
    return math.sqrt((numerator + minus_numerator) / (denominator + minus_denominator))


def quasimode_residual(
    point: PerpPoint,
    potential: PotentialModel,
    bc: BoundaryType,
    kappa: float,
    h: float,
    gamma: float = DEFAULT_CUTOFF,
    grid: Optional[GridSpec] = None,
    lambda_shift: complex = 0.0
) -> float:
    """Relative residual ||(A_h - Lambda) U|| / ||U|| of the boundary quasimode."""
    if not 0 < gamma < 0.5:
        raise DomainError(f"cutoff exponent gamma={gamma!r} outside (0, 1/2)")
    grid = grid or GridSpec()
    _check_pairing(point, bc)
    y = kappa * point.j0 ** (-1.0 / 3.0)
    lam_unit = _unit_eigenvalue(point, bc, kappa)
    lam = quasimode_value(point, bc, kappa, h) + lambda_shift
    stencil = _PolarStencil(point, h, gamma, grid)
    if bc is BoundaryType.TRANSMISSION:
        value = _interface_residual(stencil, y, lam_unit, lam, potential)
    else:
        value = _exterior_residual(stencil, bc, y, lam_unit, lam, potential)
    logger.debug(f"quasimode residual at h={h:g}: {value:.4e} ({grid!r}, gamma={gamma:g})")
    return value


def residual_scaling(
    point: PerpPoint,
    potential: PotentialModel,
    bc: BoundaryType,
    kappa: float,
    h_list: Sequence[float],
    grid: Optional[GridSpec] = None,
    gamma: float = DEFAULT_CUTOFF,
    lambda_shift: float = 0.0
) -> QuasimodeReport:
    """Residual norms over h_list and the fitted exponent; lambda_shift is added as lambda_shift * h."""
    h_values: List[float] = [float(h) for h in h_list]
    if len(h_values) < 2:
        raise DomainError("need at least two values of h to fit a slope")
    if any(not 0 < h <= MAX_RESIDUAL_H for h in h_values):
        raise DomainError(f"residual scaling needs h in (0, {MAX_RESIDUAL_H:g}]")
    if any(later >= earlier for earlier, later in zip(h_values, h_values[1:])):
        raise DomainError("h_list must be strictly decreasing")

    values, residuals = [], []
    for h in h_values:
        values.append(quasimode_value(point, bc, kappa, h) + lambda_shift * h)
        residuals.append(quasimode_residual(point, potential, bc, kappa, h, gamma, grid, lambda_shift * h))
    report = QuasimodeReport(h_values, values, residuals, gamma)
    logger.info(f"{bc.label} quasimode residual slope {report.fitted_slope:.4f} over h={h_values}")
    return report
