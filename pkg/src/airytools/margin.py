import cmath
import math
from functools import lru_cache
from typing import (
    List,
    Optional,
    Union
)

import numpy as np
from loguru import logger
from scipy.optimize import brentq

from airytools import halfline, transmission
from airytools.boundary import BoundaryType
from airytools.exception import (
    DegenerateZeroError,
    DomainError,
    EmptyPerpSetError,
    NondegeneracyError
)
from airytools.geometry import (
    Annulus,
    BoundaryRole,
    Circle,
    Disk,
    PotentialModel
)
from airytools.query import (
    QueryMixin,
    by_role
)

SCAN_POINTS = 2048
SCAN_OFFSET = 0.37
TANGENTIAL_TOLERANCE = 1e-10
DEGENERACY_THRESHOLD = 1e-10
MERGE_DISTANCE = 1e-9
VALUE_TOLERANCE = 1e-10

Domain = Union[Disk, Annulus]


def tangential_derivative(curve: Circle, potential: PotentialModel, s: float) -> float:
    return float(potential.gradient(curve.point(s)) @ curve.tangent(s))


def restricted_hessian(curve: Circle, potential: PotentialModel, s: float) -> List[float]:
    # d^2/ds^2 V(gamma(s)) = <D^2V gamma', gamma'> + <grad V, gamma''>
    point = curve.point(s)
    tangent = curve.tangent(s)
    second = tangent @ potential.hessian(point) @ tangent + potential.gradient(point) @ curve.curvature_vector(s)
    return [float(second)]


def tangential_frequency(alpha: List[float]) -> complex:
    """Ground energy of -d^2/ds^2 + i (alpha/2) s^2, summed over the tangential directions."""
    return sum(math.sqrt(abs(a) / 2.0) * cmath.exp(1j * math.copysign(math.pi / 4.0, a)) for a in alpha)


class PerpPoint:
    def __init__(
        self,
        curve: Circle,
        role: BoundaryRole,
        s: float,
        potential: PotentialModel
    ) -> None:
        self.curve = curve
        self.role = role
        self.s = s
        self.location = curve.point(s)
        gradient = potential.gradient(self.location)
        self.value = float(potential.value(self.location))
        self.j0 = float(np.linalg.norm(gradient))
        self.normal_derivative = float(gradient @ curve.normal(s))
        self.normal_sign = int(np.sign(self.normal_derivative))
        self.tangential_residual = abs(float(gradient @ curve.tangent(s)))
        self.alpha = restricted_hessian(curve, potential, s)
        self.nondegenerate = all(abs(a) > DEGENERACY_THRESHOLD for a in self.alpha)
        self.mu1 = tangential_frequency(self.alpha)

    def __repr__(self) -> str:
        return (f'PerpPoint(x0=({self.location[0]:.6g}, {self.location[1]:.6g}), role={self.role.tag}, '
                f'j0={self.j0:.6g}, alpha={self.alpha[0]:.6g})')

    @property
    def conjugated(self) -> bool:
        # g = -dV/dnu on the exterior, +dV/dnu on the interface
        g = self.normal_derivative if self.role is BoundaryRole.INTERFACE else -self.normal_derivative
        return g < 0

    def as_dict(self) -> dict:
        return {
            "x0": [float(self.location[0]), float(self.location[1])],
            "s": self.s,
            "role": self.role.tag,
            "j0": self.j0,
            "normal_sign": self.normal_sign,
            "alpha": list(self.alpha),
            "nondegenerate": self.nondegenerate,
            "mu1": [self.mu1.real, self.mu1.imag],
        }


def _polish_zero(curve: Circle, potential: PotentialModel, low: float, high: float) -> float:
    s = brentq(lambda t: tangential_derivative(curve, potential, t), low, high, xtol=1e-14, rtol=1e-15)
    for _ in range(3):
        value = tangential_derivative(curve, potential, s)
        if abs(value) <= TANGENTIAL_TOLERANCE * 1e-3:
            break
        slope = restricted_hessian(curve, potential, s)[0]
        if slope == 0:
            break
        step = value / slope
        if abs(step) > high - low:
            break
        s -= step
    return s


def find_perp_points(
    curve: Circle,
    potential: PotentialModel,
    role: BoundaryRole = BoundaryRole.EXTERIOR,
    strict: bool = True
) -> List[PerpPoint]:
    length = curve.length
    samples = (np.arange(SCAN_POINTS + 1) + SCAN_OFFSET) * length / SCAN_POINTS
    gradients = [potential.gradient(curve.point(s)) for s in samples]
    if min(np.linalg.norm(g) for g in gradients) == 0:
        raise DomainError(f"grad V vanishes on {curve!r}")
    values = np.array([g @ curve.tangent(s) for g, s in zip(gradients, samples)])

    roots: List[float] = []
    for k in range(SCAN_POINTS):
        low, high = samples[k], samples[k + 1]
        if values[k] == 0:
            s = float(low)
        elif values[k] * values[k + 1] < 0:
            s = _polish_zero(curve, potential, float(low), float(high))
        else:
            continue
        s = s % length
        if length - s < MERGE_DISTANCE:
            s = 0.0
        if all(min(abs(s - r), length - abs(s - r)) > MERGE_DISTANCE for r in roots):
            roots.append(s)

    points = []
    for s in sorted(roots):
        point = PerpPoint(curve, role, s, potential)
        if point.tangential_residual > TANGENTIAL_TOLERANCE * max(1.0, point.j0):
            raise DegenerateZeroError(
                f"tangential derivative {point.tangential_residual:.2e} did not settle at s={s:.12g} on {curve!r}"
            )
        if strict and not point.nondegenerate:
            raise DegenerateZeroError(f"zero of <grad V, gamma'> at s={s:.12g} on {curve!r} is not simple")
        if not point.nondegenerate:
            logger.warning(f"degenerate perp point {point!r}")
        points.append(point)
    logger.debug(f"{len(points)} perp points on {curve!r}")
    return points


@lru_cache(maxsize=256)
def model_eigenvalue(bc_type: BoundaryType, j0: float, kappa: float) -> complex:
    """First eigenvalue of the half-line or transmission model with current j0."""
    if bc_type is BoundaryType.TRANSMISSION:
        return transmission.eigenvalue(j0, kappa, 1)
    return halfline.eigenvalue(halfline.HalfLineProblem(j0, kappa, bc_type), 1)


def point_eigenvalue(point: PerpPoint, bc_type: BoundaryType, kappa: float) -> complex:
    lam = model_eigenvalue(bc_type, point.j0, kappa)
    return lam.conjugate() if point.conjugated else lam


class PerpPointSet(QueryMixin[PerpPoint]):
    def __init__(self, points: List[PerpPoint]) -> None:
        self.points = points

    def __repr__(self) -> str:
        return f'PerpPointSet(size={len(self.points)})'

    def __len__(self) -> int:
        return len(self.points)

    def _list_all(self) -> List[PerpPoint]:
        return list(self.points)


class MarginReport(PerpPointSet):
    def __init__(
        self,
        bc: BoundaryType,
        kappa: float,
        points: List[PerpPoint],
        point_values: List[float],
        lambda_m: float,
        minimizers: List[PerpPoint],
        exterior: Optional[BoundaryType] = None
    ) -> None:
        super().__init__(points)
        self.bc = bc
        self.kappa = kappa
        self.point_values = point_values
        self.lambda_m = lambda_m
        self.minimizers = minimizers
        self.exterior = exterior

    def __repr__(self) -> str:
        return f'MarginReport(bc={self.bc.label}, kappa={self.kappa!r}, Lambda_m={self.lambda_m:.12g})'

    @property
    def attained_on(self) -> List[str]:
        return sorted({point.role.tag for point in self.minimizers})

    def as_dict(self) -> dict:
        return {
            "bc": self.bc.label,
            "exterior": self.exterior.label if self.exterior else None,
            "kappa": self.kappa,
            "Lambda_m": self.lambda_m,
            "attained_on": self.attained_on,
            "points": [
                dict(point.as_dict(), re_lambda=value)
                for point, value in zip(self.points, self.point_values)
            ],
            "minimizers": [point.as_dict() for point in self.minimizers],
        }


def collect_perp_points(domain: Domain, potential: PotentialModel, bc: BoundaryType) -> PerpPointSet:
    points: List[PerpPoint] = []
    for piece in domain.pieces(bc):
        points.extend(find_perp_points(piece.curve, potential, piece.role, strict=False))
    if not points:
        raise EmptyPerpSetError(f"grad V is nowhere normal to the boundary of {domain!r}")
    return PerpPointSet(points)


def _check_minimizers(minimizers: List[PerpPoint]) -> None:
    for point in minimizers:
        if not point.nondegenerate:
            raise NondegeneracyError(f"restricted Hessian vanishes at the minimizer {point!r}")


def margin(
    domain: Domain,
    potential: PotentialModel,
    bc: BoundaryType,
    kappa: float = 0.0,
    exterior: BoundaryType = BoundaryType.DIRICHLET
) -> MarginReport:
    if kappa < 0 or not math.isfinite(kappa):
        raise DomainError(f"coupling kappa must be a finite nonnegative real, got {kappa!r}")
    perp_set = collect_perp_points(domain, potential, bc)
    points = perp_set.points

    if bc is not BoundaryType.TRANSMISSION:
        kappa = kappa if bc is BoundaryType.ROBIN else 0.0
        # Re lambda(j) increases with j
        minimizers = perp_set.lowest(lambda point: point.j0)
        _check_minimizers(minimizers)
        j_m = minimizers[0].j0
        lambda_m = model_eigenvalue(bc, j_m, kappa).real
        values = [point_eigenvalue(point, bc, kappa).real for point in points]
        logger.info(f"{bc.label} margin: j_m={j_m:.12g}, Lambda_m={lambda_m:.12g}")
        return MarginReport(bc, kappa, points, values, lambda_m, minimizers)

    if exterior not in (BoundaryType.DIRICHLET, BoundaryType.NEUMANN):
        raise DomainError(f"exterior condition for transmission must be Dirichlet or Neumann, got {exterior.label}")
    values = []
    for point in points:
        if point.role is BoundaryRole.INTERFACE:
            values.append(point_eigenvalue(point, BoundaryType.TRANSMISSION, kappa).real)
        else:
            values.append(point_eigenvalue(point, exterior, 0.0).real)
    lambda_m = min(values)
    scale = max(1.0, abs(lambda_m))
    minimizers = [
        point for point, value in zip(points, values)
        if value <= lambda_m + VALUE_TOLERANCE * scale
    ]
    _check_minimizers(minimizers)
    report = MarginReport(bc, kappa, points, values, lambda_m, minimizers, exterior)
    interface = report.list(by_role(lambda role: role is BoundaryRole.INTERFACE))
    logger.info(f"transmission margin over {len(interface)} interface points: Lambda_m={lambda_m:.12g} "
                f"attained on {report.attained_on}")
    return report
