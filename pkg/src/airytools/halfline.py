"""Complex Airy operator -d^2/dx^2 + ijx on the half-line.

Eigenvalues of the unit problem (j = 1) are stored in the upper half-plane:
the Dirichlet roots are |a_n| exp(i pi/3) and the characteristic functions
use the rotation w = exp(2i pi/3).  The eigenfunction is
u(x) = Ai(exp(i pi/6) x + w lam), so the Robin condition u'(0) = y u(0)
reads exp(i pi/6) Ai'(w lam) - y Ai(w lam) = 0.
"""
import cmath
import math
from typing import List

import numpy as np
from loguru import logger

from airytools.airy import (
    OMEGA,
    ZeroKind,
    eval_pair,
    real_zero
)
from airytools.boundary import (
    BoundaryKind,
    BoundaryType
)
from airytools.continuation import (
    NEWTON_TOLERANCE,
    BranchMarcher,
    Trajectory,
    branch_grid,
    collect,
    newton_polish
)
from airytools.exception import DomainError

ROTATION = cmath.exp(1j * math.pi / 3)
ROBIN_PHASE = cmath.exp(1j * math.pi / 6)
MAX_BRANCH = 10
MAX_Y = 1e4
LARGE_Y_SEED = 1e3


def characteristic(bc: BoundaryKind, lam: complex) -> complex:
    pair = eval_pair(OMEGA * lam)
    if bc.type is BoundaryType.DIRICHLET:
        return pair.ai
    if bc.type is BoundaryType.NEUMANN:
        return pair.ai_prime
    if bc.type is BoundaryType.ROBIN:
        return ROBIN_PHASE * pair.ai_prime - bc.y * pair.ai
    raise DomainError(f"{bc.type.label} has no half-line characteristic function")


def characteristic_derivative(bc: BoundaryKind, lam: complex) -> complex:
    argument = OMEGA * lam
    pair = eval_pair(argument)
    # Ai''(w) = w Ai(w)
    second = argument * pair.ai
    if bc.type is BoundaryType.DIRICHLET:
        return OMEGA * pair.ai_prime
    if bc.type is BoundaryType.NEUMANN:
        return OMEGA * second
    if bc.type is BoundaryType.ROBIN:
        return OMEGA * (ROBIN_PHASE * second - bc.y * pair.ai_prime)
    raise DomainError(f"{bc.type.label} has no half-line characteristic function")


def conjugate_characteristic(bc: BoundaryKind, lam: complex) -> complex:
    """Characteristic written with exp(-2i pi/3); it vanishes at the conjugates of the roots."""
    return characteristic(bc, lam.conjugate()).conjugate()


def robin_pole_locus(y: float, lam: complex) -> complex:
    # denominator of the Robin Green kernel, i w Ai'(w lam) + y Ai(w lam)
    pair = eval_pair(OMEGA * lam)
    return 1j * OMEGA * pair.ai_prime + y * pair.ai


def residual_tolerance(bc: BoundaryKind) -> float:
    return NEWTON_TOLERANCE * (1.0 + bc.y)


def polish(bc: BoundaryKind, guess: complex) -> complex:
    return newton_polish(
        lambda lam: characteristic(bc, lam),
        lambda lam: characteristic_derivative(bc, lam),
        guess,
        tol=residual_tolerance(bc),
    )


def robin_field(y: float, lam: complex) -> complex:
    # lam'(y) (lam + y^2) = i
    return 1j / (lam + y * y)


def neumann_limit(n: int) -> complex:
    return abs(real_zero(ZeroKind.OF_AI_PRIME, n).value) * ROTATION


def dirichlet_limit(n: int) -> complex:
    return abs(real_zero(ZeroKind.OF_AI, n).value) * ROTATION


def branch_gap(n: int) -> float:
    upper = abs(real_zero(ZeroKind.OF_AI_PRIME, n + 1).value) - abs(real_zero(ZeroKind.OF_AI, n).value)
    if n == 1:
        lower = abs(real_zero(ZeroKind.OF_AI_PRIME, 1).value)
    else:
        lower = abs(real_zero(ZeroKind.OF_AI_PRIME, n).value) - abs(real_zero(ZeroKind.OF_AI, n - 1).value)
    return 0.5 * min(upper, lower)


def _robin_marcher(n: int) -> BranchMarcher:
    return BranchMarcher(
        robin_field,
        lambda y, guess: polish(BoundaryKind.robin(y), guess),
        branch_gap(n),
    )


def _check_branch(n: int) -> None:
    if not 1 <= n <= MAX_BRANCH:
        raise DomainError(f"branch index n={n} outside 1..{MAX_BRANCH}")


def eigenvalue_unit(bc: BoundaryKind, n: int) -> complex:
    _check_branch(n)
    if bc.type is BoundaryType.DIRICHLET:
        return dirichlet_limit(n)
    if bc.type is BoundaryType.NEUMANN:
        return neumann_limit(n)
    if bc.type is not BoundaryType.ROBIN:
        raise DomainError(f"{bc.type.label} is not a half-line boundary condition")
    if bc.y > MAX_Y:
        raise DomainError(f"Robin parameter y={bc.y:g} above {MAX_Y:g}")
    if bc.y > LARGE_Y_SEED:
        seed = dirichlet_limit(n) - 1j / bc.y
        logger.debug(f"Robin y={bc.y:g} seeded from the Dirichlet limit")
        return polish(bc, seed)
    return _robin_marcher(n).follow(bc.y, neumann_limit(n))


def direct_root(bc: BoundaryKind, guess: complex) -> complex:
    return polish(bc, guess)


class HalfLineProblem:
    def __init__(self, j: float, kappa: float, bc_type: BoundaryType) -> None:
        if not j > 0:
            raise DomainError(f"current magnitude j must be positive, got {j!r}")
        if bc_type is BoundaryType.TRANSMISSION:
            raise DomainError("transmission problems live in airytools.transmission")
        if bc_type is BoundaryType.ROBIN and not kappa >= 0:
            raise DomainError(f"Robin coupling kappa must be nonnegative, got {kappa!r}")
        self.j = float(j)
        self.kappa = float(kappa) if bc_type is BoundaryType.ROBIN else 0.0
        self.bc_type = bc_type

    def __repr__(self) -> str:
        return f'HalfLineProblem(j={self.j!r}, kappa={self.kappa!r}, bc={self.bc_type.label})'

    @property
    def reduced_parameter(self) -> float:
        return self.kappa * self.j ** (-1.0 / 3.0)

    @property
    def unit_boundary(self) -> BoundaryKind:
        return BoundaryKind(self.bc_type, self.reduced_parameter)


def eigenvalue(problem: HalfLineProblem, n: int) -> complex:
    return problem.j ** (2.0 / 3.0) * eigenvalue_unit(problem.unit_boundary, n)


def dlambda_dj(problem: HalfLineProblem, n: int) -> complex:
    bc = problem.unit_boundary
    lam = eigenvalue_unit(bc, n)
    dlam_dy = robin_field(bc.y, lam) if bc.type is BoundaryType.ROBIN else 0j
    return (2.0 * lam - bc.y * dlam_dy) / (3.0 * problem.j ** (1.0 / 3.0))


def trajectory(n: int, y_max: float, steps: int = 256) -> Trajectory:
    _check_branch(n)
    if not 0 < y_max <= MAX_Y:
        raise DomainError(f"y_max={y_max!r} outside (0, {MAX_Y:g}]")
    if steps < 64:
        raise DomainError(f"steps={steps} below the minimum of 64")
    y_grid = branch_grid(y_max, steps)
    lambdas, derivatives = collect(_robin_marcher(n), robin_field, y_grid, neumann_limit(n))
    logger.info(f"Robin branch n={n} followed to y={y_max:g}: lambda={lambdas[-1]!r}")
    return Trajectory(BoundaryType.ROBIN, n, y_grid, lambdas, derivatives)


def delta_bound_check(traj: Trajectory) -> float:
    if traj.bc_kind is not BoundaryType.ROBIN:
        raise DomainError("the delta bound applies to Robin trajectories")
    return float(np.max(traj.log_derivative_ratio()))


def derivative_bound() -> float:
    # 1 / (2 sqrt(2) |a'_1|^{3/2})
    return 1.0 / (2.0 * math.sqrt(2.0) * abs(real_zero(ZeroKind.OF_AI_PRIME, 1).value) ** 1.5)


def component_derivatives(y: float, lam: complex) -> List[float]:
    u, v = lam.real, lam.imag
    denominator = (u + y * y) ** 2 + v * v
    return [v / denominator, (u + y * y) / denominator]
