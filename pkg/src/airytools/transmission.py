"""Transmission realization of -d^2/dx^2 + ijx on the real line with a
semi-permeable barrier at the origin: u'_+(0) = u'_-(0) = y (u_+(0) - u_-(0)).

Roots of F(y, lam) = 2 pi Ai'(w lam) Ai'(conj(w) lam) + y come in conjugate
pairs; branches are labelled by Re at y = 0 and carry the Im > 0 member.
"""
import cmath
import math
from typing import (
    Callable,
    List,
    Optional,
    Tuple
)

import numpy as np
from loguru import logger
from tenacity import (
    retry,
    retry_if_exception_type,
    stop_after_attempt
)

from airytools.airy import (
    OMEGA,
    OMEGA_BAR,
    ZeroKind,
    eval_pair,
    real_zero
)
from airytools.boundary import BoundaryType
from airytools.continuation import (
    NEWTON_TOLERANCE,
    BranchMarcher,
    Trajectory,
    branch_grid,
    collect,
    newton_polish
)
from airytools.exception import (
    ContourOnZeroError,
    DegenerateScaleError,
    DomainError,
    SimplicityError
)
from airytools.halfline import ROTATION

TWO_PI = 2.0 * math.pi
MAX_PAIR = 5
MAX_Y = 1e3
SIMPLICITY_THRESHOLD = 1e-8
BASE_POINTS = 512
MAX_POINTS = 8192
WINDING_TOLERANCE = 0.05
CONTOUR_CLEARANCE = 1e-3
NUDGE = 1e-2
MAX_NUDGES = 3

PLUS_PHASE = cmath.exp(1j * math.pi / 6)
MINUS_PHASE = cmath.exp(5j * math.pi / 6)


def _factors(lam: complex):
    return eval_pair(OMEGA * lam), eval_pair(OMEGA_BAR * lam)


def char_T(y: float, lam: complex) -> complex:
    plus, minus = _factors(lam)
    return TWO_PI * plus.ai_prime * minus.ai_prime + y


def char_T_derivative(lam: complex) -> complex:
    return _value_and_derivative(0.0, lam)[1]


def _value_and_derivative(y: float, lam: complex) -> Tuple[complex, complex]:
    plus, minus = _factors(lam)
    # Ai''(w) = w Ai(w)
    plus_second = OMEGA * lam * plus.ai
    minus_second = OMEGA_BAR * lam * minus.ai
    value = TWO_PI * plus.ai_prime * minus.ai_prime + y
    derivative = TWO_PI * (OMEGA * plus_second * minus.ai_prime + OMEGA_BAR * plus.ai_prime * minus_second)
    return value, derivative


def transmission_field(y: float, lam: complex) -> complex:
    return -1.0 / char_T_derivative(lam)


def polish(y: float, guess: complex) -> complex:
    return newton_polish(
        lambda lam: char_T(y, lam),
        char_T_derivative,
        guess,
        tol=NEWTON_TOLERANCE * (1.0 + y),
    )


def neumann_start(n: int) -> complex:
    return abs(real_zero(ZeroKind.OF_AI_PRIME, n).value) * ROTATION


def pair_gap(n: int) -> float:
    here = abs(real_zero(ZeroKind.OF_AI_PRIME, n).value)
    after = abs(real_zero(ZeroKind.OF_AI_PRIME, n + 1).value)
    return 0.5 * min(after - here, math.sqrt(3.0) * here)


def _marcher(n: int) -> BranchMarcher:
    return BranchMarcher(transmission_field, polish, pair_gap(n))


def _check_pair(n: int) -> None:
    if not 1 <= n <= MAX_PAIR:
        raise DomainError(f"pair index n={n} outside 1..{MAX_PAIR}")


def simplicity_check(
    y: float,
    lam: complex,
    derivative: Optional[Callable[[complex], complex]] = None
) -> float:
    if derivative is None:
        derivative = char_T_derivative
    return abs(derivative(lam))


class TransmissionBranch(Trajectory):
    columns = Trajectory.columns + ("conjugate_residual", "simplicity")

    def __init__(
        self,
        n: int,
        y_grid: np.ndarray,
        lambdas: np.ndarray,
        dlambda_dy: np.ndarray,
        conjugate_residuals: np.ndarray,
        simplicity: np.ndarray
    ) -> None:
        super().__init__(BoundaryType.TRANSMISSION, n, y_grid, lambdas, dlambda_dy)
        self.conjugate_residuals = np.asarray(conjugate_residuals, dtype=float)
        self.simplicity = np.asarray(simplicity, dtype=float)

    def table(self) -> np.ndarray:
        return np.column_stack([super().table(), self.conjugate_residuals, self.simplicity])


def eigenvalue_unit(y: float, n: int) -> complex:
    _check_pair(n)
    if not 0 <= y <= MAX_Y:
        raise DomainError(f"transmission parameter y={y!r} outside [0, {MAX_Y:g}]")
    return _marcher(n).follow(y, neumann_start(n))


def pair_unit(n: int, y_max: float, steps: int = 256) -> TransmissionBranch:
    _check_pair(n)
    if not 0 < y_max <= MAX_Y:
        raise DomainError(f"y_max={y_max!r} outside (0, {MAX_Y:g}]")
    y_grid = branch_grid(y_max, steps)
    lambdas, derivatives = collect(_marcher(n), transmission_field, y_grid, neumann_start(n))
    simplicity = np.array([simplicity_check(y, lam) for y, lam in zip(y_grid, lambdas)])
    weak = np.flatnonzero(simplicity < SIMPLICITY_THRESHOLD)
    if weak.size:
        k = int(weak[0])
        raise SimplicityError(
            f"|dF/dlambda| = {simplicity[k]:.2e} at y={y_grid[k]:g}, lambda={lambdas[k]!r}"
        )
    conjugate_residuals = np.array([abs(char_T(y, lam.conjugate())) for y, lam in zip(y_grid, lambdas)])
    logger.info(f"transmission pair n={n} followed to y={y_max:g}: lambda={lambdas[-1]!r}")
    return TransmissionBranch(n, y_grid, lambdas, derivatives, conjugate_residuals, simplicity)


def eigenvalue(j: float, kappa: float, n: int = 1) -> complex:
    if j == 0:
        raise DomainError("current magnitude j must be nonzero")
    y = kappa * abs(j) ** (-1.0 / 3.0)
    lam = abs(j) ** (2.0 / 3.0) * eigenvalue_unit(y, n)
    return lam if j > 0 else lam.conjugate()


def dlambda_dj(j: float, kappa: float, n: int = 1) -> complex:
    if not j > 0:
        raise DomainError(f"current magnitude j must be positive, got {j!r}")
    y = kappa * j ** (-1.0 / 3.0)
    lam = eigenvalue_unit(y, n)
    return (2.0 * lam - y * transmission_field(y, lam)) / (3.0 * j ** (1.0 / 3.0))


def max_log_derivative_ratio(branch: TransmissionBranch) -> float:
    return float(np.max(branch.log_derivative_ratio()))


def eigenfunction_defect(y: float, lam: complex) -> float:
    """Relative defect of the transmission condition for the explicit eigenfunction.

    u_+(x) = C_+ Ai(exp(i pi/6) x + w lam) on x > 0 and
    u_-(x) = C_- Ai(exp(5i pi/6) x + conj(w) lam) on x < 0 both decay; the
    constants make u'_+(0) = u'_-(0).
    """
    plus, minus = _factors(lam)
    plus_slope = PLUS_PHASE * plus.ai_prime
    minus_slope = MINUS_PHASE * minus.ai_prime
    scale = max(abs(plus_slope), abs(minus_slope))
    if scale == 0 or not math.isfinite(scale):
        raise DegenerateScaleError(f"both boundary derivatives vanish at lambda={lam!r}")
    c_plus = minus_slope / scale
    c_minus = plus_slope / scale
    slope = c_plus * plus_slope
    u_plus = c_plus * plus.ai
    u_minus = c_minus * minus.ai
    denominator = abs(slope) + y * (abs(u_plus) + abs(u_minus))
    if denominator == 0:
        raise DegenerateScaleError(f"eigenfunction vanishes identically at lambda={lam!r}")
    return abs(slope - y * (u_plus - u_minus)) / denominator


def eigenfunction_values(y: float, lam: complex, x: np.ndarray) -> np.ndarray:
    plus, minus = _factors(lam)
    plus_slope = PLUS_PHASE * plus.ai_prime
    minus_slope = MINUS_PHASE * minus.ai_prime
    values = []
    for point in np.asarray(x, dtype=float):
        if point >= 0:
            values.append(minus_slope * eval_pair(PLUS_PHASE * point + OMEGA * lam).ai)
        else:
            values.append(plus_slope * eval_pair(MINUS_PHASE * point + OMEGA_BAR * lam).ai)
    return np.array(values)


class Rectangle:
    def __init__(self, re_min: float, re_max: float, im_min: float, im_max: float) -> None:
        if not (re_min < re_max and im_min < im_max):
            raise DomainError(f"degenerate rectangle [{re_min}, {re_max}]x[{im_min}, {im_max}]")
        self.re_min = float(re_min)
        self.re_max = float(re_max)
        self.im_min = float(im_min)
        self.im_max = float(im_max)

    def __repr__(self) -> str:
        return f'Rectangle(re=[{self.re_min}, {self.re_max}], im=[{self.im_min}, {self.im_max}])'

    @property
    def corners(self) -> List[complex]:
        return [
            complex(self.re_min, self.im_min),
            complex(self.re_max, self.im_min),
            complex(self.re_max, self.im_max),
            complex(self.re_min, self.im_max),
        ]

    def contains(self, lam: complex) -> bool:
        return self.re_min < lam.real < self.re_max and self.im_min < lam.imag < self.im_max

    def grown(self, margin: float) -> "Rectangle":
        return Rectangle(self.re_min - margin, self.re_max + margin, self.im_min - margin, self.im_max + margin)

    def as_dict(self) -> dict:
        return {"re_min": self.re_min, "re_max": self.re_max, "im_min": self.im_min, "im_max": self.im_max}


class ZeroCountReport:
    def __init__(self, rectangle: Rectangle, y: float, count: int, winding_residual: float,
                 points_per_side: int, nudges: int) -> None:
        self.rectangle = rectangle
        self.y = y
        self.count = count
        self.winding_residual = winding_residual
        self.points_per_side = points_per_side
        self.nudges = nudges

    def __repr__(self) -> str:
        return (f'ZeroCountReport(rectangle={self.rectangle!r}, y={self.y!r}, count={self.count}, '
                f'winding_residual={self.winding_residual:.2e})')

    def as_dict(self) -> dict:
        return {
            "rectangle": self.rectangle.as_dict(),
            "y": self.y,
            "count": self.count,
            "winding_residual": self.winding_residual,
            "points_per_side": self.points_per_side,
            "nudges": self.nudges,
        }


class _ContourTooClose(Exception):
    pass


def _side_samples(y: float, start: complex, end: complex, points: int):
    t = np.linspace(0.0, 1.0, points + 1)
    z = start + (end - start) * t
    values = [_value_and_derivative(y, lam) for lam in z]
    f = np.array([v[0] for v in values])
    df = np.array([v[1] for v in values])
    return f, df, end - start


def _clearance(f: np.ndarray, df: np.ndarray) -> float:
    # Newton distance |F / F'| to the nearest root; F' vanishes at lambda = 0
    return float(np.min(np.abs(f) / np.maximum(np.abs(df), np.finfo(float).tiny)))


def _trapezoid(log_derivative: np.ndarray, edge: complex) -> complex:
    h = 1.0 / (len(log_derivative) - 1)
    return edge * h * (np.sum(log_derivative) - 0.5 * (log_derivative[0] + log_derivative[-1]))


def _winding(y: float, rectangle: Rectangle) -> Tuple[complex, int]:
    corners = rectangle.corners
    points = BASE_POINTS
    sides = [_side_samples(y, corners[k], corners[(k + 1) % 4], 2 * points) for k in range(4)]
    while True:
        clearance = min(_clearance(f, df) for f, df, _ in sides)
        if clearance < CONTOUR_CLEARANCE:
            raise _ContourTooClose(f"contour passes within {clearance:.1e} of a root")
        fine = sum(_trapezoid(df / f, edge) for f, df, edge in sides)
        coarse = sum(_trapezoid(df[::2] / f[::2], edge) for f, df, edge in sides)
        if abs(fine - coarse) / TWO_PI <= 0.01 or 2 * points >= MAX_POINTS:
            return fine / (TWO_PI * 1j), 2 * points
        points *= 2
        logger.debug(f"refining contour to {2 * points} points per side")
        sides = [_side_samples(y, corners[k], corners[(k + 1) % 4], 2 * points) for k in range(4)]


def count_zeros(y: float, rectangle: Rectangle) -> ZeroCountReport:
    attempts = []

    @retry(stop=stop_after_attempt(MAX_NUDGES + 1), retry=retry_if_exception_type(_ContourTooClose),
           reraise=True)
    def attempt() -> ZeroCountReport:
        current = rectangle.grown(NUDGE * len(attempts))
        attempts.append(current)
        winding, points = _winding(y, current)
        count = int(round(winding.real))
        residual = abs(winding - count)
        if residual > WINDING_TOLERANCE:
            logger.warning(f"winding residual {residual:.3f} on {current!r}; nudging the contour")
            raise _ContourTooClose(f"winding residual {residual:.3f}")
        return ZeroCountReport(current, y, count, residual, points, len(attempts) - 1)

    try:
        return attempt()
    except _ContourTooClose as e:
        raise ContourOnZeroError(f"{e} after {MAX_NUDGES} nudges of {rectangle!r}") from e
