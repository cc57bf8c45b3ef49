import cmath
import math
from typing import (
    Callable,
    Iterator,
    List,
    Tuple
)

import numpy as np
from loguru import logger
from scipy.integrate import solve_ivp

from airytools.exception import (
    BranchJumpError,
    ConvergenceError,
    StepFailure
)

NEWTON_TOLERANCE = 1e-12
NEWTON_MAX_ITER = 25
FIRST_STEP = 0.05
FLAT_REGION = 10.0
FLAT_MAX_STEP = 1.0
MISMATCH_FRACTION = 0.1
MAX_HALVINGS = 12

ComplexFunction = Callable[[complex], complex]
BranchField = Callable[[float, complex], complex]
Polisher = Callable[[float, complex], complex]


def newton_polish(
    func: ComplexFunction,
    derivative: ComplexFunction,
    guess: complex,
    tol: float = NEWTON_TOLERANCE,
    max_iter: int = NEWTON_MAX_ITER
) -> complex:
    lam = complex(guess)
    for iteration in range(max_iter):
        value = func(lam)
        if abs(value) <= tol:
            # one more step settles the last digits
            slope = derivative(lam)
            if slope != 0:
                lam -= value / slope
            logger.debug(f"Newton converged in {iteration + 1} iterations at {lam!r}")
            return lam
        slope = derivative(lam)
        if slope == 0 or not cmath.isfinite(slope):
            raise ConvergenceError(f"vanishing derivative during Newton at {lam!r}")
        lam -= value / slope
        if not cmath.isfinite(lam):
            raise ConvergenceError("Newton iterate left the finite range")
    value = func(lam)
    if abs(value) <= tol:
        return lam
    raise ConvergenceError(
        f"Newton stalled after {max_iter} iterations at {lam!r} (residual {abs(value):.2e} > {tol:.1e})"
    )


def branch_grid(y_max: float, steps: int) -> np.ndarray:
    if y_max <= 100.0:
        return np.linspace(0.0, y_max, steps)
    head = steps // 2
    linear = np.linspace(0.0, FLAT_REGION, head, endpoint=False)
    geometric = np.geomspace(FLAT_REGION, y_max, steps - head)
    return np.concatenate([linear, geometric])


def predict(field: BranchField, y_start: float, y_end: float, lam: complex) -> complex:
    span = y_end - y_start
    solution = solve_ivp(
        lambda y, state: np.array([field(y, state[0])]),
        (y_start, y_end),
        np.array([lam], dtype=complex),
        method="RK45",
        rtol=1e-10,
        atol=1e-12,
        first_step=min(FIRST_STEP, span),
        max_step=FLAT_MAX_STEP if y_start >= FLAT_REGION else np.inf,
    )
    if not solution.success:
        raise StepFailure(f"Runge-Kutta step failed on [{y_start:g}, {y_end:g}]: {solution.message}")
    return complex(solution.y[0, -1])


class BranchMarcher:
    def __init__(
        self,
        field: BranchField,
        polish: Polisher,
        gap: float
    ) -> None:
        self.field = field
        self.polish = polish
        self.gap = gap

    def __repr__(self) -> str:
        return f'BranchMarcher(gap={self.gap!r})'

    def advance(self, y_start: float, y_end: float, lam: complex, depth: int = 0) -> complex:
        predicted = predict(self.field, y_start, y_end, lam)
        try:
            root = self.polish(y_end, predicted)
            mismatch = abs(root - predicted)
        except ConvergenceError:
            if depth >= MAX_HALVINGS:
                raise
            root, mismatch = None, math.inf

        if mismatch <= MISMATCH_FRACTION * self.gap:
            return root
        if depth >= MAX_HALVINGS:
            raise BranchJumpError(
                f"polished root drifted {mismatch:.3e} from the predictor on [{y_start:g}, {y_end:g}] "
                f"after {MAX_HALVINGS} halvings (branch gap {self.gap:.3e})"
            )
        logger.warning(f"halving continuation step [{y_start:g}, {y_end:g}] (mismatch {mismatch:.2e})")
        middle = 0.5 * (y_start + y_end)
        lam_middle = self.advance(y_start, middle, lam, depth + 1)
        return self.advance(middle, y_end, lam_middle, depth + 1)

    def march(self, y_grid: np.ndarray, start: complex) -> Iterator[Tuple[float, complex]]:
        lam = self.polish(float(y_grid[0]), start)
        yield float(y_grid[0]), lam
        for y_start, y_end in zip(y_grid[:-1], y_grid[1:]):
            lam = self.advance(float(y_start), float(y_end), lam)
            yield float(y_end), lam

    def follow(self, y_target: float, start: complex, steps: int = 64) -> complex:
        if y_target == 0:
            return self.polish(0.0, start)
        lam = start
        for _, lam in self.march(branch_grid(y_target, steps), start):
            pass
        return lam


class Trajectory:
    columns = ("y", "re_lambda", "im_lambda", "re_dlambda", "im_dlambda", "delta")

    def __init__(
        self,
        bc_kind,
        n: int,
        y_grid: np.ndarray,
        lambdas: np.ndarray,
        dlambda_dy: np.ndarray
    ) -> None:
        self.bc_kind = bc_kind
        self.n = n
        self.y_grid = np.asarray(y_grid, dtype=float)
        self.lambdas = np.asarray(lambdas, dtype=complex)
        self.dlambda_dy = np.asarray(dlambda_dy, dtype=complex)
        self.delta = 2.0 - self.y_grid * self.dlambda_dy.real / self.lambdas.real

    def __repr__(self) -> str:
        return (f'{type(self).__name__}(bc_kind={self.bc_kind.label!r}, n={self.n}, '
                f'points={len(self.y_grid)}, y_max={self.y_grid[-1]!r})')

    def __len__(self) -> int:
        return len(self.y_grid)

    def table(self) -> np.ndarray:
        return np.column_stack([
            self.y_grid,
            self.lambdas.real,
            self.lambdas.imag,
            self.dlambda_dy.real,
            self.dlambda_dy.imag,
            self.delta,
        ])

    def log_derivative_ratio(self) -> np.ndarray:
        return self.y_grid * self.dlambda_dy.real / self.lambdas.real


def collect(marcher: BranchMarcher, field: BranchField, y_grid: np.ndarray,
            start: complex) -> Tuple[np.ndarray, np.ndarray]:
    lambdas: List[complex] = []
    derivatives: List[complex] = []
    for y, lam in marcher.march(y_grid, start):
        lambdas.append(lam)
        derivatives.append(field(y, lam))
    return np.array(lambdas), np.array(derivatives)
