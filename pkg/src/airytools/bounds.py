import math
import warnings

import numpy as np
from loguru import logger
from scipy.integrate import (
    IntegrationWarning,
    quad
)

from airytools.exception import (
    AiryOverflowError,
    DomainError,
    QuadratureError
)

PARAMETER_RANGE = (1e-3, 10.0)
OMEGA_RANGE = (5.0, 50.0)
TAIL_EXPONENT = math.log(1e14)
QUAD_TOLERANCE = 1e-12
QUAD_LIMIT = 400
ACCEPTED_ERROR = 1e-10


class LaplacePair:
    columns = ("alpha", "beta", "integral", "bound", "margin")

    def __init__(self, alpha: float, beta: float, log_integral: float, log_bound: float) -> None:
        self.alpha = alpha
        self.beta = beta
        self.log_integral = log_integral
        self.log_bound = log_bound

    def __repr__(self) -> str:
        return f'LaplacePair(alpha={self.alpha!r}, beta={self.beta!r}, margin={self.margin:.6g})'

    @property
    def integral(self) -> float:
        return math.exp(self.log_integral)

    @property
    def bound(self) -> float:
        return math.exp(self.log_bound)

    @property
    def margin(self) -> float:
        return math.exp(self.log_bound - self.log_integral)

    @property
    def holds(self) -> bool:
        return self.log_integral <= self.log_bound

    def row(self) -> list:
        return [self.alpha, self.beta, self.integral, self.bound, self.margin]

    def as_dict(self) -> dict:
        return dict(zip(self.columns, self.row()), holds=self.holds)


def _peak(alpha: float, beta: float):
    # max of -alpha t^3 + beta t on t >= 0
    t_peak = math.sqrt(beta / (3.0 * alpha))
    return t_peak, 2.0 * beta * t_peak / 3.0


def _truncation(alpha: float, beta: float) -> float:
    # beyond T the integrand is below exp(-alpha t^3 / 2) and that tail is below 1e-14
    crossover = math.sqrt(2.0 * beta / alpha)
    tail = (2.0 * TAIL_EXPONENT / alpha) ** (1.0 / 3.0)
    return max(crossover, tail)


def log_laplace_integral(alpha: float, beta: float, tolerance: float = QUAD_TOLERANCE) -> float:
    """log of the integral of exp(-alpha t^3 + beta t) over t > 0, peak factored out."""
    t_peak, exponent = _peak(alpha, beta)
    upper = _truncation(alpha, beta)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntegrationWarning)
        value, error = quad(
            lambda t: math.exp(-alpha * t ** 3 + beta * t - exponent),
            0.0,
            upper,
            points=[t_peak] if t_peak < upper else None,
            epsabs=0.0,
            epsrel=tolerance,
            limit=QUAD_LIMIT,
        )
    # roundoff warnings pass when the error estimate is small
    if caught and not error <= ACCEPTED_ERROR * abs(value):
        raise QuadratureError(
            f"quadrature did not converge for alpha={alpha!r}, beta={beta!r}: {caught[0].message}"
        )
    if not value > 0 or not math.isfinite(value):
        raise QuadratureError(f"non-positive quadrature result {value!r} for alpha={alpha!r}, beta={beta!r}")
    logger.debug(f"laplace integral alpha={alpha:g} beta={beta:g}: scaled {value:.15g} +- {error:.1e} on [0, {upper:.4g}]")
    return exponent + math.log(value)


def log_laplace_bound(alpha: float, beta: float) -> float:
    # sqrt(pi) (3 beta alpha)^(-1/4) exp(beta^(3/2) / (3 alpha)^(1/2))
    return 0.5 * math.log(math.pi) - 0.25 * math.log(3.0 * beta * alpha) + beta ** 1.5 / math.sqrt(3.0 * alpha)


def laplace_pair(alpha: float, beta: float, tolerance: float = QUAD_TOLERANCE) -> LaplacePair:
    low, high = PARAMETER_RANGE
    for name, value in (("alpha", alpha), ("beta", beta)):
        if not low <= value <= high:
            raise DomainError(f"{name}={value!r} outside [{low:g}, {high:g}]")
    return LaplacePair(alpha, beta, log_laplace_integral(alpha, beta, tolerance), log_laplace_bound(alpha, beta))


def laplace_grid(size: int = 20) -> np.ndarray:
    low, high = PARAMETER_RANGE
    axis = np.geomspace(low, high, size)
    rows = [laplace_pair(float(alpha), float(beta)).row() for alpha in axis for beta in axis]
    return np.array(rows)


def laplace_asymptotic_ratio(omega: float) -> float:
    """Integral at alpha = 1/12, beta = omega divided by omega^(-1/4) exp(4/3 omega^(3/2))."""
    low, high = OMEGA_RANGE
    if not low <= omega <= high:
        raise DomainError(f"omega={omega!r} outside [{low:g}, {high:g}]")
    log_ratio = log_laplace_integral(1.0 / 12.0, omega) - (4.0 / 3.0) * omega ** 1.5 + 0.25 * math.log(omega)
    try:
        return math.exp(log_ratio)
    except OverflowError as e:
        raise AiryOverflowError(f"asymptotic ratio overflows at omega={omega!r}") from e


def semigroup_whole_line_bound(t: float) -> float:
    if t < 0:
        raise DomainError(f"time t={t!r} must be nonnegative")
    return math.exp(-t ** 3 / 12.0)
