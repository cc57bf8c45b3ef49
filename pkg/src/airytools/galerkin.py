import math
from typing import (
    List,
    Optional
)

import numpy as np
import scipy.linalg
from loguru import logger
from scipy.optimize import (
    brentq,
    minimize_scalar
)

from airytools.boundary import (
    BoundaryKind,
    BoundaryType
)
from airytools.exception import (
    AiryOverflowError,
    DomainError,
    EigenFailure,
    FrequencySolveError,
    NearSpectrumError
)

MIN_LENGTH = 5.0
MAX_LENGTH = 50.0
MIN_BASIS = 16
MAX_BASIS = 1024
MAX_TIME = 10.0
GAUSS_POINTS = 64
RESIDUAL_LIMIT = 1e-9
NEAR_SPECTRUM = 1e-6
SCAN_SAMPLES = 2048


class GalerkinConfig:
    def __init__(
        self,
        length: float,
        basis_size: int,
        j: float,
        left: BoundaryKind,
        x_shift: float = 0.0
    ) -> None:
        if not MIN_LENGTH <= length <= MAX_LENGTH:
            raise DomainError(f"interval length L={length!r} outside [{MIN_LENGTH:g}, {MAX_LENGTH:g}]")
        if not MIN_BASIS <= basis_size <= MAX_BASIS:
            raise DomainError(f"basis size N={basis_size!r} outside {MIN_BASIS}..{MAX_BASIS}")
        if not math.isfinite(j):
            raise DomainError(f"current magnitude j must be finite, got {j!r}")
        if left.type is BoundaryType.TRANSMISSION:
            raise DomainError("the interval model supports Dirichlet, Neumann or Robin at x=0")
        self.length = float(length)
        self.basis_size = int(basis_size)
        self.j = float(j)
        self.left = left
        self.x_shift = float(x_shift)

    def __repr__(self) -> str:
        return (f'GalerkinConfig(L={self.length!r}, N={self.basis_size}, j={self.j!r}, '
                f'left={self.left!r}, x_shift={self.x_shift!r})')

    def frequencies(self) -> np.ndarray:
        n = np.arange(1, self.basis_size + 1, dtype=float)
        if self.left.type is BoundaryType.DIRICHLET:
            return n * math.pi / self.length
        if self.left.type is BoundaryType.NEUMANN or self.left.y == 0:
            return (n - 0.5) * math.pi / self.length
        return np.array([robin_frequency(self.left.y, self.length, int(k)) for k in n])

    def norms(self, frequencies: np.ndarray) -> np.ndarray:
        # int_0^L sin^2(k (L - x)) dx
        k = frequencies
        return self.length / 2.0 - np.sin(2.0 * k * self.length) / (4.0 * k)


def robin_frequency(kappa: float, length: float, n: int) -> float:
    """n-th root of k cos(kL) + kappa sin(kL) = 0; it lies between (n - 1/2) pi / L and n pi / L."""
    def condition(k: float) -> float:
        return k * math.cos(k * length) + kappa * math.sin(k * length)

    low = (n - 0.5) * math.pi / length
    high = n * math.pi / length
    try:
        root = brentq(condition, low, high, xtol=1e-15, rtol=1e-15, maxiter=200)
    except (ValueError, RuntimeError) as e:
        raise FrequencySolveError(f"Robin frequency n={n} (kappa={kappa!r}, L={length!r}) not bracketed: {e}")
    return float(root)


def quadrature_nodes(length: float, top_frequency: float):
    panels = max(1, int(math.ceil(top_frequency * length / math.pi)))
    nodes, weights = np.polynomial.legendre.leggauss(GAUSS_POINTS)
    edges = np.linspace(0.0, length, panels + 1)
    half = 0.5 * np.diff(edges)
    centers = 0.5 * (edges[:-1] + edges[1:])
    x = (centers[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    return x, w


def position_matrix(config: GalerkinConfig) -> np.ndarray:
    k = config.frequencies()
    x, w = quadrature_nodes(config.length, float(k[-1]))
    basis = np.sin(np.outer(k, config.length - x)) / np.sqrt(config.norms(k))[:, None]
    position = (basis * (w * x)[None, :]) @ basis.T
    return 0.5 * (position + position.T)


def assemble(config: GalerkinConfig) -> np.ndarray:
    k = config.frequencies()
    position = position_matrix(config) - config.x_shift * np.eye(config.basis_size)
    matrix = np.diag(k ** 2).astype(complex) + 1j * config.j * position
    logger.debug(f"assembled {config!r}, top frequency {k[-1]:.4g}")
    return matrix


def whole_line_config(half_length: float, basis_size: int, j: float = 1.0) -> GalerkinConfig:
    # Dirichlet box [0, 2L] with the potential centred, i j (x - L)
    return GalerkinConfig(2.0 * half_length, basis_size, j, BoundaryKind.dirichlet(), x_shift=half_length)


def whole_line_surrogate(half_length: float, basis_size: int, j: float = 1.0) -> np.ndarray:
    return assemble(whole_line_config(half_length, basis_size, j))


class SpectrumResult:
    columns = ("re", "im", "residual")

    def __init__(self, eigenvalues: np.ndarray, residuals: np.ndarray) -> None:
        order = np.lexsort((eigenvalues.imag, eigenvalues.real))
        self.eigenvalues = eigenvalues[order]
        self.residuals = residuals[order]

    def __repr__(self) -> str:
        return f'SpectrumResult(size={len(self.eigenvalues)}, max_residual={self.max_residual:.2e})'

    def __len__(self) -> int:
        return len(self.eigenvalues)

    @property
    def max_residual(self) -> float:
        return float(np.max(self.residuals)) if len(self.residuals) else 0.0

    @property
    def leftmost(self) -> complex:
        return complex(self.eigenvalues[0])

    def table(self) -> np.ndarray:
        return np.column_stack([self.eigenvalues.real, self.eigenvalues.imag, self.residuals])

    def as_dict(self) -> dict:
        return {
            "eigenvalues": [[value.real, value.imag] for value in self.eigenvalues.tolist()],
            "residuals": self.residuals.tolist(),
        }


def eigensolve(matrix: np.ndarray) -> SpectrumResult:
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] > MAX_BASIS:
        raise DomainError(f"eigensolve needs a square matrix of size at most {MAX_BASIS}, got {matrix.shape}")
    try:
        eigenvalues, vectors = scipy.linalg.eig(matrix)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise EigenFailure(f"dense eigensolver failed: {e}")
    scale = max(np.linalg.norm(matrix, 2), np.finfo(float).tiny)
    backward = matrix @ vectors - vectors * eigenvalues[None, :]
    residuals = np.linalg.norm(backward, axis=0) / (scale * np.linalg.norm(vectors, axis=0))
    worst = float(np.max(residuals))
    if worst > RESIDUAL_LIMIT:
        raise EigenFailure(f"backward residual {worst:.2e} exceeds {RESIDUAL_LIMIT:.0e}")
    return SpectrumResult(eigenvalues, residuals)


def leftmost_eigenvalue(config: GalerkinConfig) -> complex:
    spectrum = eigensolve(assemble(config))
    logger.info(f"leftmost eigenvalue {spectrum.leftmost!r} for {config!r}")
    return spectrum.leftmost


def numerical_range_abscissa(matrix: np.ndarray) -> float:
    # min Re <Mv, v> over unit v
    hermitian = 0.5 * (matrix + matrix.conj().T)
    return float(scipy.linalg.eigvalsh(hermitian)[0])


def smallest_singular_value(matrix: np.ndarray, z: complex) -> float:
    shifted = matrix - z * np.eye(matrix.shape[0])
    return float(scipy.linalg.svdvals(shifted)[-1])


class ResolventScan:
    columns = ("nu", "resolvent_norm")

    def __init__(self, gamma: float, nus: np.ndarray, norms: np.ndarray, argmax_nu: float, sup_norm: float) -> None:
        self.gamma = gamma
        self.nus = nus
        self.norms = norms
        self.argmax_nu = argmax_nu
        self.sup_norm = sup_norm

    def __repr__(self) -> str:
        return f'ResolventScan(gamma={self.gamma!r}, sup_norm={self.sup_norm:.6g} at nu={self.argmax_nu:.6g})'

    def table(self) -> np.ndarray:
        return np.column_stack([self.nus, self.norms])


def resolvent_scan(
    matrix: np.ndarray,
    gamma: float,
    nu_min: float,
    nu_max: float,
    samples: int = SCAN_SAMPLES,
    spectrum: Optional[SpectrumResult] = None
) -> ResolventScan:
    if not nu_min < nu_max:
        raise DomainError(f"empty scan range [{nu_min!r}, {nu_max!r}]")
    if samples < 3:
        raise DomainError(f"need at least 3 samples, got {samples}")
    matrix = np.asarray(matrix, dtype=complex)
    spectrum = spectrum if spectrum is not None else eigensolve(matrix)
    distance = float(np.min(np.abs(spectrum.eigenvalues.real - gamma)))
    if distance < NEAR_SPECTRUM:
        raise NearSpectrumError(
            f"line Re z = {gamma!r} passes within {distance:.2e} of an eigenvalue real part"
        )

    nus = np.linspace(nu_min, nu_max, samples)
    sigma = np.array([smallest_singular_value(matrix, complex(gamma, nu)) for nu in nus])
    norms = 1.0 / sigma

    argmax_nu = float(nus[int(np.argmax(norms))])
    sup_norm = float(np.max(norms))
    step = nus[1] - nus[0]
    for index in np.argsort(norms)[-3:]:
        low = max(nu_min, nus[index] - step)
        high = min(nu_max, nus[index] + step)
        refined = minimize_scalar(
            lambda nu: smallest_singular_value(matrix, complex(gamma, nu)),
            bounds=(low, high),
            method="bounded",
            options={"xatol": 1e-10},
        )
        value = 1.0 / float(refined.fun)
        if value > sup_norm:
            sup_norm, argmax_nu = value, float(refined.x)
    logger.info(f"resolvent sup on Re z={gamma:g}: {sup_norm:.6g} at nu={argmax_nu:.6g}")
    return ResolventScan(float(gamma), nus, norms, argmax_nu, sup_norm)


def semigroup_norm(matrix: np.ndarray, t: float) -> float:
    if not 0 <= t <= MAX_TIME:
        raise DomainError(f"time t={t!r} outside [0, {MAX_TIME:g}]")
    propagator = scipy.linalg.expm(-t * np.asarray(matrix, dtype=complex))
    if not np.all(np.isfinite(propagator)):
        raise AiryOverflowError(f"matrix exponential overflowed at t={t!r}")
    return float(np.linalg.norm(propagator, 2))


def semigroup_profile(matrix: np.ndarray, times: List[float]) -> np.ndarray:
    return np.array([semigroup_norm(matrix, t) for t in times])
