import cmath
import math

import pytest

from airytools.airy import (
    ZeroKind,
    real_zero
)
from airytools.boundary import BoundaryType
from airytools.exception import (
    DomainError,
    GridResolutionError
)
from airytools.geometry import (
    Annulus,
    BoundaryRole,
    Circle,
    PotentialModel
)
from airytools.margin import (
    collect_perp_points,
    find_perp_points
)
from airytools.quasimode import (
    GridSpec,
    cutoff,
    quasimode_residual,
    quasimode_value,
    residual_scaling
)
from airytools.query import by_role

LINEAR = PotentialModel.linear([1.0, 0.0])
SMALL_H = [0.004, 0.002, 0.001, 0.0005]


def _disk_point(x1: float):
    return next(point for point in find_perp_points(Circle(1.0), LINEAR) if point.location[0] * x1 > 0)


@pytest.fixture(scope="module")
def right_point():
    return _disk_point(1.0)


@pytest.fixture(scope="module")
def left_point():
    return _disk_point(-1.0)


def test_dirichlet_value(right_point):
    h = 0.01
    a1 = abs(real_zero(ZeroKind.OF_AI, 1).value)
    expected = (1j + h ** (2.0 / 3.0) * a1 * cmath.exp(-1j * math.pi / 3)
                + h * 2 ** -0.5 * cmath.exp(-1j * math.pi / 4))
    assert quasimode_value(right_point, BoundaryType.DIRICHLET, 0.0, h) == pytest.approx(expected, abs=1e-12)


def test_values_on_opposite_sides_are_conjugate_in_the_correction(left_point, right_point):
    h = 0.02
    right = quasimode_value(right_point, BoundaryType.NEUMANN, 0.0, h) - 1j * right_point.value
    left = quasimode_value(left_point, BoundaryType.NEUMANN, 0.0, h) - 1j * left_point.value
    assert left == pytest.approx(right.conjugate(), abs=1e-12)


def test_neumann_is_robin_at_zero(left_point):
    assert quasimode_value(left_point, BoundaryType.NEUMANN, 0.0, 0.01) == pytest.approx(
        quasimode_value(left_point, BoundaryType.ROBIN, 0.0, 0.01), abs=1e-10
    )


def test_value_range(left_point):
    with pytest.raises(DomainError):
        quasimode_value(left_point, BoundaryType.DIRICHLET, 0.0, 0.6)


def test_pairing(left_point):
    with pytest.raises(DomainError):
        quasimode_value(left_point, BoundaryType.TRANSMISSION, 1.0, 0.01)


def test_cutoff_profile():
    values = cutoff([0.0, 0.1, 0.15, 0.2, 0.3], 0.1)
    assert values[0] == 1.0 and values[1] == 1.0
    assert 0.0 < values[2] < 1.0
    assert values[3] == 0.0 and values[4] == 0.0


def test_grid_resolution(left_point):
    with pytest.raises(GridResolutionError):
        GridSpec(layer_points=4).steps(0.01)
    with pytest.raises(GridResolutionError):
        quasimode_residual(left_point, LINEAR, BoundaryType.ROBIN, 1.0, 0.001, 0.3, GridSpec(normal_step=0.01))


def test_cutoff_exponent_range(left_point):
    with pytest.raises(DomainError):
        quasimode_residual(left_point, LINEAR, BoundaryType.ROBIN, 1.0, 0.01, gamma=0.5)


@pytest.mark.parametrize("h_list", [[0.01], [0.01, 0.02], [0.2, 0.1]])
def test_scaling_preconditions(left_point, h_list):
    with pytest.raises(DomainError):
        residual_scaling(left_point, LINEAR, BoundaryType.ROBIN, 1.0, h_list)


def test_residual_is_small(left_point):
    residual = quasimode_residual(left_point, LINEAR, BoundaryType.ROBIN, 1.0, 0.004, gamma=0.3)
    assert 0.0 < residual < 0.01


@pytest.mark.slow
def test_robin_residual_is_superlinear(left_point):
    report = residual_scaling(left_point, LINEAR, BoundaryType.ROBIN, 1.0, SMALL_H, gamma=0.3)
    assert 1.15 <= report.fitted_slope <= 1.5
    assert report.table().shape == (4, len(report.columns))


@pytest.mark.slow
def test_shifted_eigenvalue_is_only_linear(left_point):
    report = residual_scaling(left_point, LINEAR, BoundaryType.ROBIN, 1.0, SMALL_H, gamma=0.3, lambda_shift=1.0)
    assert 0.85 <= report.fitted_slope <= 1.15


@pytest.mark.slow
def test_transmission_interface_residual():
    points = collect_perp_points(Annulus(1.0, 2.0), LINEAR, BoundaryType.TRANSMISSION)
    interface = points.get(by_role(lambda role: role is BoundaryRole.INTERFACE))
    report = residual_scaling(interface, LINEAR, BoundaryType.TRANSMISSION, 1.0, SMALL_H, gamma=0.3)
    assert 1.05 <= report.fitted_slope <= 1.35


@pytest.mark.slow
def test_grid_refinement_is_stable(left_point):
    grid = GridSpec()
    coarse = quasimode_residual(left_point, LINEAR, BoundaryType.ROBIN, 1.0, 0.002, 0.3, grid)
    fine = quasimode_residual(left_point, LINEAR, BoundaryType.ROBIN, 1.0, 0.002, 0.3, grid.refined())
    assert abs(fine - coarse) <= 0.05 * coarse
