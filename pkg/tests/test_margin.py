import math

import numpy as np
import pytest

from airytools import margin as margin_module
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
    PotentialModel,
    parse_potential
)
from airytools.margin import (
    find_perp_points,
    margin,
    tangential_frequency
)
from airytools.query import by_role

LINEAR = PotentialModel.linear([1.0, 0.0])


def test_disk_perp_points():
    points = find_perp_points(Circle(1.0), LINEAR)
    assert len(points) == 2
    right, left = sorted(points, key=lambda point: -point.location[0])
    assert np.allclose(right.location, [1.0, 0.0], atol=1e-12)
    assert np.allclose(left.location, [-1.0, 0.0], atol=1e-12)
    assert right.j0 == pytest.approx(1.0)
    assert right.alpha[0] == pytest.approx(-1.0)
    assert left.alpha[0] == pytest.approx(1.0)
    assert right.mu1 == pytest.approx(2 ** -0.5 * complex(math.cos(math.pi / 4), -math.sin(math.pi / 4)))
    assert right.conjugated and not left.conjugated


def test_tangential_frequency_sign():
    assert tangential_frequency([2.0]) == pytest.approx(complex(math.cos(math.pi / 4), math.sin(math.pi / 4)))
    assert tangential_frequency([-2.0]).imag < 0


def test_annulus_has_four_points():
    report = margin(Annulus(0.5, 1.0), LINEAR, BoundaryType.DIRICHLET)
    assert len(report) == 4
    assert len(report.minimizers) == 4


def test_dirichlet_margin():
    report = margin(Disk(), LINEAR, BoundaryType.DIRICHLET)
    assert report.lambda_m == pytest.approx(1.1691, abs=1e-3)
    assert len(report.minimizers) == 2
    assert report.attained_on == ["exterior"]


def test_neumann_margin():
    report = margin(Disk(), LINEAR, BoundaryType.NEUMANN)
    assert report.lambda_m == pytest.approx(0.5094, abs=1e-3)
    assert all(value == pytest.approx(report.lambda_m) for value in report.point_values)


def test_robin_margin_increases_between_limits():
    values = [margin(Disk(), LINEAR, BoundaryType.ROBIN, kappa).lambda_m for kappa in (0.1, 1.0, 10.0)]
    assert 0.5094 < values[0] < values[1] < values[2] < 1.1691


def test_stronger_current_raises_margin():
    weak = margin(Disk(), LINEAR, BoundaryType.DIRICHLET).lambda_m
    strong = margin(Disk(), PotentialModel.linear([8.0, 0.0]), BoundaryType.DIRICHLET).lambda_m
    assert strong == pytest.approx(4.0 * weak, rel=1e-10)


def test_weakest_current_is_selected():
    # |grad V| = |(2 x1, 1)| is smallest where x1 = 0
    report = margin(Disk(), parse_potential("x1^2 + x2"), BoundaryType.DIRICHLET)
    assert report.minimizers
    assert all(point.j0 == pytest.approx(1.0) for point in report.minimizers)
    assert all(abs(point.location[0]) <= 1e-9 for point in report.minimizers)


def test_rotation_equivariance():
    angle = 0.7
    base = margin(Disk(), LINEAR, BoundaryType.ROBIN, 1.0)
    turned = margin(Disk(), LINEAR.rotated(angle), BoundaryType.ROBIN, 1.0)
    assert turned.lambda_m == pytest.approx(base.lambda_m, rel=1e-12)
    rotation = np.array([[math.cos(angle), -math.sin(angle)], [math.sin(angle), math.cos(angle)]])
    expected = sorted(tuple(np.round(rotation @ p.location, 9)) for p in base.minimizers)
    found = sorted(tuple(np.round(p.location, 9)) for p in turned.minimizers)
    assert np.allclose(expected, found, atol=1e-8)


def test_transmission_margin_on_interface():
    report = margin(Annulus(1.0, 2.0), LINEAR, BoundaryType.TRANSMISSION, 0.0)
    assert report.lambda_m == pytest.approx(0.5094, abs=1e-3)
    assert report.attained_on == ["interface"]
    interface = report.list(by_role(lambda role: role is BoundaryRole.INTERFACE))
    assert len(interface) == 2


def test_transmission_with_neumann_exterior_ties():
    report = margin(Annulus(1.0, 2.0), LINEAR, BoundaryType.TRANSMISSION, 0.0, BoundaryType.NEUMANN)
    assert report.attained_on == ["exterior", "interface"]
    assert len(report.minimizers) == 4


def test_transmission_coupling_raises_interface_value():
    low = margin(Annulus(1.0, 2.0), LINEAR, BoundaryType.TRANSMISSION, 0.0).lambda_m
    high = margin(Annulus(1.0, 2.0), LINEAR, BoundaryType.TRANSMISSION, 0.5).lambda_m
    assert high > low


def test_transmission_needs_an_interface():
    with pytest.raises(DomainError):
        margin(Disk(), LINEAR, BoundaryType.TRANSMISSION, 1.0)


def test_transmission_exterior_condition():
    with pytest.raises(DomainError):
        margin(Annulus(1.0, 2.0), LINEAR, BoundaryType.TRANSMISSION, 1.0, BoundaryType.ROBIN)


def test_report_as_dict():
    payload = margin(Disk(), LINEAR, BoundaryType.NEUMANN).as_dict()
    assert payload["bc"] == "Neumann"
    assert len(payload["points"]) == 2
    assert "re_lambda" in payload["points"][0]


def test_radial_potential_is_degenerate():
    radial = parse_potential("x1^2 + x2^2")
    with pytest.raises(DegenerateZeroError):
        find_perp_points(Circle(1.0), radial)
    with pytest.raises(NondegeneracyError):
        margin(Disk(), radial, BoundaryType.DIRICHLET)


class _NoBoundary:
    def pieces(self, bc_type):
        return []


def test_empty_perp_set():
    with pytest.raises(EmptyPerpSetError):
        margin_module.collect_perp_points(_NoBoundary(), LINEAR, BoundaryType.DIRICHLET)


def test_negative_coupling():
    with pytest.raises(DomainError):
        margin(Disk(), LINEAR, BoundaryType.ROBIN, -1.0)
