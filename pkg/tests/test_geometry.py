import math

import numpy as np
import pytest

from airytools.boundary import BoundaryType
from airytools.exception import DomainError
from airytools.geometry import (
    Annulus,
    BoundaryRole,
    Circle,
    Disk,
    PotentialModel,
    make_domain,
    parse_potential
)


def test_circle_frame():
    circle = Circle(2.0, center=(1.0, -1.0))
    s = 0.5 * math.pi * 2.0
    assert np.allclose(circle.point(s), [1.0, 1.0])
    assert np.allclose(circle.tangent(s), [-1.0, 0.0])
    assert np.allclose(circle.normal(s), [0.0, 1.0])
    assert np.allclose(circle.curvature_vector(s), [0.0, -0.5])
    assert circle.arclength_of([1.0, 1.0]) == pytest.approx(s)


def test_inward_normal():
    circle = Circle(1.0, normal_sign=-1)
    assert np.allclose(circle.normal(0.0), [-1.0, 0.0])


@pytest.mark.parametrize("kwargs", [dict(radius=0.0), dict(radius=1.0, normal_sign=0)])
def test_circle_validation(kwargs):
    with pytest.raises(DomainError):
        Circle(**kwargs)


def test_disk_pieces():
    pieces = Disk(1.5).pieces(BoundaryType.ROBIN)
    assert len(pieces) == 1
    assert pieces[0].role is BoundaryRole.EXTERIOR
    with pytest.raises(DomainError):
        Disk().pieces(BoundaryType.TRANSMISSION)


def test_annulus_pieces():
    annulus = Annulus(1.0, 2.0)
    outer, inner = annulus.pieces(BoundaryType.DIRICHLET)
    assert (outer.curve.radius, outer.curve.normal_sign) == (2.0, 1)
    assert (inner.curve.radius, inner.curve.normal_sign) == (1.0, -1)
    interface, exterior = annulus.pieces(BoundaryType.TRANSMISSION)
    assert interface.role is BoundaryRole.INTERFACE
    assert interface.curve.normal_sign == 1
    assert exterior.role is BoundaryRole.EXTERIOR
    with pytest.raises(DomainError):
        Annulus(2.0, 1.0)


def test_make_domain():
    assert isinstance(make_domain("disk", 2.0), Disk)
    annulus = make_domain("annulus", 2.0)
    assert (annulus.inner_radius, annulus.outer_radius) == (1.0, 2.0)
    with pytest.raises(DomainError):
        make_domain("square")


def test_parse_linear():
    potential = parse_potential("2*x1 - 0.5*x2 + 3")
    x = np.array([1.0, 2.0])
    assert potential.value(x) == pytest.approx(4.0)
    assert np.allclose(potential.gradient(x), [2.0, -0.5])
    assert np.allclose(potential.hessian(x), 0.0)
    assert potential.label == "2*x1 - 0.5*x2 + 3"


def test_parse_quadratic():
    potential = parse_potential("x1^2 + x2 - 3*x1*x2")
    x = np.array([2.0, -1.0])
    assert potential.value(x) == pytest.approx(4.0 - 1.0 + 6.0)
    assert np.allclose(potential.gradient(x), [2 * 2.0 - 3 * -1.0, 1.0 - 3 * 2.0])
    assert np.allclose(potential.hessian(x), [[2.0, -3.0], [-3.0, 0.0]])


@pytest.mark.parametrize("text", ["", "x3", "1+", "x1**2", "sin(x1)"])
def test_parse_rejects(text):
    with pytest.raises(DomainError):
        parse_potential(text)


def test_rotated_potential():
    potential = PotentialModel.quadratic([[2.0, 0.0], [0.0, 0.0]], [0.0, 1.0])
    rotated = potential.rotated(0.3)
    c, s = math.cos(0.3), math.sin(0.3)
    x = np.array([0.4, -0.7])
    carried = np.array([c * x[0] - s * x[1], s * x[0] + c * x[1]])
    assert rotated.value(carried) == pytest.approx(potential.value(x))
    assert np.linalg.norm(rotated.gradient(carried)) == pytest.approx(np.linalg.norm(potential.gradient(x)))
    assert np.trace(rotated.hessian(carried)) == pytest.approx(2.0)
