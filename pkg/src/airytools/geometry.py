"""Planar boundary curves, potentials and the two domains with polar structure."""
import math
import re
from enum import Enum
from typing import (
    Callable,
    List,
    Optional,
    Sequence
)

import numpy as np

from airytools.boundary import BoundaryType
from airytools.exception import DomainError

Vector = np.ndarray


class BoundaryRole(Enum):
    EXTERIOR = ("exterior", "outer boundary of the domain")
    INTERFACE = ("interface", "interface between the two media")

    def __init__(self, tag: str, description: str) -> None:
        self.tag = tag
        self.description = description


class Circle:
    """Arclength parametrization s -> center + R (cos(s/R), sin(s/R)), counter-clockwise.

    normal_sign = +1 makes the unit normal point away from the center, -1 towards it.
    """
    def __init__(
        self,
        radius: float,
        center: Sequence[float] = (0.0, 0.0),
        normal_sign: int = 1
    ) -> None:
        if not radius > 0:
            raise DomainError(f"circle radius must be positive, got {radius!r}")
        if normal_sign not in (1, -1):
            raise DomainError(f"normal_sign must be +1 or -1, got {normal_sign!r}")
        self.radius = float(radius)
        self.center = np.asarray(center, dtype=float)
        self.normal_sign = normal_sign

    def __repr__(self) -> str:
        return (f'Circle(radius={self.radius!r}, center=({self.center[0]!r}, {self.center[1]!r}), '
                f'normal_sign={self.normal_sign:+d})')

    @property
    def length(self) -> float:
        return 2.0 * math.pi * self.radius

    def angle(self, s: float) -> float:
        return s / self.radius

    def point(self, s: float) -> Vector:
        theta = self.angle(s)
        return self.center + self.radius * np.array([math.cos(theta), math.sin(theta)])

    def tangent(self, s: float) -> Vector:
        theta = self.angle(s)
        return np.array([-math.sin(theta), math.cos(theta)])

    def curvature_vector(self, s: float) -> Vector:
        theta = self.angle(s)
        return -np.array([math.cos(theta), math.sin(theta)]) / self.radius

    def normal(self, s: float) -> Vector:
        theta = self.angle(s)
        return self.normal_sign * np.array([math.cos(theta), math.sin(theta)])

    def arclength_of(self, point: Sequence[float]) -> float:
        offset = np.asarray(point, dtype=float) - self.center
        return (math.atan2(offset[1], offset[0]) % (2.0 * math.pi)) * self.radius


class BoundaryPiece:
    def __init__(self, curve: Circle, role: BoundaryRole) -> None:
        self.curve = curve
        self.role = role

    def __repr__(self) -> str:
        return f'BoundaryPiece({self.curve!r}, role={self.role.tag})'


class Disk:
    def __init__(self, radius: float = 1.0, center: Sequence[float] = (0.0, 0.0)) -> None:
        self.outer = Circle(radius, center)

    def __repr__(self) -> str:
        return f'Disk(radius={self.outer.radius!r})'

    @property
    def center(self) -> Vector:
        return self.outer.center

    def pieces(self, bc_type: BoundaryType) -> List[BoundaryPiece]:
        if bc_type is BoundaryType.TRANSMISSION:
            raise DomainError("a disk has no interface; transmission needs an annulus")
        return [BoundaryPiece(self.outer, BoundaryRole.EXTERIOR)]


class Annulus:
    def __init__(
        self,
        inner_radius: float = 1.0,
        outer_radius: float = 2.0,
        center: Sequence[float] = (0.0, 0.0)
    ) -> None:
        if not 0 < inner_radius < outer_radius:
            raise DomainError(f"annulus radii must satisfy 0 < r < R, got {inner_radius!r}, {outer_radius!r}")
        self.inner_radius = float(inner_radius)
        self.outer_radius = float(outer_radius)
        self._center = np.asarray(center, dtype=float)

    def __repr__(self) -> str:
        return f'Annulus(inner_radius={self.inner_radius!r}, outer_radius={self.outer_radius!r})'

    @property
    def center(self) -> Vector:
        return self._center

    def pieces(self, bc_type: BoundaryType) -> List[BoundaryPiece]:
        outer = BoundaryPiece(Circle(self.outer_radius, self._center), BoundaryRole.EXTERIOR)
        if bc_type is BoundaryType.TRANSMISSION:
            # inner disk is one medium, the annulus the other; normal leaves the inner disk
            return [BoundaryPiece(Circle(self.inner_radius, self._center, 1), BoundaryRole.INTERFACE), outer]
        return [outer, BoundaryPiece(Circle(self.inner_radius, self._center, -1), BoundaryRole.EXTERIOR)]


class PotentialModel:
    def __init__(
        self,
        value: Callable[[Vector], float],
        gradient: Callable[[Vector], Vector],
        hessian: Callable[[Vector], np.ndarray],
        label: str = "V"
    ) -> None:
        self.value = value
        self.gradient = gradient
        self.hessian = hessian
        self.label = label

    def __repr__(self) -> str:
        return f'PotentialModel({self.label})'

    @classmethod
    def linear(cls, c: Sequence[float], offset: float = 0.0) -> "PotentialModel":
        c = np.asarray(c, dtype=float)
        return cls(
            lambda x: float(c @ x) + offset,
            lambda x: c.copy(),
            lambda x: np.zeros((2, 2)),
            label=f"linear({c[0]:g}, {c[1]:g})",
        )

    @classmethod
    def quadratic(
        cls,
        a: Sequence[Sequence[float]],
        b: Sequence[float] = (0.0, 0.0),
        offset: float = 0.0
    ) -> "PotentialModel":
        # V(x) = x.A x / 2 + b.x + offset with A symmetric
        a = np.asarray(a, dtype=float)
        a = 0.5 * (a + a.T)
        b = np.asarray(b, dtype=float)
        return cls(
            lambda x: float(0.5 * x @ a @ x + b @ x) + offset,
            lambda x: a @ x + b,
            lambda x: a.copy(),
            label="quadratic",
        )

    @classmethod
    def from_expression(cls, text: str) -> "PotentialModel":
        return parse_potential(text)

    def rotated(self, angle: float) -> "PotentialModel":
        """Potential x -> V(R^T x), i.e. V carried along by the rotation R(angle)."""
        rotation = np.array([[math.cos(angle), -math.sin(angle)], [math.sin(angle), math.cos(angle)]])
        return PotentialModel(
            lambda x: self.value(rotation.T @ x),
            lambda x: rotation @ self.gradient(rotation.T @ x),
            lambda x: rotation @ self.hessian(rotation.T @ x) @ rotation.T,
            label=f"{self.label} rotated by {angle:g}",
        )


_TERM = re.compile(r"([+-]?)\s*(\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)?\s*\*?\s*(x1\^2|x2\^2|x1\*x2|x2\*x1|x1|x2)?")


def parse_potential(text: str) -> PotentialModel:
    """Parse a polynomial of degree <= 2 in x1, x2, e.g. "x1", "2*x1 - 0.5*x2", "x1^2 + x2"."""
    source = text.replace(" ", "")
    if not source:
        raise DomainError("empty potential expression")
    linear = np.zeros(2)
    quadratic = np.zeros((2, 2))
    offset = 0.0
    position = 0
    while position < len(source):
        match = _TERM.match(source, position)
        if match is None or match.end() == position or not (match.group(2) or match.group(3)):
            raise DomainError(f"cannot parse potential '{text}' at '{source[position:]}'")
        sign = -1.0 if match.group(1) == "-" else 1.0
        coefficient = sign * (float(match.group(2)) if match.group(2) else 1.0)
        monomial = match.group(3)
        if monomial is None:
            offset += coefficient
        elif monomial == "x1":
            linear[0] += coefficient
        elif monomial == "x2":
            linear[1] += coefficient
        elif monomial == "x1^2":
            quadratic[0, 0] += 2.0 * coefficient
        elif monomial == "x2^2":
            quadratic[1, 1] += 2.0 * coefficient
        else:
            quadratic[0, 1] += coefficient
            quadratic[1, 0] += coefficient
        position = match.end()
        if position < len(source) and source[position] not in "+-":
            raise DomainError(f"cannot parse potential '{text}' at '{source[position:]}'")

    if not quadratic.any():
        potential = PotentialModel.linear(linear, offset)
    else:
        potential = PotentialModel.quadratic(quadratic, linear, offset)
    potential.label = text
    return potential


def make_domain(name: str, radius: float = 1.0, inner_radius: Optional[float] = None):
    if name == "disk":
        return Disk(radius)
    if name == "annulus":
        inner = inner_radius if inner_radius is not None else 0.5 * radius
        return Annulus(inner, radius)
    raise DomainError(f"unknown domain '{name}' (expected disk or annulus)")
