import math
from enum import Enum

from airytools.exception import DomainError


class BoundaryType(Enum):
    DIRICHLET = ("d", "Dirichlet", False)
    NEUMANN = ("n", "Neumann", False)
    ROBIN = ("r", "Robin", True)
    TRANSMISSION = ("t", "Transmission", True)

    def __init__(self, flag: str, label: str, coupled: bool) -> None:
        self.flag = flag
        self.label = label
        self.coupled = coupled

    @classmethod
    def from_flag(cls, flag: str) -> "BoundaryType":
        for boundary_type in cls:
            if boundary_type.flag == flag.lower():
                return boundary_type
        raise DomainError(f"unknown boundary condition '{flag}' (expected one of d, n, r, t)")


class BoundaryKind:
    def __init__(self, type: BoundaryType, y: float = 0.0) -> None:
        y = float(y) if type.coupled else 0.0
        if not math.isfinite(y) or y < 0:
            raise DomainError(f"{type.label} parameter must be a finite nonnegative real, got {y!r}")
        self.type = type
        self.y = y

    def __repr__(self) -> str:
        if self.type.coupled:
            return f'BoundaryKind({self.type.label}, y={self.y!r})'
        return f'BoundaryKind({self.type.label})'

    def __eq__(self, other) -> bool:
        if isinstance(other, BoundaryKind):
            return self.type is other.type and self.y == other.y
        return False

    def __hash__(self) -> int:
        return hash((self.type, self.y))

    @classmethod
    def dirichlet(cls) -> "BoundaryKind":
        return cls(BoundaryType.DIRICHLET)

    @classmethod
    def neumann(cls) -> "BoundaryKind":
        return cls(BoundaryType.NEUMANN)

    @classmethod
    def robin(cls, y: float) -> "BoundaryKind":
        return cls(BoundaryType.ROBIN, y)

    @classmethod
    def transmission(cls, y: float) -> "BoundaryKind":
        return cls(BoundaryType.TRANSMISSION, y)

    def with_parameter(self, y: float) -> "BoundaryKind":
        return BoundaryKind(self.type, y)
