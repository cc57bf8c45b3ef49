import pytest

from airytools.boundary import (
    BoundaryKind,
    BoundaryType
)
from airytools.exception import DomainError


def test_uncoupled_conditions_drop_the_parameter():
    assert BoundaryKind(BoundaryType.NEUMANN, 3.0).y == 0.0
    assert BoundaryKind.dirichlet() == BoundaryKind(BoundaryType.DIRICHLET, 5.0)


def test_robin_keeps_parameter():
    bc = BoundaryKind.robin(2.5)
    assert bc.y == 2.5
    assert bc.with_parameter(1.0) == BoundaryKind.robin(1.0)
    assert hash(bc) == hash(BoundaryKind.robin(2.5))


@pytest.mark.parametrize("y", [-1.0, float("inf"), float("nan")])
def test_invalid_parameter(y):
    with pytest.raises(DomainError):
        BoundaryKind.robin(y)


def test_flags():
    assert BoundaryType.from_flag("T") is BoundaryType.TRANSMISSION
    with pytest.raises(DomainError):
        BoundaryType.from_flag("x")
