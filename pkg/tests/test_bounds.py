import math

import numpy as np
import pytest
from scipy.integrate import quad

from airytools import bounds
from airytools.exception import (
    AiryOverflowError,
    DomainError
)


def test_unit_pair():
    pair = bounds.laplace_pair(1.0, 1.0)
    assert pair.bound == pytest.approx(math.sqrt(math.pi) * 3 ** -0.25 * math.exp(1 / math.sqrt(3)), rel=1e-12)
    assert pair.holds
    assert pair.margin > 1.0


def test_semigroup_parameters():
    pair = bounds.laplace_pair(1.0 / 12.0, 2.0)
    assert pair.holds
    assert pair.as_dict()["holds"] is True


def test_integral_against_direct_quadrature():
    value, _ = quad(lambda t: math.exp(-0.5 * t ** 3 + 2.0 * t), 0.0, 20.0, epsabs=0.0, epsrel=1e-13, limit=200)
    assert math.exp(bounds.log_laplace_integral(0.5, 2.0)) == pytest.approx(value, rel=1e-11)


def test_tolerance_halving_is_stable():
    coarse = bounds.log_laplace_integral(0.01, 3.0, 1e-10)
    fine = bounds.log_laplace_integral(0.01, 3.0, 5e-11)
    assert abs(math.exp(fine - coarse) - 1.0) <= 1e-10


@pytest.mark.slow
def test_bound_holds_on_the_grid():
    table = bounds.laplace_grid(20)
    assert table.shape == (400, len(bounds.LaplacePair.columns))
    assert np.all(table[:, 4] >= 1.0)


def test_bound_holds_on_a_coarse_grid():
    table = bounds.laplace_grid(4)
    assert np.all(table[:, 2] <= table[:, 3])


def test_asymptotic_ratio_settles():
    assert 0.98 <= bounds.laplace_asymptotic_ratio(30.0) / bounds.laplace_asymptotic_ratio(50.0) <= 1.02
    assert 0.5 <= bounds.laplace_asymptotic_ratio(5.0) / bounds.laplace_asymptotic_ratio(50.0) <= 2.0


def test_asymptotic_ratio_limit():
    assert bounds.laplace_asymptotic_ratio(50.0) == pytest.approx(math.sqrt(2.0 * math.pi), rel=1e-2)


@pytest.mark.parametrize("alpha, beta", [(0.0, 1.0), (1.0, 11.0), (1e-4, 1.0)])
def test_parameter_range(alpha, beta):
    with pytest.raises(DomainError):
        bounds.laplace_pair(alpha, beta)


def test_omega_range():
    with pytest.raises(DomainError):
        bounds.laplace_asymptotic_ratio(60.0)


def test_whole_line_decay():
    assert bounds.semigroup_whole_line_bound(0.0) == 1.0
    assert bounds.semigroup_whole_line_bound(3.0) == pytest.approx(math.exp(-27.0 / 12.0))
    with pytest.raises(DomainError):
        bounds.semigroup_whole_line_bound(-1.0)


def test_asymptotic_ratio_overflow_is_typed(monkeypatch):
    monkeypatch.setattr(bounds, "log_laplace_integral", lambda alpha, beta: 1e6)
    with pytest.raises(AiryOverflowError):
        bounds.laplace_asymptotic_ratio(10.0)
