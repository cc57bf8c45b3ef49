import cmath
import math

import mpmath
import numpy as np
import pytest

from airytools import airy
from airytools.airy import (
    AiryMethod,
    ZeroKind,
    connection_defect,
    eval_pair,
    real_zero,
    real_zeros,
    wronskian_defect
)
from airytools.exception import (
    AiryToolsError,
    DomainError
)


def test_values_at_origin():
    pair = eval_pair(0)
    assert pair.ai.real == pytest.approx(0.3550280538878172, abs=1e-13)
    assert pair.ai_prime.real == pytest.approx(-0.2588194037928068, abs=1e-13)
    assert pair.method is AiryMethod.SERIES


def test_pair_unpacks_and_serializes():
    ai, aip = eval_pair(1 + 1j)
    assert eval_pair(1 + 1j).as_dict()["ai"] == [ai.real, ai.imag]
    assert aip == eval_pair(1 + 1j).ai_prime


@pytest.mark.parametrize("z", [0.5, -2 + 1j, 3 + 4j, -6.5, 7j, 12 * cmath.exp(0.3j), -15 + 2j, 25 * cmath.exp(2.5j)])
def test_against_mpmath(z):
    pair = eval_pair(z)
    with mpmath.workdps(30):
        expected = complex(mpmath.airyai(z))
        expected_prime = complex(mpmath.airyai(z, derivative=1))
    assert abs(pair.ai - expected) <= 1e-11 * max(abs(expected), 1e-300)
    assert abs(pair.ai_prime - expected_prime) <= 1e-11 * max(abs(expected_prime), 1e-300)


def test_method_selection():
    assert eval_pair(5).method is AiryMethod.SERIES
    assert eval_pair(20).method is AiryMethod.ASYMPTOTIC
    assert eval_pair(-20).method is AiryMethod.CONNECTION_ROTATED


@pytest.mark.parametrize("radius", [8.0, 9.0, 10.0])
@pytest.mark.parametrize("angle", [-2.0, -1.0, 0.0, 0.7, 1.5, 2.0])
def test_series_and_asymptotic_agree_on_overlap(radius, angle):
    z = radius * cmath.exp(1j * angle)
    series = airy._series(z)
    ai, aip, _ = airy._asymptotic(z)
    assert abs(series.ai - ai) <= 1e-10 * abs(ai)
    assert abs(series.ai_prime - aip) <= 1e-10 * abs(aip)


def test_deterministic():
    z = 4.2 - 3.3j
    assert eval_pair(z).ai == eval_pair(z).ai


@pytest.mark.parametrize("z", [math.nan, complex(1, math.inf), 41.0, 30 + 30j])
def test_rejects_outside_domain(z):
    with pytest.raises(DomainError):
        eval_pair(z)


def test_domain_error_is_typed_and_value_error():
    with pytest.raises(AiryToolsError):
        eval_pair(100)
    with pytest.raises(ValueError):
        eval_pair(100)


def test_first_zeros():
    assert real_zero(ZeroKind.OF_AI, 1).value == pytest.approx(-2.338107410459767, abs=1e-12)
    assert real_zero(ZeroKind.OF_AI_PRIME, 1).value == pytest.approx(-1.018792971647471, abs=1e-12)
    assert real_zero(ZeroKind.OF_AI, 2).value == pytest.approx(-4.087949444130970, abs=1e-12)


def test_derivative_vanishes_at_first_zero_of_derivative():
    zero = real_zero(ZeroKind.OF_AI_PRIME, 1)
    assert abs(eval_pair(zero.value).ai_prime) <= 1e-12


@pytest.mark.parametrize("kind", list(ZeroKind))
def test_zeros_match_mpmath(kind):
    derivative = 0 if kind is ZeroKind.OF_AI else 1
    for zero in real_zeros(kind, 20):
        assert zero.value == pytest.approx(float(mpmath.airyaizero(zero.n, derivative=derivative)), abs=1e-11)


def test_zeros_are_sign_changes():
    for zero in real_zeros(ZeroKind.OF_AI, 10):
        left, right = eval_pair(zero.value - 1e-6).ai.real, eval_pair(zero.value + 1e-6).ai.real
        assert left * right < 0


def test_interlacing():
    assert airy.interlacing_holds(19)


@pytest.mark.parametrize("n", [0, 21])
def test_zero_index_range(n):
    with pytest.raises(DomainError):
        real_zero(ZeroKind.OF_AI, n)


def test_zero_kind_flags():
    assert ZeroKind.from_flag("aip") is ZeroKind.OF_AI_PRIME
    with pytest.raises(DomainError):
        ZeroKind.from_flag("bi")


@pytest.mark.parametrize("z, tolerance", [(0, 1e-13), (3 + 4j, 1e-11), (-10, 1e-10)])
def test_wronskian(z, tolerance):
    assert wronskian_defect(z) <= tolerance


def test_connection_at_origin():
    assert connection_defect(0) <= 1e-13


def test_connection_random_points():
    rng = np.random.default_rng(7)
    radii = 10.0 * np.sqrt(rng.random(100))
    angles = rng.uniform(-math.pi, math.pi, 100)
    for r, t in zip(radii, angles):
        assert connection_defect(r * cmath.exp(1j * t)) <= 1e-11


def test_connection_in_asymptotic_regime():
    assert connection_defect(15 * cmath.exp(1j * math.pi / 3)) <= 1e-9


@pytest.mark.slow
def test_identities_on_grid():
    radii = np.linspace(0.5, 20.0, 40)
    angles = np.linspace(-math.pi, math.pi, 25)
    for r in radii:
        for t in angles:
            z = r * cmath.exp(1j * t)
            assert wronskian_defect(z) <= 1e-10
            assert connection_defect(z) <= 1e-10


def test_identity_radius():
    with pytest.raises(DomainError):
        wronskian_defect(25)
