import cmath
import math
from enum import Enum
from functools import lru_cache
from typing import (
    List,
    Tuple
)

import mpmath
from loguru import logger
from scipy.optimize import brentq

from airytools.exception import (
    AiryOverflowError,
    ConvergenceError,
    DomainError
)

SUPPORTED_RADIUS = 40.0
IDENTITY_RADIUS = 20.0
SWITCH_RADIUS = 8.0
SECTOR_ANGLE = 2.0 * math.pi / 3.0
SERIES_TOLERANCE = 1e-13
MAX_ZERO_INDEX = 20

UNIT_ROUNDOFF = 2.0 ** -53
OMEGA = cmath.exp(2j * math.pi / 3)
OMEGA_BAR = OMEGA.conjugate()


def _origin_values():
    third = mpmath.mpf(1) / 3
    return 3 ** (-2 * third) / mpmath.gamma(2 * third), 3 ** (-third) / mpmath.gamma(third)


AI_ZERO = float(_origin_values()[0])
AIP_ZERO = -float(_origin_values()[1])


class AiryMethod(Enum):
    SERIES = ("series",)
    ASYMPTOTIC = ("asymptotic",)
    CONNECTION_ROTATED = ("connection-rotated",)

    def __init__(self, tag: str) -> None:
        self.tag = tag


class ZeroKind(Enum):
    OF_AI = ("ai", "Ai")
    OF_AI_PRIME = ("aip", "Ai'")

    def __init__(self, flag: str, label: str) -> None:
        self.flag = flag
        self.label = label

    @classmethod
    def from_flag(cls, flag: str) -> "ZeroKind":
        for kind in cls:
            if kind.flag == flag:
                return kind
        raise DomainError(f"unknown zero kind '{flag}' (expected ai or aip)")


class AiryPair:
    def __init__(
        self,
        ai: complex,
        ai_prime: complex,
        method: AiryMethod,
        est_rel_error: float
    ) -> None:
        self.ai = ai
        self.ai_prime = ai_prime
        self.method = method
        self.est_rel_error = est_rel_error

    def __repr__(self) -> str:
        return (f'AiryPair(ai={self.ai!r}, ai_prime={self.ai_prime!r}, '
                f'method={self.method.tag!r}, est_rel_error={self.est_rel_error:.1e})')

    def __iter__(self):
        yield self.ai
        yield self.ai_prime

    def as_dict(self) -> dict:
        return {
            "ai": [self.ai.real, self.ai.imag],
            "ai_prime": [self.ai_prime.real, self.ai_prime.imag],
            "method": self.method.tag,
            "est_rel_error": self.est_rel_error,
        }


class RealZero:
    def __init__(self, kind: ZeroKind, n: int, value: float) -> None:
        self.kind = kind
        self.n = n
        self.value = value

    def __repr__(self) -> str:
        return f'RealZero(kind={self.kind.flag!r}, n={self.n}, value={self.value!r})'

    def __float__(self) -> float:
        return self.value

    def as_dict(self) -> dict:
        return {"kind": self.kind.flag, "n": self.n, "value": self.value}


def _maclaurin(z, one, c1, c2, tiny):
    # Ai = c1 f - c2 g, with f, g the two power series solutions at the origin
    z3 = z * z * z
    t_f, t_g, t_fp, t_gp = one, z, z * z / 2, one
    f, g, fp, gp = t_f, t_g, 0 * one, t_gp
    weight = abs(c1) + abs(c2 * z)
    weight_prime = abs(c2)
    k = 1
    while True:
        t_f = t_f * z3 / ((3 * k - 1) * (3 * k))
        t_g = t_g * z3 / ((3 * k) * (3 * k + 1))
        t_gp = t_gp * z3 / ((3 * k - 2) * (3 * k))
        if k >= 2:
            t_fp = t_fp * z3 / ((3 * k - 3) * (3 * k - 1))
        f += t_f
        g += t_g
        gp += t_gp
        fp += t_fp
        term = abs(c1 * t_f) + abs(c2 * t_g)
        term_prime = abs(c1 * t_fp) + abs(c2 * t_gp)
        weight += term
        weight_prime += term_prime
        if k > 2 and term + term_prime <= tiny * (weight + weight_prime):
            break
        k += 1
    return c1 * f - c2 * g, c1 * fp - c2 * gp, weight, weight_prime


def _loss(weight, value) -> float:
    return float(weight) / max(float(abs(value)), 1e-300 * float(weight), 1e-300)


def _series(z: complex) -> AiryPair:
    ai, aip, weight, weight_prime = _maclaurin(z, 1.0, AI_ZERO, -AIP_ZERO, 1e-18)
    loss = max(_loss(weight, ai), _loss(weight_prime, aip))
    est = 4.0 * UNIT_ROUNDOFF * loss
    if est <= SERIES_TOLERANCE:
        return AiryPair(complex(ai), complex(aip), AiryMethod.SERIES, max(est, UNIT_ROUNDOFF))

    lost_digits = min(math.log10(loss), 60.0)
    dps = 20 + int(math.ceil(lost_digits))
    logger.debug(f"Maclaurin cancellation at z={z!r} loses {lost_digits:.1f} digits; retry with dps={dps}")
    with mpmath.workdps(dps):
        mz = mpmath.mpc(z.real, z.imag)
        c1, c2 = _origin_values()
        ai, aip, _, _ = _maclaurin(mz, mpmath.mpf(1), c1, c2, mpmath.mpf(10) ** (-dps - 2))
        result = AiryPair(complex(ai), complex(aip), AiryMethod.SERIES, UNIT_ROUNDOFF)
    return result


def _asymptotic(z: complex) -> Tuple[complex, complex, float]:
    zeta = (2.0 / 3.0) * z ** 1.5
    if -zeta.real > 700.0:
        raise AiryOverflowError(f"Ai({z!r}) exceeds the floating range (exponent {-zeta.real:.1f})")
    inv_zeta = -1.0 / zeta
    u = 1.0
    power = 1.0 + 0j
    sum_u = 1.0 + 0j
    sum_v = 1.0 + 0j
    previous = math.inf
    omitted = 0.0
    for k in range(1, 60):
        u *= (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216.0 * k)
        v = -(6 * k + 1) / (6 * k - 1) * u
        power *= inv_zeta
        term_u = u * power
        term_v = v * power
        size = max(abs(term_u), abs(term_v))
        if size >= previous:
            omitted = size
            break
        sum_u += term_u
        sum_v += term_v
        previous = size
        omitted = size
        if size < 1e-17:
            break
    prefactor = cmath.exp(-zeta) / (2.0 * math.sqrt(math.pi))
    quarter = z ** 0.25
    ai = prefactor * sum_u / quarter
    aip = -prefactor * sum_v * quarter
    est = omitted / min(abs(sum_u), abs(sum_v)) + 4.0 * UNIT_ROUNDOFF
    return ai, aip, est


def _rotated(z: complex) -> AiryPair:
    ai_minus, aip_minus, est_minus = _asymptotic(OMEGA_BAR * z)
    ai_plus, aip_plus, est_plus = _asymptotic(OMEGA * z)
    terms = (OMEGA_BAR * ai_minus, OMEGA * ai_plus)
    terms_prime = (OMEGA * aip_minus, OMEGA_BAR * aip_plus)
    ai = -(terms[0] + terms[1])
    aip = -(terms_prime[0] + terms_prime[1])
    scale = max(abs(terms[0]), abs(terms[1]))
    scale_prime = max(abs(terms_prime[0]), abs(terms_prime[1]))
    est = max(
        (abs(terms[0]) * est_minus + abs(terms[1]) * est_plus) / scale,
        (abs(terms_prime[0]) * est_minus + abs(terms_prime[1]) * est_plus) / scale_prime,
    )
    return AiryPair(ai, aip, AiryMethod.CONNECTION_ROTATED, est)


def eval_pair(z: complex) -> AiryPair:
    """Ai(z) and Ai'(z) for |z| <= 40.

    Maclaurin series inside the switch radius, asymptotic expansion in
    |arg z| <= 2pi/3 outside it, and the rotation identity
    Ai(z) = -w Ai(wz) - conj(w) Ai(conj(w) z), w = exp(2i pi/3), elsewhere.
    z^(3/2) and z^(1/4) use the principal branch.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {z!r}")
    radius = abs(z)
    if radius > SUPPORTED_RADIUS:
        raise DomainError(f"|z| = {radius:.3g} outside the supported disk |z| <= {SUPPORTED_RADIUS:g}")
    if radius <= SWITCH_RADIUS:
        return _series(z)
    if abs(cmath.phase(z)) <= SECTOR_ANGLE:
        ai, aip, est = _asymptotic(z)
        return AiryPair(ai, aip, AiryMethod.ASYMPTOTIC, est)
    return _rotated(z)


def _zero_guess(kind: ZeroKind, n: int) -> float:
    if kind is ZeroKind.OF_AI:
        t = 3.0 * math.pi * (4 * n - 1) / 8.0
        return -t ** (2.0 / 3.0) * (1.0 + 5.0 / 48.0 * t ** -2 - 5.0 / 36.0 * t ** -4)
    t = 3.0 * math.pi * (4 * n - 3) / 8.0
    return -t ** (2.0 / 3.0) * (1.0 - 7.0 / 48.0 * t ** -2 + 35.0 / 288.0 * t ** -4)


@lru_cache(maxsize=None)
def _real_zero_value(kind: ZeroKind, n: int) -> float:
    if kind is ZeroKind.OF_AI:
        def target(x):
            return eval_pair(x).ai.real

        def newton_step(x):
            pair = eval_pair(x)
            return pair.ai.real / pair.ai_prime.real
    else:
        def target(x):
            return eval_pair(x).ai_prime.real

        def newton_step(x):
            pair = eval_pair(x)
            return pair.ai_prime.real / (x * pair.ai.real)

    guess = _zero_guess(kind, n)
    half_width = 0.4 * math.pi / math.sqrt(abs(guess))
    left, right = guess - half_width, min(guess + half_width, -1e-3)
    if target(left) * target(right) > 0:
        raise ConvergenceError(f"no sign change of {kind.label} on [{left:.4f}, {right:.4f}] for n={n}")

    x = brentq(target, left, right, xtol=1e-14, rtol=1e-15, maxiter=200)
    for _ in range(4):
        step = newton_step(x)
        x -= step
        if abs(step) <= 4 * UNIT_ROUNDOFF * abs(x):
            break
    if not left <= x <= right:
        raise ConvergenceError(f"Newton polish left the bracket for {kind.label} zero n={n}")
    logger.debug(f"{kind.label} zero n={n}: {x!r}")
    return x


def real_zero(kind: ZeroKind, n: int) -> RealZero:
    if not 1 <= n <= MAX_ZERO_INDEX:
        raise DomainError(f"zero index n={n} outside 1..{MAX_ZERO_INDEX}")
    return RealZero(kind, n, _real_zero_value(kind, n))


def real_zeros(kind: ZeroKind, count: int) -> List[RealZero]:
    return [real_zero(kind, n) for n in range(1, count + 1)]


def interlacing_holds(n_max: int) -> bool:
    # -a'_n < -a_n < -a'_{n+1}
    for n in range(1, n_max + 1):
        a = -real_zero(ZeroKind.OF_AI, n).value
        ap = -real_zero(ZeroKind.OF_AI_PRIME, n).value
        ap_next = -real_zero(ZeroKind.OF_AI_PRIME, n + 1).value
        if not ap < a < ap_next:
            return False
    return True


def _check_identity_radius(z: complex) -> None:
    if abs(z) > IDENTITY_RADIUS:
        raise DomainError(f"|z| = {abs(z):.3g} outside |z| <= {IDENTITY_RADIUS:g}")


def wronskian_defect(z: complex) -> float:
    """Defect of conj(w) Ai'(conj(w) z) Ai(wz) - w Ai'(wz) Ai(conj(w) z) = i/(2 pi).

    Measured relative to max(1, |term|): both products grow like
    exp(4/3 |z|^(3/2)) near the positive real axis while their difference
    stays i/(2 pi).
    """
    z = complex(z)
    _check_identity_radius(z)
    minus = eval_pair(OMEGA_BAR * z)
    plus = eval_pair(OMEGA * z)
    first = OMEGA_BAR * minus.ai_prime * plus.ai
    second = OMEGA * plus.ai_prime * minus.ai
    defect = abs(first - second - 1j / (2.0 * math.pi))
    return defect / max(1.0, abs(first), abs(second))


def connection_defect(z: complex) -> float:
    z = complex(z)
    _check_identity_radius(z)
    centre = eval_pair(z)
    plus = eval_pair(OMEGA * z)
    minus = eval_pair(OMEGA_BAR * z)
    terms = (centre.ai, OMEGA * plus.ai, OMEGA_BAR * minus.ai)
    terms_prime = (centre.ai_prime, OMEGA_BAR * plus.ai_prime, OMEGA * minus.ai_prime)
    defect = abs(sum(terms)) / (1.0 + max(abs(t) for t in terms))
    defect_prime = abs(sum(terms_prime)) / (1.0 + max(abs(t) for t in terms_prime))
    return max(defect, defect_prime)
