"""Configurable-precision kernel: gamma, Kummer's series, the terminant.

Values are :mod:`mpmath` ``mpf``/``mpc`` numbers.  Precision is never read from
ambient state: every routine takes a :class:`PrecisionPolicy` and evaluates
inside ``mp.workdps`` at the policy's working precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from .errors import (
    DegenerateParameterError,
    IterationLimitError,
    PoleError,
)

__all__ = [
    "PrecisionPolicy",
    "to_mpf",
    "big_gamma",
    "rgamma",
    "kummer_m",
    "terminant_on_stokes",
]

LOG10_E = math.log10(math.e)


@dataclass(frozen=True)
class PrecisionPolicy:
    target_digits: int = 30
    guard_digits: int = 10

    def __post_init__(self):
        if self.target_digits < 1 or self.guard_digits < 0:
            raise ValueError("precision digits must be positive")

    def working(self, allowance: int = 0) -> int:
        return self.target_digits + self.guard_digits + max(0, int(allowance))

    def raised(self, extra: int) -> "PrecisionPolicy":
        """Policy whose target absorbs ``extra`` digits of expected cancellation."""
        return replace(self, target_digits=self.target_digits + max(0, int(extra)))


def to_mpf(value):
    """Convert ints, Fractions, decimal strings and mp numbers at current precision."""
    if isinstance(value, Fraction):
        return mp.mpf(value.numerator) / value.denominator
    if isinstance(value, (mp.mpf, mp.mpc)):
        return +value
    return mp.mpf(value)


def _nearest_int(x):
    n = int(mp.nint(x))
    return n, abs(x - n)


@lru_cache(maxsize=32)
def _spouge_coeffs(a: int, dps: int):
    with mp.workdps(dps):
        out = [mp.sqrt(2 * mp.pi)]
        sign = 1
        fact = mp.mpf(1)
        for k in range(1, a):
            if k > 1:
                fact *= k - 1
            out.append(sign * mp.power(a - k, k - mp.mpf(0.5)) * mp.exp(a - k) / fact)
            sign = -sign
        return tuple(out)


def _spouge_parameter(digits: int) -> int:
    # relative error <= a**-0.5 * (2*pi)**-(a + 0.5)
    a = 2
    while -0.5 * math.log10(a) - (a + 0.5) * math.log10(2 * math.pi) > -digits:
        a += 1
    return a


def _spouge(x, digits: int):
    """Gamma(x) for x >= 1."""
    a = _spouge_parameter(digits)
    dps = digits + int(a * math.log10(2 * math.pi)) + 10
    cs = _spouge_coeffs(a, dps)
    with mp.workdps(dps):
        z = to_mpf(x) - 1
        s = cs[0]
        for k in range(1, a):
            s += cs[k] / (z + k)
        return mp.power(z + a, z + mp.mpf(0.5)) * mp.exp(-(z + a)) * s


def big_gamma(x, policy: PrecisionPolicy = PrecisionPolicy()):
    """Gamma function by Spouge's formula, with reflection below 1/2."""
    wp = policy.working()
    with mp.workdps(wp):
        x = to_mpf(x)
        if x <= 0:
            n, dist = _nearest_int(x)
            if dist <= mp.mpf(10) ** (1 - wp) * max(1, abs(x)):
                raise PoleError(n)
        if x < 0.5:
            # Gamma(x) Gamma(1 - x) = pi / sin(pi x)
            return +(mp.pi / (mp.sinpi(x) * big_gamma(1 - x, policy)))
        if x < 1:
            return +(_spouge(x + 1, wp) / x)
        return +_spouge(x, wp)


def rgamma(x, policy: PrecisionPolicy = PrecisionPolicy()):
    """``1/Gamma(x)``, zero at the poles."""
    try:
        return 1 / big_gamma(x, policy)
    except PoleError:
        return mp.mpf(0)


def kummer_m(a, b, x, policy: PrecisionPolicy = PrecisionPolicy()):
    """Kummer's function 1F1(a; b; x) by guarded Taylor summation.

    Negative ``x`` gets ``ceil(|x| log10 e) + 5`` extra digits because the
    largest term exceeds the result by roughly ``e**|x|``.
    """
    with mp.workdps(policy.working()):
        xa, xb, xx = to_mpf(a), to_mpf(b), to_mpf(x)
        if xb <= 0 and xb == mp.nint(xb):
            raise ValueError(f"b = {b} is zero or a negative integer")
    allowance = math.ceil(abs(float(xx)) * LOG10_E) + 5 if xx < 0 else 0
    wp = policy.working(allowance)
    cap = int(10 * (abs(float(xa)) + abs(float(xb)) + abs(float(xx)))) + 1000
    ab, bb, xabs = abs(float(xa)), abs(float(xb)), abs(float(xx))
    with mp.workdps(wp):
        xa, xb, xx = to_mpf(a), to_mpf(b), to_mpf(x)
        eps = mp.mpf(10) ** (-wp)
        term = mp.mpf(1)
        total = mp.mpf(1)
        for n in range(cap):
            term = term * (xa + n) * xx / ((xb + n) * (n + 1))
            if term == 0:
                break
            total += term
            m = n + 1
            if m > bb + 1:
                # bound on every later ratio |t_{k+1}/t_k| for k >= m
                bound = xabs * (m + ab) / ((m - bb) * (m + 1))
                if bound < 0.5 and abs(term) * bound * 2 <= eps * abs(total):
                    break
        else:
            raise IterationLimitError(f"1F1({a};{b};{x}) did not converge in {cap} terms")
    with mp.workdps(policy.working()):
        return +total


def _terminant_allowance(nu: float, x: float) -> int:
    # |xi(nu)| * |gamma_low| ~ Gamma(nu) x**(1 - nu) e**x relative to O(1)
    mag = math.lgamma(nu) / math.log(10) + (1 - nu) * math.log10(x) + x * LOG10_E
    return max(0, math.ceil(mag)) + 5


def _ei(x):
    # exponential integral Ei(x), x > 0, positive-term series
    total = mp.euler + mp.log(x)
    term = mp.mpf(1)
    eps = mp.eps
    k = 1
    s = mp.mpf(0)
    while True:
        term = term * x / k
        add = term / k
        s += add
        if k > x and add < eps * s:
            break
        k += 1
    return total + s


def terminant_on_stokes(nu, x, policy: PrecisionPolicy = PrecisionPolicy()):
    """``T_nu(x e^{i pi})`` with ``T_nu(z) = e^{i pi nu} Gamma(nu) Gamma(1-nu, z) / (2 pi i)``.

    Non-integer ``nu`` goes through ``Gamma(1-nu) - gamma_low(1-nu, z)`` with
    the lower incomplete gamma written as ``z**s/s * 1F1(s; s+1; -z)`` and
    ``z**s = x**s e^{i pi s}``.  Integer ``nu`` uses the exponential integral
    ``E1(x e^{i pi}) = -Ei(x) - i pi`` and the downward recurrence in ``s``.
    """
    with mp.workdps(policy.working()):
        nu_f, x_f = to_mpf(nu), to_mpf(x)
        if not nu_f > 0 or not x_f > 0:
            raise ValueError("terminant_on_stokes needs nu > 0 and x > 0")
        n, dist = _nearest_int(nu_f)
        exact_int = dist <= mp.mpf(10) ** (2 - policy.working()) * nu_f
    if not exact_int and dist < mp.mpf(10) ** (-policy.target_digits):
        raise DegenerateParameterError(
            f"nu = {nu} lies within 1e-{policy.target_digits} of the integer {n}"
        )
    allowance = _terminant_allowance(float(nu_f), float(x_f))
    if not exact_int:
        allowance += max(0, math.ceil(-math.log10(float(dist))))
    wp = policy.working(allowance)
    inner = PrecisionPolicy(wp, policy.guard_digits)
    with mp.workdps(wp):
        x_ = to_mpf(x)
        if exact_int:
            # Gamma(0, z) = E1(z), then Gamma(s, z) = (Gamma(s+1, z) - z**s e**-z) / s
            upper = mp.mpc(-_ei(x_), -mp.pi)
            ez = mp.exp(x_)
            for k in range(1, n):
                zpow = (-1) ** k * mp.power(x_, -k)
                upper = (upper - zpow * ez) / (-k)
            xi = (-1) ** n * mp.factorial(n - 1) / (2 * mp.pi * 1j)
        else:
            nu_ = to_mpf(nu)
            s = 1 - nu_
            zs = mp.power(x_, s) * mp.expjpi(s)
            lower = zs / s * kummer_m(s, s + 1, x_, inner)
            upper = big_gamma(s, inner) - lower
            xi = mp.expjpi(nu_) * big_gamma(nu_, inner) / (2 * mp.pi * 1j)
        value = xi * upper
    with mp.workdps(policy.working()):
        return +value
