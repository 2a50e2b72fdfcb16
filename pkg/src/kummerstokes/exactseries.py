"""Exact truncated power series over polynomials in a single symbol gamma.

Everything here is rational arithmetic on :class:`fractions.Fraction`; no
floating point is involved.  The pipeline culminates in :func:`g_polys`, which
reverts the mapping ``w**2/2 = tau - log(tau) - 1`` about ``tau = 1`` and
expands ``tau**(gamma - 1) / (1 - tau) * dtau/dw`` as a Laurent series in
``w``.  The regular part gives the Stokes-line coefficients ``G_k(gamma)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    CacheError,
    DerivationError,
    NeedsLaurentError,
    NotInvertibleError,
)

__all__ = [
    "GammaPoly",
    "PowerSeries",
    "LaurentSeries",
    "GhatReport",
    "PRINTED_GHAT",
    "ps_arith",
    "ps_revert",
    "ps_pow_sym",
    "tau_series",
    "g_polys",
    "ghat_check",
    "save_gpolys",
    "load_gpolys",
]


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted in exact arithmetic")
    return Fraction(value)


class GammaPoly:
    """Polynomial in ``gamma`` with rational coefficients (index = power)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_frac(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def const(cls, value) -> "GammaPoly":
        return cls((value,))

    @classmethod
    def gamma(cls) -> "GammaPoly":
        return cls((0, 1))

    @classmethod
    def coerce(cls, value) -> "GammaPoly":
        return value if isinstance(value, GammaPoly) else cls.const(value)

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def constant(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __add__(self, other):
        other = GammaPoly.coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return GammaPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return GammaPoly(-v for v in self.coeffs)

    def __sub__(self, other):
        return self + (-GammaPoly.coerce(other))

    def __rsub__(self, other):
        return GammaPoly.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GammaPoly):
            k = _frac(other)
            return GammaPoly(v * k for v in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return GammaPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, u in enumerate(self.coeffs):
            if u:
                for j, v in enumerate(other.coeffs):
                    out[i + j] += u * v
        return GammaPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        k = _frac(other)
        return GammaPoly(v / k for v in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, GammaPoly):
            return self.coeffs == other.coeffs
        try:
            return self == GammaPoly.const(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, g):
        """Evaluate at ``g`` by Horner's rule (exact for rational ``g``)."""
        acc = 0 * g
        for v in reversed(self.coeffs):
            acc = acc * g + v
        return acc

    def __repr__(self):
        if not self.coeffs:
            return "GammaPoly(0)"
        terms = []
        for i, v in enumerate(self.coeffs):
            if v:
                terms.append(str(v) if i == 0 else f"({v})*g^{i}")
        return "GammaPoly(" + " + ".join(terms) + ")"


_ZERO = GammaPoly()
_ONE = GammaPoly.const(1)


class PowerSeries:
    """Truncated series ``sum c_i w**i`` known exactly for ``i < order``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence, order: int | None = None):
        cs = [GammaPoly.coerce(v) for v in coeffs]
        if order is None:
            order = len(cs)
        if order <= 0:
            raise ValueError(f"series order must be positive, got {order}")
        cs = cs[:order] + [_ZERO] * (order - len(cs))
        self.coeffs: tuple[GammaPoly, ...] = tuple(cs)
        self.order = order

    @classmethod
    def variable(cls, order: int) -> "PowerSeries":
        return cls([0, 1], order)

    def __getitem__(self, i: int) -> GammaPoly:
        if i >= self.order:
            raise IndexError(f"coefficient {i} beyond series order {self.order}")
        return self.coeffs[i]

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def __repr__(self):
        return f"PowerSeries({list(self.coeffs)!r}, order={self.order})"

    def is_rational(self) -> bool:
        return all(c.is_const() for c in self.coeffs)

    def rationals(self) -> list[Fraction]:
        if not self.is_rational():
            raise ValueError("series has gamma-dependent coefficients")
        return [c.constant() for c in self.coeffs]

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self.coeffs, min(order, self.order))

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            other = PowerSeries([other], self.order)
        n = min(self.order, other.order)
        return PowerSeries([self.coeffs[i] + other.coeffs[i] for i in range(n)], n)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        if not isinstance(other, PowerSeries):
            other = PowerSeries([other], self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries([c * other for c in self.coeffs], self.order)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n):
            acc = _ZERO
            for i in range(k + 1):
                if a[i].coeffs and b[k - i].coeffs:
                    acc = acc + a[i] * b[k - i]
            out.append(acc)
        return PowerSeries(out, n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries([c / other for c in self.coeffs], self.order)
        return self * other.reciprocal()

    def reciprocal(self) -> "PowerSeries":
        c0 = self.coeffs[0]
        if c0.is_zero():
            raise NeedsLaurentError("constant term is zero; use LaurentSeries")
        if not c0.is_const():
            raise ValueError("constant term must be a rational constant")
        inv0 = 1 / c0.constant()
        out = [GammaPoly.const(inv0)]
        for k in range(1, self.order):
            acc = _ZERO
            for i in range(1, k + 1):
                if self.coeffs[i].coeffs and out[k - i].coeffs:
                    acc = acc + self.coeffs[i] * out[k - i]
            out.append(-acc * inv0)
        return PowerSeries(out, self.order)

    def derivative(self) -> "PowerSeries":
        if self.order < 2:
            raise ValueError("derivative of an order-1 series has no valid terms")
        return PowerSeries(
            [self.coeffs[i] * i for i in range(1, self.order)], self.order - 1
        )

    def integral(self) -> "PowerSeries":
        """Antiderivative with zero constant term."""
        return PowerSeries(
            [_ZERO] + [self.coeffs[i] / (i + 1) for i in range(self.order)],
            self.order + 1,
        )

    def divide_by_w(self) -> "PowerSeries":
        """Exact quotient by ``w``; the constant term must vanish."""
        if not self.coeffs[0].is_zero():
            raise NeedsLaurentError("constant term is nonzero")
        if self.order < 2:
            raise ValueError("quotient would have no valid terms")
        return PowerSeries(self.coeffs[1:], self.order - 1)

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """``self(inner(w))``; ``inner`` must have zero constant term."""
        if not inner.coeffs[0].is_zero():
            raise ValueError("inner series must have zero constant term")
        n = min(self.order, inner.order)
        inner = inner.truncate(n)
        acc = PowerSeries([self.coeffs[n - 1]], n)
        for i in range(n - 2, -1, -1):
            acc = acc * inner + self.coeffs[i]
        return acc

    def log(self) -> "PowerSeries":
        """``log`` of a series with constant term exactly 1."""
        if self.coeffs[0] != _ONE:
            raise ValueError("log requires constant term 1")
        if self.order == 1:
            return PowerSeries([_ZERO], 1)
        return (self.derivative() / self.truncate(self.order - 1)).integral()

    def exp(self) -> "PowerSeries":
        """``exp`` of a series with zero constant term."""
        if not self.coeffs[0].is_zero():
            raise ValueError("exp requires zero constant term")
        weighted = [self.coeffs[k] * k for k in range(self.order)]
        out = [_ONE]
        for n in range(1, self.order):
            acc = _ZERO
            for k in range(1, n + 1):
                if weighted[k].coeffs and out[n - k].coeffs:
                    acc = acc + weighted[k] * out[n - k]
            out.append(acc / n)
        return PowerSeries(out, self.order)


@dataclass(frozen=True)
class LaurentSeries:
    """``pole_coeff / w + tail(w)``."""

    pole_coeff: GammaPoly
    tail: PowerSeries

    @classmethod
    def from_quotient(cls, num: PowerSeries, den: PowerSeries) -> "LaurentSeries":
        """``num / den`` where ``den`` has a simple zero at ``w = 0``."""
        if not den.coeffs[0].is_zero():
            raise ValueError("denominator has no zero at w = 0; use plain division")
        reduced = den.divide_by_w()
        if reduced.coeffs[0].is_zero():
            raise NeedsLaurentError("pole of order greater than one")
        q = num.truncate(reduced.order) / reduced
        if q.order < 2:
            raise ValueError("not enough terms for a Laurent tail")
        return cls(q.coeffs[0], PowerSeries(q.coeffs[1:], q.order - 1))


def ps_arith(tag: str, s: PowerSeries, t: PowerSeries) -> PowerSeries:
    if tag == "add":
        return s + t
    if tag == "mul":
        return s * t
    if tag == "div":
        return s / t
    raise ValueError(f"unknown series operation {tag!r}")


def ps_revert(s: PowerSeries) -> PowerSeries:
    """Compositional inverse by Lagrange inversion.

    ``[w^n] r = (1/n) [w^(n-1)] (w / s)^n``.
    """
    if not s.coeffs[0].is_zero():
        raise NotInvertibleError("series has a nonzero constant term")
    if s.order < 2:
        raise NotInvertibleError("series too short to revert")
    lin = s.coeffs[1]
    if lin.is_zero() or not lin.is_const():
        raise NotInvertibleError("linear coefficient must be a nonzero rational")
    n_max = s.order
    q = s.divide_by_w().reciprocal()  # w/s, order n_max - 1
    out = [_ZERO]
    power = PowerSeries([_ONE], q.order)
    for n in range(1, n_max):
        power = power * q
        out.append(power.coeffs[n - 1] / n)
    return PowerSeries(out, n_max)


def ps_pow_sym(s: PowerSeries, shift) -> PowerSeries:
    """``s ** shift`` for symbolic or rational ``shift``; needs ``s(0) = 1``."""
    if s.coeffs[0] != _ONE:
        raise ValueError("ps_pow_sym requires constant term 1")
    shift = GammaPoly.coerce(shift)
    return (s.log() * shift).exp()


@lru_cache(maxsize=None)
def tau_series(n: int) -> PowerSeries:
    """``tau(w)`` with ``w**2/2 = tau - log(tau) - 1`` and ``w ~ tau - 1``."""
    if n < 2:
        raise ValueError("tau_series needs order >= 2")
    # tau - log tau - 1 = s**2 * q(s) / 2 with s = tau - 1
    q = PowerSeries(
        [Fraction(2 * (-1) ** m, m + 2) for m in range(n - 1)], n - 1
    )
    root = ps_pow_sym(q, Fraction(1, 2))
    w_of_s = PowerSeries([_ZERO] + list(root.coeffs), n)
    s_of_w = ps_revert(w_of_s)
    return s_of_w + 1


@lru_cache(maxsize=None)
def _g_laurent(n: int) -> LaurentSeries:
    tau = tau_series(n)
    one_minus_tau = 1 - tau
    num = ps_pow_sym(tau, GammaPoly((-1, 1))) * tau.derivative()
    f = LaurentSeries.from_quotient(num, one_minus_tau)
    if f.pole_coeff != GammaPoly.const(-1):
        raise DerivationError(f"pole coefficient is {f.pole_coeff}, expected -1")
    return f


def g_polys(k_max: int) -> list[GammaPoly]:
    """``[G_0(gamma), ..., G_kmax(gamma)]``."""
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    f = _g_laurent(k_max + 4)
    if f.tail.order <= k_max:
        raise DerivationError("Laurent tail shorter than requested")
    return list(f.tail.coeffs[: k_max + 1])


def _gp(den, *nums) -> GammaPoly:
    return GammaPoly(Fraction(v, den) for v in nums)


# 6**(2k) G_{2k}(gamma), k = 0..4; constant of index 6 is -3626.
PRINTED_GHAT: dict[int, GammaPoly] = {
    0: GammaPoly((Fraction(2, 3), -1)),
    1: _gp(15, 46, -225, 270, -90),
    2: _gp(70, 230, -3969, 11340, -11760, 5040, -756),
    3: _gp(350, -3626, -17781, 183330, -397530, 370440, -170100, 37800, -3240),
    4: _gp(
        231000,
        -4032746, 43924815, 88280280, -743046480, 1353607200,
        -1160830440, 541870560, -141134400, 19245600, -1069200,
    ),
}


@dataclass(frozen=True)
class GhatReport:
    k: int
    ok: bool
    # (power of gamma, printed coefficient, derived coefficient)
    mismatches: tuple = field(default=())

    def __bool__(self):
        return self.ok


def ghat_check(k: int, gpolys: Sequence[GammaPoly] | None = None) -> GhatReport:
    """Compare ``6**(2k) G_{2k}`` with the printed polynomial, monomial by monomial."""
    if k not in PRINTED_GHAT:
        raise ValueError("printed polynomials exist only for k = 0..4")
    if gpolys is None:
        gpolys = g_polys(2 * k)
    derived = gpolys[2 * k] * Fraction(6) ** (2 * k)
    printed = PRINTED_GHAT[k]
    width = max(len(derived.coeffs), len(printed.coeffs))
    mismatches = []
    for i in range(width):
        p = printed.coeffs[i] if i < len(printed.coeffs) else Fraction(0)
        d = derived.coeffs[i] if i < len(derived.coeffs) else Fraction(0)
        if p != d:
            mismatches.append((i, p, d))
    return GhatReport(k, not mismatches, tuple(mismatches))


CACHE_FORMAT = 1


def save_gpolys(path, gpolys: Sequence[GammaPoly]) -> None:
    doc = {
        "format": CACHE_FORMAT,
        "gpolys": [
            {"k": k, "coeffs": [f"{c.numerator}/{c.denominator}" for c in g.coeffs]}
            for k, g in enumerate(gpolys)
        ],
    }
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def load_gpolys(path) -> list[GammaPoly]:
    """Read a coefficient cache; raises :class:`CacheError` unless it verifies."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CacheError(f"unreadable cache: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != CACHE_FORMAT:
        raise CacheError("unsupported cache format")
    try:
        entries = sorted(doc["gpolys"], key=lambda e: e["k"])
        if [e["k"] for e in entries] != list(range(len(entries))):
            raise CacheError("cache orders are not contiguous from 0")
        gpolys = [GammaPoly(Fraction(c) for c in e["coeffs"]) for e in entries]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, CacheError):
            raise
        raise CacheError(f"malformed cache: {exc}") from exc
    if len(gpolys) < 9:
        raise CacheError("cache holds fewer than 9 orders")
    for k in range(5):
        report = ghat_check(k, gpolys)
        if not report.ok:
            raise CacheError(f"cache fails printed-polynomial check at k={k}")
    return gpolys
