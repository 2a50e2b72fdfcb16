"""Exponentially improved expansion of 1F1(a; b; x) on the positive real axis.

With the exponentially large series optimally truncated at ``m0`` terms, the
remainder

    F(x) = 1F1(a; b; x)/Gamma(b)
           - x**(a-b) e**x / Gamma(a) * sum_{j<m0} (b-a)_j (1-a)_j / (j! x**j)

is represented by the algebraic expansion

    H_M(x) = x**-a / Gamma(b-a) * { cos(pi a) sum_{j<=M} (-1)**j A_j x**-j
             + 2 sin(pi a) / sqrt(2 pi x) * sum_{j<=M} (-1)**j B_j x**-j }

where ``A_j = (a)_j (1+a-b)_j / j!`` and the ``B_j`` mix the ``A_j`` with the
Stokes-line coefficients ``G_{2k}`` evaluated at ``gamma = alpha - j``.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import mpmath as mp

from .bigeval import (
    LOG10_E,
    PrecisionPolicy,
    big_gamma,
    kummer_m,
    rgamma,
    terminant_on_stokes,
    to_mpf,
)
from .errors import NeedsMoreCoefficientsError, TruncationError
from .exactseries import GammaPoly, g_polys

__all__ = [
    "to_fraction",
    "KummerParams",
    "TruncationChoice",
    "CoeffTable",
    "StokesRow",
    "StokesReport",
    "TerminantCheck",
    "coeff_a",
    "choose_m0",
    "coeff_b",
    "coeff_table",
    "exp_sum_opt",
    "residual_f",
    "negative_axis_residual",
    "algebraic_h",
    "stokes_report",
    "terminant_consistency",
]

DEFAULT_K = 12


def to_fraction(value) -> Fraction:
    """Exact rational from ints, Fractions, ``"p/q"`` or decimal strings, floats, mpf."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, mp.mpf):
        man, exp = value.man_exp
        return Fraction(man) * Fraction(2) ** exp
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {value!r} to an exact rational")


def _is_nonpositive_int(q: Fraction) -> bool:
    return q.denominator == 1 and q <= 0


def _pochhammer(a: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out


@dataclass(frozen=True)
class KummerParams:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", to_fraction(self.a))
        object.__setattr__(self, "b", to_fraction(self.b))
        if _is_nonpositive_int(self.a):
            raise ValueError(f"a = {self.a}: polynomial case is excluded")
        if _is_nonpositive_int(self.b):
            raise ValueError(f"b = {self.b} is zero or a negative integer")

    @property
    def integer_a(self) -> bool:
        return self.a.denominator == 1 and self.a > 0

    @property
    def b_minus_a_at_pole(self) -> bool:
        return _is_nonpositive_int(self.b - self.a)


@dataclass(frozen=True)
class TruncationChoice:
    m0: int
    alpha: Optional[Fraction]
    rule: str = "smallest-term"

    def __post_init__(self):
        if self.m0 < 1:
            raise TruncationError(f"m0 = {self.m0} must be positive")
        if self.alpha is not None and abs(self.alpha) >= 1:
            raise TruncationError(f"|alpha| = {abs(self.alpha)} is not below 1")

    @property
    def terminating(self) -> bool:
        return self.alpha is None

    def gamma_of(self, j: int) -> Fraction:
        if self.alpha is None:
            raise ValueError("alpha is undefined for a terminating exponential sum")
        return self.alpha - j


def coeff_a(j: int, p: KummerParams) -> Fraction:
    if j < 0:
        raise ValueError("j must be non-negative")
    num = _pochhammer(p.a, j) * _pochhammer(1 + p.a - p.b, j)
    return num / math.factorial(j)


def _exp_terms(p: KummerParams, x: Fraction, count: int) -> list[Fraction]:
    """``(b-a)_j (1-a)_j / (j! x**j)`` for ``j < count``."""
    out = [Fraction(1)]
    for j in range(1, count):
        out.append(out[-1] * (p.b - p.a + j - 1) * (1 - p.a + j - 1) / (j * x))
    return out


def choose_m0(p: KummerParams, x, m0: int | None = None) -> TruncationChoice:
    """Optimal truncation index of the exponential series.

    The default rule takes the first ``j >= 1`` whose term is no smaller than
    its predecessor, then steps ``m0`` once toward ``|alpha| < 1``.
    """
    x = to_fraction(x)
    if p.integer_a:
        return TruncationChoice(int(p.a), None, rule="terminating")
    if p.b_minus_a_at_pole:
        # (b-a)_j vanishes for j > a-b: the exponential sum is a polynomial
        return TruncationChoice(int(1 + p.a - p.b), None, rule="terminating")
    shift = 2 * p.a - p.b
    if m0 is not None:
        return TruncationChoice(m0, m0 - x - shift, rule="override")
    if not x > max(4, abs(p.a) + abs(p.b)):
        raise ValueError(f"x = {x} is outside the asymptotic regime")
    cap = int(2 * x + 2 * (abs(p.a) + abs(p.b))) + 10
    terms = _exp_terms(p, x, cap)
    for j in range(1, cap):
        if abs(terms[j]) >= abs(terms[j - 1]) and terms[j] != 0:
            break
    else:
        raise TruncationError("exponential series has no smallest term in range")
    alpha = j - x - shift
    if alpha >= 1:
        j -= 1
    elif alpha <= -1:
        j += 1
    alpha = j - x - shift
    if abs(alpha) >= 1 or j < 1:
        raise TruncationError(f"no m0 near {j} gives |alpha| < 1")
    return TruncationChoice(j, alpha)


def coeff_b(
    j: int,
    p: KummerParams,
    t: TruncationChoice,
    K: int = DEFAULT_K,
    gpolys: Sequence[GammaPoly] | None = None,
) -> Fraction:
    """``B_j = sum_k (-2)**k (1/2)_k A_{j-k} G_{2k}(alpha - j + k)``, exactly."""
    if j > K:
        raise NeedsMoreCoefficientsError(2 * j, 2 * K)
    if gpolys is None:
        gpolys = g_polys(2 * K)
    if len(gpolys) <= 2 * j:
        raise NeedsMoreCoefficientsError(2 * j, len(gpolys) - 1)
    total = Fraction(0)
    half_poch = Fraction(1)
    for k in range(j + 1):
        if k:
            half_poch *= Fraction(1, 2) + k - 1
        total += (-2) ** k * half_poch * coeff_a(j - k, p) * gpolys[2 * k](t.gamma_of(j - k))
    return total


@dataclass(frozen=True)
class CoeffTable:
    A: tuple
    B: tuple
    K_used: int


def coeff_table(
    p: KummerParams,
    t: TruncationChoice,
    jmax: int,
    K: int = DEFAULT_K,
    gpolys: Sequence[GammaPoly] | None = None,
) -> CoeffTable:
    gp = gpolys if gpolys is not None else g_polys(2 * K)
    A = tuple(coeff_a(j, p) for j in range(jmax + 1))
    B = tuple(coeff_b(j, p, t, K, gp) for j in range(jmax + 1))
    return CoeffTable(A, B, K)


def _cancellation(x: Fraction) -> int:
    return math.ceil(float(abs(x)) * LOG10_E) + 5


def _exp_prefactor_terms(p, x, t):
    return sum(_exp_terms(p, x, t.m0), Fraction(0))


def exp_sum_opt(p: KummerParams, x, t: TruncationChoice, policy: PrecisionPolicy = PrecisionPolicy()):
    """``x**(a-b) e**x / Gamma(a) * sum_{j<m0} t_j``; the sum is formed exactly."""
    x = to_fraction(x)
    s = _exp_prefactor_terms(p, x, t)
    inner = policy.raised(_cancellation(x))
    with mp.workdps(inner.working()):
        xf = to_mpf(x)
        val = mp.power(xf, to_mpf(p.a - p.b)) * mp.exp(xf) / big_gamma(p.a, inner) * to_mpf(s)
    with mp.workdps(policy.working()):
        return +val


def residual_f(p: KummerParams, x, t: TruncationChoice, policy: PrecisionPolicy = PrecisionPolicy()):
    """``1F1(a;b;x)/Gamma(b)`` minus the optimally truncated exponential sum."""
    x = to_fraction(x)
    inner = policy.raised(_cancellation(x))
    with mp.workdps(inner.working()):
        m = kummer_m(p.a, p.b, x, inner)
        val = m * rgamma(p.b, inner) - exp_sum_opt(p, x, t, inner)
    with mp.workdps(policy.working()):
        return +val


def negative_axis_residual(p: KummerParams, x, t: TruncationChoice, policy: PrecisionPolicy = PrecisionPolicy()):
    """``1F1(b-a;b;-x)/Gamma(b) - x**(a-b)/Gamma(a) sum_{j<m0} t_j``.

    By Kummer's transformation this is ``e**-x`` times :func:`residual_f`; the
    two are computed along independent paths.
    """
    x = to_fraction(x)
    s = _exp_prefactor_terms(p, x, t)
    # result is O(e**-x x**-a); the subtracted pieces are O(x**(a-b))
    inner = policy.raised(_cancellation(x))
    with mp.workdps(inner.working()):
        xf = to_mpf(x)
        m = kummer_m(p.b - p.a, p.b, -xf, inner)
        alg = mp.power(xf, to_mpf(p.a - p.b)) / big_gamma(p.a, inner) * to_mpf(s)
        val = m * rgamma(p.b, inner) - alg
    with mp.workdps(policy.working()):
        return +val


@dataclass(frozen=True)
class HTerms:
    value: object
    first_omitted_A: object
    first_omitted_B: object


def _algebraic_terms(p, x, t, M, policy, K, gpolys):
    if M < 0:
        raise ValueError("M must be non-negative")
    x = to_fraction(x)
    with_b = not p.integer_a and not p.b_minus_a_at_pole
    if with_b and M > K:
        raise NeedsMoreCoefficientsError(2 * M, 2 * K)
    with mp.workdps(policy.working()):
        xf = to_mpf(x)
        if p.b_minus_a_at_pole:
            zero = mp.mpf(0)
            return HTerms(zero, zero, zero)
        pref = mp.power(xf, -to_mpf(p.a)) * rgamma(p.b - p.a, policy)
        cos_a = mp.cospi(to_mpf(p.a))
        sin_a = mp.sinpi(to_mpf(p.a)) if with_b else mp.mpf(0)
        b_pref = 2 * sin_a / mp.sqrt(2 * mp.pi * xf)

        def alt(coeffs):
            return to_mpf(sum((Fraction(-1) ** j * c / x**j for j, c in enumerate(coeffs)), Fraction(0)))

        A = [coeff_a(j, p) for j in range(M + 2)]
        a_sum = cos_a * alt(A[: M + 1])
        a_next = abs(cos_a * to_mpf(A[M + 1] / x ** (M + 1)) * pref)
        b_sum = mp.mpf(0)
        b_next = None
        if with_b:
            B = [coeff_b(j, p, t, K, gpolys) for j in range(M + 1)]
            b_sum = b_pref * alt(B)
            if M + 1 <= K:
                bn = coeff_b(M + 1, p, t, K, gpolys)
                b_next = abs(b_pref * to_mpf(bn / x ** (M + 1)) * pref)
        else:
            b_next = mp.mpf(0)
        return HTerms(+(pref * (a_sum + b_sum)), a_next, b_next)


def algebraic_h(
    p: KummerParams,
    x,
    t: TruncationChoice,
    M: int,
    policy: PrecisionPolicy = PrecisionPolicy(),
    K: int = DEFAULT_K,
    gpolys: Sequence[GammaPoly] | None = None,
):
    """Truncated algebraic expansion ``H_M(x)`` (sums run over ``j = 0..M``)."""
    gp = gpolys if gpolys is not None else g_polys(2 * K)
    return _algebraic_terms(p, x, t, M, policy, K, gp).value


@dataclass(frozen=True)
class StokesRow:
    M: int
    H: object
    first_omitted_A: object
    first_omitted_B: object


@dataclass(frozen=True)
class StokesReport:
    params: KummerParams
    x: Fraction
    truncation: TruncationChoice
    rows: tuple
    F: object
    target_digits: int
    working_digits: int
    K: int
    degenerate: bool = False

    def differences(self):
        with mp.workdps(self.working_digits):
            return [abs(self.F - r.H) for r in self.rows]

    def _fmt(self, v, digits=None):
        if v is None:
            return ""
        return mp.nstr(v, digits or self.target_digits)

    def to_dict(self) -> dict:
        t = self.truncation
        return {
            "params": {"a": str(self.params.a), "b": str(self.params.b)},
            "x": str(self.x),
            "m0": t.m0,
            "alpha": None if t.alpha is None else str(t.alpha),
            "m0_rule": t.rule,
            "precision": {
                "target_digits": self.target_digits,
                "working_digits": self.working_digits,
                "K": self.K,
            },
            "degenerate_reciprocal_gamma": self.degenerate,
            "rows": [
                {
                    "M": r.M,
                    "H": self._fmt(r.H),
                    "first_omitted_A": self._fmt(r.first_omitted_A, 6),
                    "first_omitted_B": self._fmt(r.first_omitted_B, 6),
                    "abs_diff": self._fmt(d, 6),
                }
                for r, d in zip(self.rows, self.differences())
            ],
            "F": self._fmt(self.F),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["M", "H_M", "first_omitted_A", "first_omitted_B"])
        for r in self.rows:
            w.writerow([
                r.M,
                self._fmt(r.H),
                self._fmt(r.first_omitted_A, 6),
                self._fmt(r.first_omitted_B, 6),
            ])
        w.writerow(["F", self._fmt(self.F), "", ""])
        return buf.getvalue()

    def to_text(self, digits: int = 11) -> str:
        t = self.truncation
        alpha = "undefined" if t.alpha is None else str(t.alpha)
        head = (
            f"a = {self.params.a}, b = {self.params.b}, x = {self.x}, "
            f"m0 = {t.m0} ({t.rule}), alpha = {alpha}"
        )
        lines = [head, f"{'M':>3}  {'H_M(x)':>20}  {'|F - H_M|':>12}"]
        for r, d in zip(self.rows, self.differences()):
            lines.append(f"{r.M:>3}  {mp.nstr(r.H, digits, strip_zeros=False):>20}  {mp.nstr(d, 3):>12}")
        lines.append(f"{'F':>3}  {mp.nstr(self.F, digits, strip_zeros=False):>20}")
        return "\n".join(lines) + "\n"


def stokes_report(
    p: KummerParams,
    x,
    M_max: int,
    policy: PrecisionPolicy = PrecisionPolicy(),
    m0_override: int | None = None,
    K: int = DEFAULT_K,
    gpolys: Sequence[GammaPoly] | None = None,
) -> StokesReport:
    x = to_fraction(x)
    t = choose_m0(p, x, m0_override)
    gp = gpolys if gpolys is not None else g_polys(2 * K)
    rows = []
    for M in range(M_max + 1):
        h = _algebraic_terms(p, x, t, M, policy, K, gp)
        rows.append(StokesRow(M, h.value, h.first_omitted_A, h.first_omitted_B))
    F = residual_f(p, x, t, policy)
    return StokesReport(
        params=p,
        x=x,
        truncation=t,
        rows=tuple(rows),
        F=F,
        target_digits=policy.target_digits,
        working_digits=policy.working(_cancellation(x)),
        K=K,
        degenerate=p.b_minus_a_at_pole,
    )


@dataclass(frozen=True)
class TerminantCheck:
    nu: Fraction
    j: int
    M: int
    terminant: object
    expansion_im: object
    re_discrepancy: object
    im_discrepancy: object
    first_omitted: object


def terminant_consistency(
    p: KummerParams,
    x,
    t: TruncationChoice,
    j: int,
    M: int,
    policy: PrecisionPolicy = PrecisionPolicy(),
    K: int = DEFAULT_K,
    gpolys: Sequence[GammaPoly] | None = None,
) -> TerminantCheck:
    """Compare ``T_{nu-j}(x e^{i pi})`` with its Stokes-line expansion to ``M`` terms.

    ``nu = x + alpha`` for real parameters, and ``G_{2k}`` is evaluated at
    ``gamma_j = alpha - j``.
    """
    if M < 1:
        raise ValueError("M must be positive")
    if M > K:
        raise NeedsMoreCoefficientsError(2 * M, 2 * K)
    x = to_fraction(x)
    gp = gpolys if gpolys is not None else g_polys(2 * K)
    if len(gp) <= 2 * M:
        raise NeedsMoreCoefficientsError(2 * M, len(gp) - 1)
    g = t.gamma_of(j)
    nu = x + t.alpha
    T = terminant_on_stokes(nu - j, x, policy)
    with mp.workdps(policy.working()):
        xf = to_mpf(x)
        scale = 1 / mp.sqrt(2 * mp.pi * xf)
        terms = []
        half_poch = Fraction(1)
        for k in range(M + 1):
            if k:
                half_poch *= Fraction(1, 2) + k - 1
            terms.append(half_poch * gp[2 * k](g) / (x / 2) ** k)
        expansion_im = -scale * to_mpf(sum(terms[:M], Fraction(0)))
        return TerminantCheck(
            nu=nu,
            j=j,
            M=M,
            terminant=T,
            expansion_im=expansion_im,
            re_discrepancy=abs(T.real - mp.mpf(0.5)),
            im_discrepancy=abs(T.imag - expansion_im),
            first_omitted=abs(scale * to_mpf(terms[M])),
        )
