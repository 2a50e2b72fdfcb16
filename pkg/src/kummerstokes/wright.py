"""Wright function 1Psi1 and a numerical probe of its Stokes multiplier.

For ``alpha = beta`` the function has the Euler-type representation

    1Psi1(x) = 1/Gamma(b-a) * int_0^1 t**(a-1) (1-t)**(b-a-1) exp(x t**alpha) dt

and Watson's lemma at ``t = 1`` gives its exponentially large expansion
``alpha**(a-b) x**(a-b) e**x sum_j c_j x**-j``.  Subtracting the optimally
truncated expansion leaves the algebraic part, whose leading coefficient,
divided by the non-oscillatory leading term, estimates the multiplier that
is expected to be ``cos(pi a / alpha)``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .bigeval import LOG10_E, PrecisionPolicy, big_gamma, rgamma, to_mpf
from .errors import DegenerateParameterError, DerivationError, NeedsMoreCoefficientsError
from .exactseries import PowerSeries, ps_pow_sym, ps_revert
from .quadrature import tanh_sinh_unit
from .stokes import to_fraction

__all__ = [
    "WrightParams",
    "MultiplierEstimate",
    "wright_series",
    "wright_integral",
    "wright_c_coeffs",
    "printed_c1",
    "wright_multiplier",
]


@dataclass(frozen=True)
class WrightParams:
    w_alpha: Fraction
    w_beta: Fraction
    w_a: Fraction
    w_b: Fraction

    def __post_init__(self):
        for name in ("w_alpha", "w_beta", "w_a", "w_b"):
            object.__setattr__(self, name, to_fraction(getattr(self, name)))
        if self.w_alpha <= 0 or self.w_beta <= 0:
            raise ValueError("alpha and beta must be positive")
        if self.kappa <= 0:
            raise ValueError(f"kappa = {self.kappa} must be positive")

    @property
    def kappa(self) -> Fraction:
        return 1 + self.w_beta - self.w_alpha

    @property
    def theta(self) -> Fraction:
        return self.w_a - self.w_b

    @property
    def equal_scales(self) -> bool:
        return self.w_alpha == self.w_beta

    def h(self):
        """``alpha**alpha beta**-beta`` at the current mp precision (exactly 1 if equal)."""
        if self.equal_scales:
            return mp.mpf(1)
        al, be = to_mpf(self.w_alpha), to_mpf(self.w_beta)
        return mp.power(al, al) * mp.power(be, -be)

    def amp(self):
        """``kappa**(-theta-1/2) alpha**(a-1/2) beta**(1/2-b)``."""
        half = Fraction(1, 2)
        return (
            mp.power(to_mpf(self.kappa), to_mpf(-self.theta - half))
            * mp.power(to_mpf(self.w_alpha), to_mpf(self.w_a - half))
            * mp.power(to_mpf(self.w_beta), to_mpf(half - self.w_b))
        )

    def big_z(self, z):
        k = to_mpf(self.kappa)
        return k * mp.power(self.h() * to_mpf(z), 1 / k)

    def _require_integral_form(self):
        if not self.equal_scales:
            raise ValueError("this operation needs alpha = beta")
        if not self.w_b > self.w_a > 0:
            raise ValueError("this operation needs b > a > 0")


def _check_numerator_poles(p: WrightParams):
    a, al = p.w_a, p.w_alpha
    if a > 0:
        return
    n = 0
    while al * n + a <= 0:
        v = al * n + a
        if v.denominator == 1:
            raise ValueError(f"Gamma(alpha*{n} + a) = Gamma({v}) is a pole")
        n += 1


def wright_series(p: WrightParams, z, policy: PrecisionPolicy = PrecisionPolicy()):
    """``sum Gamma(alpha n + a) / Gamma(beta n + b) z**n / n!``."""
    _check_numerator_poles(p)
    wp = policy.working()
    with mp.workdps(wp):
        zf = to_mpf(z)
        peak = float(abs(p.h() * zf)) ** (1 / float(p.kappa))
        n_min = int(2 * peak + 2 * float(abs(p.w_a) + abs(p.w_b))) + 10
        cap = 10 * n_min + 1000
        eps = mp.mpf(10) ** (-wp)
        total = mp.mpf(0)
        zpow_fact = mp.mpf(1)
        small = 0
        for n in range(cap):
            if n:
                zpow_fact = zpow_fact * zf / n
            num = big_gamma(p.w_alpha * n + p.w_a, policy)
            term = num * rgamma(p.w_beta * n + p.w_b, policy) * zpow_fact
            total += term
            if n >= n_min:
                small = small + 1 if abs(term) <= eps * abs(total) else 0
                if small >= 3:
                    break
        else:
            raise RuntimeError("Wright series did not converge")
        return +total


def wright_integral(p: WrightParams, x, policy: PrecisionPolicy = PrecisionPolicy()):
    """Euler-type integral for ``alpha = beta`` by tanh-sinh quadrature."""
    p._require_integral_form()
    wp = policy.working()
    with mp.workdps(wp):
        xf = to_mpf(x)
        al = to_mpf(p.w_alpha)
        e1 = to_mpf(p.w_a - 1)
        e2 = to_mpf(p.w_b - p.w_a - 1)

        def integrand(t, omt):
            return mp.power(t, e1) * mp.power(omt, e2) * mp.exp(xf * mp.power(t, al))

        val = tanh_sinh_unit(integrand, policy)
        return +(val * rgamma(p.w_b - p.w_a, policy))


def wright_c_coeffs(p: WrightParams, J: int) -> list[Fraction]:
    """Exact ``c_0..c_J`` of the exponential expansion for ``alpha = beta``.

    With ``u = 1 - t`` and ``v = 1 - (1-u)**alpha`` the integral becomes a
    Laplace integral in ``v``; writing ``u = (v/alpha) rho(v)``,

        (1-u)**(a-1) u**(b-a-1) du = alpha**(a-b) v**(b-a-1) D(v) dv,
        D = rho**(b-a-1) (1-u)**(a-1) alpha du/dv,

    and termwise integration gives ``c_n = (b-a)_n [v^n] D``.
    """
    p._require_integral_form()
    if J < 0:
        raise ValueError("J must be non-negative")
    al, a, b = p.w_alpha, p.w_a, p.w_b
    n = J + 2
    one_minus_u = PowerSeries([1, -1], n)
    phi = 1 - ps_pow_sym(one_minus_u, al)
    u_of_v = ps_revert(phi)
    rho = u_of_v.divide_by_w() * al
    order = rho.order
    d = (
        ps_pow_sym(rho, b - a - 1)
        * ps_pow_sym((1 - u_of_v).truncate(order), a - 1)
        * (u_of_v.derivative() * al)
    )
    coeffs = d.rationals()[: J + 1]
    out = []
    poch = Fraction(1)
    for k, dk in enumerate(coeffs):
        if k:
            poch *= b - a + k - 1
        out.append(dk * poch)
    if out[0] != 1:
        raise DerivationError(f"c_0 = {out[0]}, expected 1")
    return out


def printed_c1(p: WrightParams) -> Fraction:
    """Closed form of ``c_1`` for general ``alpha, beta``."""
    al, be, a, b = p.w_alpha, p.w_beta, p.w_a, p.w_b
    return (
        al * (al - 1) * (1 - 6 * b + 6 * b * b)
        + be * (be + 1) * (1 - 6 * a + 6 * a * a)
        + al * be * (al - be - 2 * (1 + 6 * a * b - 6 * b))
    ) / (12 * al * be)


@dataclass(frozen=True)
class MultiplierEstimate:
    params: WrightParams
    x: Fraction
    j_star: int
    S_est: object
    conjecture_value: object
    abs_error_estimate: object
    residual: object
    leading_algebraic: object
    exponential_part: object
    digits: int

    def to_dict(self) -> dict:
        def s(v):
            return mp.nstr(v, self.digits)

        p = self.params
        return {
            "params": {
                "alpha": str(p.w_alpha),
                "beta": str(p.w_beta),
                "a": str(p.w_a),
                "b": str(p.w_b),
            },
            "x": str(self.x),
            "j_star": self.j_star,
            "S_est": s(self.S_est),
            "conjecture_value": s(self.conjecture_value),
            "abs_error_estimate": s(self.abs_error_estimate),
            "residual": s(self.residual),
            "leading_algebraic": s(self.leading_algebraic),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _smallest_term_index(terms: list[Fraction]) -> int:
    for j in range(1, len(terms)):
        if terms[j] != 0 and abs(terms[j]) >= abs(terms[j - 1]):
            return j
    nonzero = [j for j, v in enumerate(terms) if v != 0]
    if all(v == 0 for v in terms[nonzero[-1] + 1 :]) and nonzero[-1] + 1 < len(terms):
        # terminating expansion: every available term past the last is zero
        return nonzero[-1] + 1
    raise NeedsMoreCoefficientsError(len(terms), len(terms) - 1)


def wright_multiplier(
    p: WrightParams,
    x,
    J: int = 60,
    policy: PrecisionPolicy = PrecisionPolicy(),
) -> MultiplierEstimate:
    """Estimate the algebraic-part multiplier of ``1Psi1`` on ``arg z = 0``."""
    p._require_integral_form()
    x = to_fraction(x)
    al, a, b = p.w_alpha, p.w_a, p.w_b
    lead_arg = b - p.w_beta * a / al
    if lead_arg.denominator == 1 and lead_arg <= 0:
        raise DegenerateParameterError(f"Gamma({lead_arg}) pole in the normalization")
    c = wright_c_coeffs(p, J)
    terms = [cj / x**j for j, cj in enumerate(c)]
    j_star = _smallest_term_index(terms)
    inner = policy.raised(math.ceil(float(x) * LOG10_E) + 5)
    with mp.workdps(inner.working()):
        xf = to_mpf(x)
        pref = mp.power(to_mpf(al), to_mpf(a - b)) * mp.power(xf, to_mpf(a - b)) * mp.exp(xf)
        exp_part = pref * to_mpf(sum(terms[:j_star], Fraction(0)))
        omitted = abs(pref * to_mpf(terms[j_star])) if j_star < len(terms) else mp.mpf(0)
        psi = wright_series(p, x, inner)
        residual = psi - exp_part
        lead = (
            big_gamma(a / al, inner)
            * rgamma(lead_arg, inner)
            / to_mpf(al)
            * mp.power(xf, -to_mpf(a / al))
        )
        s_est = residual / lead
        err = omitted / abs(lead)
        conj = mp.cospi(to_mpf(a / al))
    with mp.workdps(policy.working()):
        return MultiplierEstimate(
            params=p,
            x=x,
            j_star=j_star,
            S_est=+s_est,
            conjecture_value=+conj,
            abs_error_estimate=+err,
            residual=+residual,
            leading_algebraic=+lead,
            exponential_part=+exp_part,
            digits=min(policy.target_digits, 20),
        )
