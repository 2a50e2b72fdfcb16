import mpmath as mp
import pytest
from hypothesis import given, strategies as st

from kummerstokes.bigeval import (
    PrecisionPolicy,
    big_gamma,
    kummer_m,
    rgamma,
    terminant_on_stokes,
)
from kummerstokes.errors import DegenerateParameterError, PoleError


def test_policy_working():
    p = PrecisionPolicy(30, 10)
    assert p.working() == 40
    assert p.working(7) == 47
    assert p.raised(5).target_digits == 35
    with pytest.raises(ValueError):
        PrecisionPolicy(0)


# -- gamma -------------------------------------------------------------------

def test_gamma_factorial(policy):
    with mp.workdps(40):
        assert abs(big_gamma(5, policy) - 24) < mp.mpf(10) ** -35


def test_gamma_half(policy, close):
    with mp.workdps(60):
        assert close(big_gamma(mp.mpf(1) / 2, policy), mp.sqrt(mp.pi), 30)


def test_gamma_reflection_negative(policy):
    with mp.workdps(60):
        z = mp.mpf("-0.75")
        lhs = big_gamma(z, policy) * big_gamma(1 - z, policy)
        assert abs(lhs - mp.pi / mp.sinpi(z)) < mp.mpf(10) ** -30 * abs(lhs)


@pytest.mark.parametrize("x", ["0.1", "0.5", "0.99", "1", "2.5", "20.3", "57.25", "-3.5", "-0.001"])
@pytest.mark.parametrize("digits", [15, 30, 60])
def test_gamma_against_mpmath(x, digits, close):
    got = big_gamma(x, PrecisionPolicy(digits))
    with mp.workdps(digits + 20):
        assert close(got, mp.gamma(mp.mpf(x)), digits)


@pytest.mark.parametrize("n", [0, -1, -7])
def test_gamma_pole(n, policy):
    with pytest.raises(PoleError) as info:
        big_gamma(n, policy)
    assert info.value.nearest == n
    assert rgamma(n, policy) == 0


@given(st.floats(min_value=-5, max_value=5).filter(lambda v: abs(v - round(v)) > 1e-3))
def test_gamma_recurrence(x):
    policy = PrecisionPolicy(30)
    with mp.workdps(50):
        x = mp.mpf(x)
        ratio = big_gamma(x + 1, policy) / big_gamma(x, policy)
        assert abs(ratio - x) <= mp.mpf(10) ** -29 * max(1, abs(x))


# -- Kummer's function ---------------------------------------------------------

def test_kummer_at_zero(policy):
    assert kummer_m("0.3", "1.7", 0, policy) == 1


@pytest.mark.parametrize("x", [-30, -3, 0.5, 12, 40])
def test_kummer_exponential(x, policy, close):
    got = kummer_m(1, 1, x, policy)
    with mp.workdps(60):
        assert close(got, mp.exp(x), 30)


@pytest.mark.parametrize("a,b,x", [("0.75", "0.5", 20), ("0.5", "1.25", 20),
                                   ("-0.75", "1.25", 20), ("1/3", "1", 33)])
def test_kummer_transformation(a, b, x, policy):
    from fractions import Fraction as Fr
    a, b = Fr(a), Fr(b)
    lhs = kummer_m(a, b, x, policy)
    rhs_inner = kummer_m(b - a, b, -x, policy)
    with mp.workdps(60):
        assert abs(lhs - mp.exp(x) * rhs_inner) <= mp.mpf(10) ** -30 * abs(lhs)


@pytest.mark.parametrize("a,b,x", [("0.3", "2.5", -25), ("-2.5", "0.25", 15), ("-3", "1.5", -8)])
def test_kummer_against_mpmath(a, b, x, policy, close):
    got = kummer_m(a, b, x, policy)
    with mp.workdps(60):
        assert close(got, mp.hyp1f1(mp.mpf(a), mp.mpf(b), x), 30)


def test_kummer_b_pole(policy):
    with pytest.raises(ValueError):
        kummer_m("0.5", -2, 1, policy)


def test_precision_doubling():
    lo = kummer_m("0.75", "0.5", -20, PrecisionPolicy(25))
    hi = kummer_m("0.75", "0.5", -20, PrecisionPolicy(50))
    with mp.workdps(60):
        assert abs(lo - hi) <= mp.mpf(10) ** -25 * abs(hi)
    g_lo = big_gamma("-2.3", PrecisionPolicy(25))
    g_hi = big_gamma("-2.3", PrecisionPolicy(50))
    with mp.workdps(60):
        assert abs(g_lo - g_hi) <= mp.mpf(10) ** -25 * abs(g_hi)


# -- terminant -----------------------------------------------------------------

def _terminant_oracle(nu, x):
    nu = mp.mpf(nu)
    xi = mp.expjpi(nu) * mp.gamma(nu) / (2j * mp.pi)
    return xi * mp.gammainc(1 - nu, mp.mpf(-x))


@pytest.mark.parametrize("nu,x", [("20", 20), ("20.3", 20), ("19.25", 20), ("41", 40),
                                  ("7.5", 3), ("1", 2)])
def test_terminant_against_incomplete_gamma(nu, x, policy):
    got = terminant_on_stokes(nu, x, policy)
    with mp.workdps(80):
        want = _terminant_oracle(nu, x)
        assert abs(got - want) <= mp.mpf(10) ** -29 * abs(want)


def test_terminant_real_part_half(policy):
    t = terminant_on_stokes(20, 20, policy)
    with mp.workdps(40):
        assert abs(t.real - mp.mpf(0.5)) < mp.mpf(10) ** -6


def test_terminant_leading_imaginary(policy):
    # gamma_0 = nu - x = 0, leading term -(2/3) / sqrt(2 pi x)
    t = terminant_on_stokes(20, 20, policy)
    with mp.workdps(40):
        lead = -(mp.mpf(2) / 3) / mp.sqrt(40 * mp.pi)
        assert abs(t.imag - lead) < abs(lead) / 20


def test_terminant_degenerate(policy):
    with mp.workdps(60):
        nu = mp.mpf(20) + mp.mpf(10) ** -33
    with pytest.raises(DegenerateParameterError):
        terminant_on_stokes(nu, 20, PrecisionPolicy(30, 20))


def test_terminant_domain(policy):
    with pytest.raises(ValueError):
        terminant_on_stokes(-1, 20, policy)
