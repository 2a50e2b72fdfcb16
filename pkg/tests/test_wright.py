import json
import random
from fractions import Fraction as Fr

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from kummerstokes.bigeval import PrecisionPolicy, big_gamma, kummer_m
from kummerstokes.errors import NeedsMoreCoefficientsError
from kummerstokes.wright import (
    WrightParams,
    printed_c1,
    wright_c_coeffs,
    wright_integral,
    wright_multiplier,
    wright_series,
)


def test_params_derived():
    p = WrightParams(Fr(3, 2), 1, Fr(1, 3), 1)
    assert p.kappa == Fr(1, 2)
    assert p.theta == Fr(-2, 3)
    with pytest.raises(ValueError):
        WrightParams(3, 1, 1, 1)  # kappa = -1
    with pytest.raises(ValueError):
        WrightParams(0, 1, 1, 1)


def test_equal_scales_simplify():
    p = WrightParams(Fr(3, 2), Fr(3, 2), Fr(1, 3), Fr(5, 4))
    assert p.kappa == 1
    assert p.h() == 1
    with mp.workdps(40):
        assert p.big_z(7) == 7
        want = mp.power(mp.mpf(3) / 2, mp.mpf(1) / 3 - mp.mpf(5) / 4)
        assert abs(p.amp() - want) <= 2 * mp.eps * want


def test_series_at_zero(policy):
    p = WrightParams(Fr(1, 2), Fr(3, 4), Fr(1, 3), 2)
    got = wright_series(p, 0, policy)
    with mp.workdps(50):
        want = big_gamma(Fr(1, 3), policy) / big_gamma(2, policy)
        assert abs(got - want) <= mp.mpf(10) ** -30 * want


@pytest.mark.parametrize("a,b,z", [(Fr(1, 3), 1, 5), (Fr(3, 4), Fr(1, 2), -7), (Fr(5, 2), Fr(7, 3), 12)])
def test_series_reduces_to_kummer(a, b, z, policy):
    got = wright_series(WrightParams(1, 1, a, b), z, policy)
    with mp.workdps(50):
        want = big_gamma(a, policy) / big_gamma(b, policy) * kummer_m(a, b, z, policy)
        assert abs(got - want) <= mp.mpf(10) ** -29 * abs(want)


def test_series_against_mpmath_general(policy):
    p = WrightParams(Fr(1, 2), Fr(3, 2), Fr(1, 4), Fr(2, 3))
    got = wright_series(p, 3, policy)
    with mp.workdps(60):
        want = mp.nsum(lambda n: mp.gamma(n / 2 + mp.mpf(1) / 4) / mp.gamma(3 * n / 2 + mp.mpf(2) / 3)
                       * mp.power(3, n) / mp.factorial(n), [0, mp.inf])
        assert abs(got - want) <= mp.mpf(10) ** -28 * abs(want)


def test_series_rejects_numerator_pole(policy):
    with pytest.raises(ValueError):
        wright_series(WrightParams(Fr(1, 2), 1, -1, 1), 1, policy)


def test_integral_at_zero(policy):
    p = WrightParams(Fr(1, 2), Fr(1, 2), Fr(1, 3), 1)
    got = wright_integral(p, 0, policy)
    with mp.workdps(50):
        want = big_gamma(Fr(1, 3), policy)
        assert abs(got - want) <= mp.mpf(10) ** -29 * want


def test_integral_euler_form(policy):
    got = wright_integral(WrightParams(1, 1, Fr(1, 3), 1), 5, policy)
    with mp.workdps(50):
        want = mp.gamma(mp.mpf(1) / 3) * mp.hyp1f1(mp.mpf(1) / 3, 1, 5)
        assert abs(got - want) <= mp.mpf(10) ** -29 * want


def test_integral_requires_equal_scales(policy):
    with pytest.raises(ValueError):
        wright_integral(WrightParams(1, Fr(1, 2), Fr(1, 3), 1), 1, policy)
    with pytest.raises(ValueError):
        wright_integral(WrightParams(1, 1, 2, 1), 1, policy)


def test_series_matches_integral_half(policy):
    p = WrightParams(Fr(1, 2), Fr(1, 2), Fr(1, 3), 1)
    s, i = wright_series(p, 5, policy), wright_integral(p, 5, policy)
    with mp.workdps(50):
        assert abs(s - i) <= mp.mpf(10) ** -30 * abs(s)


@settings(max_examples=8)
@given(st.sampled_from([Fr(1, 2), Fr(1), Fr(3, 2)]),
       st.fractions(min_value=Fr(1, 10), max_value=Fr(3), max_denominator=10),
       st.fractions(min_value=Fr(1, 10), max_value=Fr(2), max_denominator=10),
       st.integers(min_value=1, max_value=10))
def test_series_integral_agreement(alpha, a, gap, x):
    policy = PrecisionPolicy(20)
    p = WrightParams(alpha, alpha, a, a + gap)
    s, i = wright_series(p, x, policy), wright_integral(p, x, policy)
    with mp.workdps(40):
        assert abs(s - i) <= mp.mpf(10) ** -20 * abs(s)


# -- exponential coefficients -------------------------------------------------

def test_c0_is_one():
    assert wright_c_coeffs(WrightParams(Fr(2, 3), Fr(2, 3), Fr(1, 5), Fr(7, 4)), 3)[0] == 1


def test_c_unit_alpha_matches_kummer():
    a, b = Fr(2, 7), Fr(9, 5)
    c = wright_c_coeffs(WrightParams(1, 1, a, b), 6)
    term = Fr(1)
    for n in range(7):
        assert c[n] == term
        term = term * (b - a + n) * (1 - a + n) / (n + 1)


def test_printed_c1_unit_alpha():
    rng = random.Random(7)
    for _ in range(20):
        a = Fr(rng.randint(1, 30), rng.randint(1, 12))
        b = a + Fr(rng.randint(1, 30), rng.randint(1, 12))
        assert printed_c1(WrightParams(1, 1, a, b)) == (b - a) * (1 - a)


def test_c1_matches_printed_form():
    rng = random.Random(2024)
    for _ in range(20):
        al = Fr(rng.randint(1, 12), rng.randint(1, 6))
        a = Fr(rng.randint(1, 20), rng.randint(1, 9))
        b = a + Fr(rng.randint(1, 20), rng.randint(1, 9))
        p = WrightParams(al, al, a, b)
        assert wright_c_coeffs(p, 1)[1] == printed_c1(p)


# -- multiplier ---------------------------------------------------------------

def test_multiplier_unit_alpha(policy):
    est = wright_multiplier(WrightParams(1, 1, Fr(1, 3), 1), 30, 60, policy)
    assert est.conjecture_value == mp.mpf(0.5)
    assert abs(est.S_est - 0.5) < 0.15
    assert abs(est.S_est - 0.5) < est.abs_error_estimate


def test_multiplier_converges_with_x(policy):
    p = WrightParams(1, 1, Fr(1, 3), 1)
    ests = [wright_multiplier(p, x, 60, policy) for x in (20, 30, 40)]
    gaps = [abs(e.S_est - e.conjecture_value) for e in ests]
    assert gaps[0] > gaps[1] > gaps[2]
    assert all(g < e.abs_error_estimate for g, e in zip(gaps, ests))


def test_multiplier_integer_ratio(policy):
    # a / alpha = 1: cos(pi) = -1 and the exponential sum terminates
    est = wright_multiplier(WrightParams(1, 1, 1, Fr(5, 2)), 30, 10, policy)
    assert est.conjecture_value == -1
    assert est.j_star == 1
    assert abs(est.S_est + 1) < 0.1


def test_multiplier_needs_coefficients(policy):
    with pytest.raises(NeedsMoreCoefficientsError):
        wright_multiplier(WrightParams(1, 1, Fr(1, 3), 1), 30, 10, policy)


def test_multiplier_record(policy):
    est = wright_multiplier(WrightParams(Fr(1, 2), Fr(1, 2), Fr(1, 3), 1), 30, 60, policy)
    doc = json.loads(json.dumps(est.to_dict()))
    assert set(doc) == {"params", "x", "j_star", "S_est", "conjecture_value",
                        "abs_error_estimate", "residual", "leading_algebraic"}
    with mp.workdps(40):
        assert abs(est.conjecture_value + mp.mpf(0.5)) < mp.mpf(10) ** -30
