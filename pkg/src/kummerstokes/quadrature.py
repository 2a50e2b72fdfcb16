"""Tanh-sinh quadrature on [0, 1] for integrands with endpoint singularities."""
from __future__ import annotations

from typing import Callable

import mpmath as mp

from .bigeval import PrecisionPolicy
from .errors import QuadratureLimitError

__all__ = ["tanh_sinh_unit"]


def _node(u):
    # t = 1/(1 + e^{-v}), v = pi sinh u; 1 - t is formed directly so it keeps
    # full relative accuracy near t = 1
    v = mp.pi * mp.sinh(u)
    ev = mp.exp(-v)
    t = 1 / (1 + ev)
    omt = ev / (1 + ev)
    weight = mp.pi * mp.cosh(u) * t * omt
    return t, omt, weight


def _branch(f, start, step, eps, scale_hint):
    """Sum ``w(u) f(t(u))`` over ``u = start, start + step, ...`` until negligible."""
    total = mp.mpf(0)
    k = 0
    small = 0
    while True:
        u = start + k * step
        t, omt, w = _node(u)
        if t == 0 or omt == 0:
            break
        term = w * f(t, omt)
        total += term
        ref = max(abs(total), scale_hint)
        if abs(term) <= eps * ref and abs(u) > 1:
            small += 1
            if small >= 2:
                break
        else:
            small = 0
        k += 1
    return total


def tanh_sinh_unit(
    f: Callable,
    policy: PrecisionPolicy = PrecisionPolicy(),
    max_level: int = 12,
):
    """Integrate ``f(t, 1 - t)`` over ``[0, 1]``.

    The step halves each level and previous nodes are reused; iteration stops
    once two successive levels agree to the target precision.
    """
    wp = policy.working()
    with mp.workdps(wp):
        eps = mp.mpf(10) ** (-wp)
        tol = mp.mpf(10) ** (-policy.target_digits)
        h = mp.mpf(1)
        t0, omt0, w0 = _node(mp.mpf(0))
        centre = w0 * f(t0, omt0)
        scale = abs(centre)
        node_sum = centre + _branch(f, h, h, eps, scale) + _branch(f, -h, -h, eps, scale)
        prev = h * node_sum
        for _ in range(max_level):
            h /= 2
            # new nodes sit at odd multiples of the halved step
            odd = _branch(f, h, 2 * h, eps, abs(prev)) + _branch(f, -h, -2 * h, eps, abs(prev))
            node_sum += odd
            cur = h * node_sum
            if abs(cur - prev) <= tol * abs(cur):
                return +cur
            prev = cur
        raise QuadratureLimitError(f"no convergence after {max_level} levels")
