"""
Wright function and its multiplier
==================================

1Psi1 by series and by tanh-sinh quadrature, then a numerical estimate of the
multiplier of the algebraic part on the positive axis.
"""
from fractions import Fraction as Fr

import mpmath as mp

from kummerstokes import PrecisionPolicy
from kummerstokes.wright import (
    WrightParams,
    printed_c1,
    wright_c_coeffs,
    wright_integral,
    wright_multiplier,
    wright_series,
)

policy = PrecisionPolicy(30)
p = WrightParams(Fr(1, 2), Fr(1, 2), Fr(1, 3), 1)
print(wright_series(p, 5, policy))
print(wright_integral(p, 5, policy))

c = wright_c_coeffs(p, 4)
print([str(v) for v in c], c[1] == printed_c1(p))

for alpha in (1, Fr(1, 2)):
    q = WrightParams(alpha, alpha, Fr(1, 3), 1)
    for x in (20, 30, 40):
        est = wright_multiplier(q, x, 60, policy)
        print(alpha, x, mp.nstr(est.S_est, 6), "+/-", mp.nstr(est.abs_error_estimate, 3),
              "cos(pi a/alpha) =", mp.nstr(est.conjecture_value, 6))
