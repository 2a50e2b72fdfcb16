"""
Exact rational series
=====================

Series arithmetic with Fractions: the tau(w) reversion and the G-hat check.
"""
from fractions import Fraction

from kummerstokes import exactseries
from kummerstokes.exactseries import PowerSeries, ps_revert

# reverting w = t + t^2 gives the Catalan numbers with alternating signs
s = PowerSeries([0, 1, 1], 8)
print("revert(t + t^2):", [str(c) for c in ps_revert(s).rationals()])

# the mapping used for the Stokes-line expansion
tau = exactseries.tau_series(8)
print("tau(w):", [str(c) for c in tau.rationals()])

# the even-order polynomials G_{2k}(gamma); degree is 2k+1
for k, g in enumerate(exactseries.g_polys(6)[::2]):
    print(f"G_{2*k}: degree {g.degree}, G(0) = {g(Fraction(0))}")

for k in range(5):
    print(k, exactseries.ghat_check(k).ok)
