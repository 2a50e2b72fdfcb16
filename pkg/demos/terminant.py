"""
Terminant on the Stokes line
============================

T_nu(x e^{i pi}) has real part 1/2 to exponential accuracy; its imaginary
part is compared with a truncated expansion in 1/x.
"""
import mpmath as mp

from kummerstokes import KummerParams, PrecisionPolicy
from kummerstokes.bigeval import terminant_on_stokes
from kummerstokes.stokes import choose_m0, terminant_consistency

policy = PrecisionPolicy(30)
print(terminant_on_stokes(20, 20, policy))
print(terminant_on_stokes("20.25", 20, policy))

p = KummerParams("0.75", "0.5")
t = choose_m0(p, 20)
for M in range(1, 7):
    c = terminant_consistency(p, 20, t, 0, M, policy)
    print(M, mp.nstr(c.im_discrepancy, 4), mp.nstr(c.first_omitted, 4))
