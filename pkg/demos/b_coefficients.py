"""
B_j coefficients
================

The coefficients of the subdominant algebraic expansion for three parameter sets.
"""
from fractions import Fraction as Fr

import mpmath as mp

from kummerstokes.stokes import KummerParams, TruncationChoice, coeff_table

cases = [(Fr(1, 3), 1, Fr(1, 3)), (Fr(3, 4), Fr(1, 2), 0), (Fr(1, 4), Fr(3, 4), Fr(1, 4))]
cols = []
for a, b, alpha in cases:
    tab = coeff_table(KummerParams(a, b), TruncationChoice(1, Fr(alpha)), 6)
    cols.append(tab.B)

print(" j" + "".join(f"{f'a={a}, b={b}':>22}" for a, b, _ in cases))
with mp.workdps(30):
    for j in range(7):
        row = "".join(f"{mp.nstr(mp.mpf(c[j].numerator) / c[j].denominator, 12):>22}" for c in cols)
        print(f"{j:>2}{row}")

# B_0 and B_1 are exact rationals
print(cols[0][0], cols[0][1])
