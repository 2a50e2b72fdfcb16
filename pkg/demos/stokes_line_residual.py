"""
Exponentially small residual on the positive axis
=================================================

Subtract the optimally truncated exponential series from 1F1 and compare what
is left with the algebraic expansion H_M.
"""
from kummerstokes import KummerParams, PrecisionPolicy, stokes_report

policy = PrecisionPolicy(30)
for a, b, m0 in [("0.75", "0.5", 21), ("0.5", "1.25", 19), ("-0.75", "1.25", 18)]:
    print(stokes_report(KummerParams(a, b), 20, 6, policy, m0_override=m0).to_text())

# without an override m0 comes from the smallest-term rule
rep = stokes_report(KummerParams("1/3", "1"), 30, 6, policy)
print(rep.truncation)
print(rep.to_text())
