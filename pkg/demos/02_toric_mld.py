"""
Minimal log discrepancies of toric surface pairs
================================================

With boundary b1*T1 + b2*T2 the log discrepancy of the divisor of an
interior ray u is L(u), where L is the linear form worth 1 - b_i on v_i.
The mld is the smallest such value, and it is always reached on the
resolution chain.
"""

from fractions import Fraction as F

from mld_lab import (
    Cone2D,
    LatticePoint as P,
    ToricPair,
    brute_force_mld,
    kth_mlds,
    log_discrepancy_form,
    rescale_pair,
    toric_mld,
)

# Du Val A_2: canonical, so mld 1.
a2 = ToricPair(Cone2D(P(1, 0), P(1, 3)), 0, 0)
print("A2:", toric_mld(a2))

# 1/n(1,1) frames have mld 2/n, attained on the ray through (1, 0).
for n in (2, 3, 4, 7):
    r = toric_mld(ToricPair(Cone2D(P(n, -1), P(0, 1)), 0, 0))
    print(f"1/{n}(1,1): mld {r.value} at {tuple(r.witness)}")

# A boundary changes the form, and the chain still finds the minimum.
p = ToricPair(Cone2D(P(1, 0), P(2, 5)), F(1, 2), F(2, 3))
print("form:", log_discrepancy_form(p))
print("chain route:", toric_mld(p).value, " brute force:", brute_force_mld(p).value)

# Reduced boundary on the smooth cone: lc but not klt.
r = toric_mld(ToricPair(Cone2D(P(1, 0), P(0, 1)), 1, 1))
print("lc:", r.lc, "klt:", r.klt)

# The next few primitive divisors, smallest first.
print("k-th mlds of the plane:", [str(v) for v in kth_mlds(ToricPair(Cone2D(P(1, 0), P(0, 1)), 0, 0), 6)])

# Rescaling pushes the coefficients towards 1 and divides the mld by M + 1.
q = rescale_pair(a2, 3)
print("rescaled coefficients:", q.b1, q.b2, " mld:", toric_mld(q).value)
