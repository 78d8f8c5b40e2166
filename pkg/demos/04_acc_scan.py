"""
Scanning mld values near zero
=============================

Ascending chains and accumulation points cannot be observed on a
computer, but threshold counts can: how many distinct mlds lie in
(eps, 1/N), and does that number move as the family of germs grows?
"""

from fractions import Fraction as F

from mld_lab import CoefficientFamily, check_stabilization, enumerate_toric_mlds

family = CoefficientFamily.parse("0,1/2,2/3,3/4,1")
print("mlds up to index 4:", [str(v) for v in enumerate_toric_mlds(family, 4)])

report = check_stabilization(family, 2, (10, 20, 40), [F(1, 8), F(1, 4)])
print(report.summary())

# Counts keep growing: values such as 1/4 + 3/(4n) from (1,0),(1,n)
# with b1 = 3/4 fill the window from above and accumulate at 1/4.
steps = report.values_by_step
print("largest value per step:", [str(max(s)) for s in steps])
print("new values never exceed it:", all(max(b) <= max(a) for a, b in zip(steps, steps[1:])))

print(report.to_csv())
