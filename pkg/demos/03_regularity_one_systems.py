"""
Regularity-one linear systems
=============================

When the dual complex of an extraction over a surface point is a circle
or an interval, the log discrepancies alpha_i of its curves solve a
tridiagonal system built from the self-intersections.  Each shape also
has a planar model, and the two descriptions agree.
"""

from fractions import Fraction as F

from mld_lab import (
    RegOneSystem,
    SingularSystemError,
    build_system,
    circle_case_toric,
    classify_dual_complex,
    geometric_model,
    solve_system,
    toric_mld,
)

# Which case are we in?  A circle of four curves, the third one anchored.
shape, order = classify_dual_complex(True, [True, True, False, True])
print(shape, "vertex order", order)

# Circle: the system equals the toric computation on the chain's cone.
s = RegOneSystem.circle((2, 2, 2), F(1, 2))
A, b = build_system(s)
print("matrix:", [[int(x) for x in row] for row in A], "rhs:", [str(x) for x in b])
sol = solve_system(s)
print("alphas:", [str(a) for a in sol.alphas], "mld:", sol.mld)
print("toric route:", toric_mld(circle_case_toric(s)).value)

# Interval with one anchor: the form M through x_1 and y_2 reproduces alpha.
s = RegOneSystem.one_anchor((2, 3), 1, F(1, 2), 1)
g = geometric_model(s)
print("Sigma:", tuple(g.sigma.v1), tuple(g.sigma.v2), " M:", g.form)
print("M at x_i:", [str(v) for v in g.values()], " alphas:", [str(a) for a in solve_system(s).alphas])

# Interval with no anchor.
s = RegOneSystem.no_anchor((2, 2, 2), 1, 1, 1, 1)
print("no anchor:", [str(a) for a in solve_system(s).alphas])

# A singular matrix cannot come from a real extraction.
try:
    solve_system(RegOneSystem.circle((1, 1), 0))
except SingularSystemError as exc:
    print("rejected:", exc)
