"""
Adjunction and the structural inequalities
==========================================

Restricting to an invariant divisor with coefficient 1 produces a germ one
dimension down with rescaled boundary; the fixed-point minima agree on both
sides.  The same germs also satisfy the semicontinuity inequality and the
dimension bound, checked here on explicit examples.
"""
from fractions import Fraction as F

from toricmld import (
    ToricGerm,
    adjoin_invariant_divisor,
    check_lower_semicontinuity,
    check_precise_inversion,
    check_shokurov_bounds,
    germ_cyclic_quotient,
    lattice_from_generators,
)
from toricmld.lattice import Lattice

print("Adjunction and checks")
print("=" * 40)

###############################################################################
# Restriction to a divisor
# ------------------------

germ = ToricGerm(lattice_from_generators(3, [(F(1, 4), F(2, 4), F(3, 4))]), (0, 0, 1))
res = adjoin_invariant_divisor(germ, 3)
print("restricted lattice:", res.germ.lattice.basis)
print("induced boundary:", res.germ.boundary, " scales:", res.scales)

report = check_precise_inversion(germ, 3)
label, upstairs, downstairs = report.details[0]
print(f"fixed-point minima: {upstairs} (ambient) = {downstairs} (divisor) ->",
      "passed" if report.passed else "FAILED")

###############################################################################
# Semicontinuity across faces
# ---------------------------
# The fixed-point value never exceeds a cycle value by more than the cycle
# dimension.

quarter = ToricGerm(lattice_from_generators(3, [(F(1, 4), F(2, 4), F(3, 4))]), (0, 0, 0))
lsc = check_lower_semicontinuity(quarter)
for label, lhs, rhs in lsc.details:
    print(f"  {label}: {lhs} <= {rhs}")
print("semicontinuity:", "passed" if lsc.passed else "FAILED")

###############################################################################
# The dimension bound
# -------------------

for g in [ToricGerm(Lattice.standard(3), (0, 0, 0)),
          germ_cyclic_quotient(2, (1, 1)),
          germ_cyclic_quotient(5, (1, 2, 3))]:
    rep = check_shokurov_bounds(g)
    print("bound check:", rep.details[0][1], "<=", rep.details[0][2],
          "->", "passed" if rep.passed else "FAILED")
