"""
Minimal log discrepancies of toric germs
========================================

A germ is a lattice N (containing Z^d, standard vectors primitive) plus
boundary coefficients b in [0,1]^d.  The minimum of sum (1-b_i) x_i over
lattice points of a face stratum is found on finitely many unit-box
candidates; a brute-force enumeration over a larger box gives an independent
check.
"""
from fractions import Fraction as F

from toricmld import (
    ToricGerm,
    cartier_index,
    germ_cyclic_quotient,
    germ_from_px,
    mld_bruteforce_oracle,
    mld_face,
    mld_global,
    px_mld_formula,
    verify_minkowski,
)
from toricmld.germ import full_face
from toricmld.lattice import Lattice

print("Minimal log discrepancies")
print("=" * 40)

###############################################################################
# Quotient singularities
# ----------------------

from toricmld.rationals import qvec_str

a2 = germ_cyclic_quotient(3, (1, 2))
rep = mld_face(a2, (1, 2))
print("A-series q=3 at the fixed point:", rep.value,
      "witnesses", [qvec_str(w) for w in rep.witnesses])

five = germ_cyclic_quotient(5, (1, 2, 3))
print("1/5(1,2,3) at the fixed point:", mld_face(five, full_face(3)).value)
print("  brute force radius 3 agrees:", mld_bruteforce_oracle(five, full_face(3), 3))

###############################################################################
# Faces, witnesses, global minimum
# --------------------------------
# The 1/(2q)(1, q, 1+q) family is singular along an invariant curve: the
# fixed-point value looks terminal but the curve value 2/q is small.

family = germ_cyclic_quotient(4, (1, 2, 3))
print("1/4(1,2,3) at P:", mld_face(family, full_face(3)).value)
print("1/4(1,2,3) along the curve {1,3}:", mld_face(family, (1, 3)).value)
print("global minimum:", mld_global(family).value)

###############################################################################
# Boundaries and degenerate coefficients
# --------------------------------------

logpair = ToricGerm(Lattice.standard(2), (1, 0))
print("standard germ with b = (1,0): global", mld_global(logpair).value,
      "at face", mld_global(logpair).face.support)

###############################################################################
# The one-parameter family attached to a rational point
# -----------------------------------------------------
# Each x in (0,1]^d produces a germ whose fixed-point value has a closed
# form; both routes agree.

x = (F(1, 2), F(1, 4))
germ, scales = germ_from_px(x)
print("point", x, "-> divisor scales", scales, "boundary", germ.boundary)
print("closed form:", px_mld_formula(x), " engine:", mld_face(germ, full_face(2)).value)

###############################################################################
# Lattice-free dilations and the index
# ------------------------------------

half = germ_cyclic_quotient(2, (1, 1))
print("dilation check at t = 1:", verify_minkowski(half, 1, F(1, 10)))
print("Cartier index of 1/3(1,1):", cartier_index(germ_cyclic_quotient(3, (1, 1))))
