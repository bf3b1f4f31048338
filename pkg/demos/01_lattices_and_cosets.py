"""
Lattices containing Z^d
=======================

The building block of everything here: full-rank rational lattices N with
Z^d inside N, kept in a canonical triangular form so that two presentations
of the same lattice compare equal.
"""
from fractions import Fraction as F

from toricmld import (
    coset_reps,
    dual_lattice,
    enumerate_superlattices,
    lattice_contains,
    lattice_from_generators,
    lattice_index,
    primitive_scale,
    project_drop_coord,
)

print("Lattices, cosets, duals")
print("=" * 40)

###############################################################################
# Canonical form
# --------------
# Any set of rational generators is closed up with Z^2 and reduced to a
# unique basis, so re-presentations collapse to the same object.

N = lattice_from_generators(2, [(F(1, 3), F(2, 3))])
again = lattice_from_generators(2, [(F(4, 3), F(2, 3)), (F(2, 3), F(1, 3))])
print("basis:", N.basis)
print("same lattice from other generators:", N == again)
print("index [N : Z^2]:", lattice_index(N))

###############################################################################
# Membership and cosets
# ---------------------

print("(2/3, 1/3) in N:", lattice_contains(N, (F(2, 3), F(1, 3))))
print("(1/3, 1/3) in N:", lattice_contains(N, (F(1, 3), F(1, 3))))
print("coset representatives of N/Z^2:", coset_reps(N).reps)

###############################################################################
# Duals and projections
# ---------------------
# The dual collects the integer-pairing functionals; it sits inside Z^2 with
# the same index on the other side.

M = dual_lattice(N)
print("dual basis:", M.basis, " [Z^2 : M] =", M.det)
print("double dual returns N:", dual_lattice(M) == N)

P = lattice_from_generators(3, [(F(1, 4), F(2, 4), F(3, 4))])
print("projection dropping coordinate 3:", project_drop_coord(P, 3).basis)
print("primitive scale of e_2 in Z^2 + Z(1/2,1/4):",
      primitive_scale(lattice_from_generators(2, [(F(1, 2), F(1, 4))]), (0, 1)))

###############################################################################
# Enumerating superlattices
# -------------------------
# All lattices of bounded index with primitive standard vectors, via Hermite
# forms of the dual sublattices.

for lat in enumerate_superlattices(2, 3):
    print(f"index {lattice_index(lat)}:", lat.basis)
