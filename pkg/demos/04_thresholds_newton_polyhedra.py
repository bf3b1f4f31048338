"""
Log canonical thresholds via Newton polyhedra
=============================================

The threshold of a hypersurface with general coefficients is read off the
first point where the weight ray enters the exponent polyhedron; the exact
linear program also produces the supporting normal, which converts into a
lattice valuation realizing the threshold.
"""
from toricmld import (
    ToricGerm,
    dual_hilbert_basis,
    first_intersection_mu,
    germ_cyclic_quotient,
    lct_fermat,
    lct_general_member,
    lct_monomial,
    lct_newton,
    lct_upper_bound_from_valuation,
    newton_poly_from_exponents,
)
from toricmld.lattice import Lattice

print("Thresholds from exponent polyhedra")
print("=" * 40)

###############################################################################
# The cuspidal curve
# ------------------

plane = ToricGerm(Lattice.standard(2), (0, 0))
cusp = newton_poly_from_exponents(plane, [(2, 0), (0, 3)])
print("first intersection parameter:", first_intersection_mu(cusp))
report = lct_newton(cusp)
print("threshold:", report.lct, "binding:", report.binding, "weights:", report.witness)

###############################################################################
# Valuation upper bounds and tightness
# ------------------------------------

for x in [(3, 2), (1, 1), (1, 0)]:
    print(f"bound from valuation {x}:", lct_upper_bound_from_valuation(cusp, x))

###############################################################################
# Closed forms
# ------------

print("monomial x*y^2*z^3 on the standard germ:",
      lct_monomial(ToricGerm(Lattice.standard(3), (0, 0, 0)), (1, 2, 3)))
print("diagonal sum of degrees (2,3):", lct_fermat(2, (0, 0), (2, 3)))

###############################################################################
# General members of the maximal ideal
# ------------------------------------
# The generators of the dual monoid are the exponents of the maximal ideal;
# a general member's threshold follows from that polyhedron.

for k in (2, 3, 5, 8):
    germ = germ_cyclic_quotient(k, (1, 1))
    print(f"1/{k}(1,1): dual monoid generators {dual_hilbert_basis(germ)}"
          f" -> threshold {lct_general_member(germ).lct}")
