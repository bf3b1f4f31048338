"""
Building flat log structures
============================

Starting from a log canonical germ, general members of the maximal ideal are
added one at a time, each at the largest coefficient the structure tolerates,
until some valuation centered at the distinguished point reaches value zero.
The run records each coefficient with the center that became critical.
"""
from toricmld import (
    FlatState,
    ToricGerm,
    build_flat_structure,
    germ_cyclic_quotient,
    state_value,
    threshold_step,
)
from toricmld.flat import ray_infimum
from toricmld.lattice import Lattice

print("Flat log structures")
print("=" * 40)


def show(res):
    from toricmld.rationals import qvec_str

    for gamma, center in res.trace:
        where = center.kind
        if center.divisors:
            where += f" {center.divisors}"
        print(f"  gamma = {gamma}  ->  critical center: {where} (dimension {center.dimension})")
    spot = "member intersection" if res.witness.x is None else qvec_str(res.witness.x)
    print("  witness:", spot, "with members", res.witness.divisors)


###############################################################################
# The smooth surface germ: two general curves through the origin
# ---------------------------------------------------------------

plane = ToricGerm(Lattice.standard(2), (0, 0))
print("interior ratio infimum of the plane:", ray_infimum(plane))
show(build_flat_structure(plane))

###############################################################################
# Three general hyperplanes in the smooth 3-fold germ
# ---------------------------------------------------

show(build_flat_structure(ToricGerm(Lattice.standard(3), (0, 0, 0))))

###############################################################################
# A singular example finishes in one step
# ---------------------------------------

half = germ_cyclic_quotient(2, (1, 1))
print("threshold of the first member on 1/2(1,1):",
      threshold_step(FlatState(half, ())))
show(build_flat_structure(half))

###############################################################################
# Value bookkeeping
# -----------------
# Every combo valuation of the finished structure is nonnegative, and the
# witness hits zero exactly.

res = build_flat_structure(half)
print("witness value:",
      state_value(res.state, res.witness.x, res.witness.divisors))
print("an off-ray combo stays positive:",
      state_value(res.state, (1, 2)))
