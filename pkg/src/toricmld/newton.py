"""Log canonical thresholds of Newton polyhedra.

The polyhedron of a monomial exponent set {m_a} (all in the dual lattice M,
inside the dual orthant) is conv(m_a) + dual orthant.  The ray through the
weight vector w = (1-b_1,...,1-b_d) first meets it at parameter mu, computed
as the exact linear program

    mu = min { t : some convex combination of the m_a is <= t*w },

and the threshold of a hypersurface with those exponents and sufficiently
general coefficients is min(1, 1/mu).  The LP solution also prices out a
normal vector y >= 0 with <y, w> = 1 and <y, m_a> >= mu for every exponent;
scaled to a primitive lattice point it realizes 1/mu as a valuation ratio,
which is the tightness certificate the tests rely on.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .errors import InputError, NotInLattice
from .germ import ToricGerm, _np_rows, log_discrepancy_of_valuation
from .lattice import Lattice
from .linprog import OPTIMAL, solve_lp_max_slack
from .rationals import QVec, qvec

CAP_ONE = "cap-one"
RAY = "ray"

IntVec = tuple[int, ...]


# -- dual monoid generators -----------------------------------------------------


def _ray_orders(lat: Lattice) -> tuple[int, ...]:
    """Smallest positive c_i with c_i * e_i in the dual lattice."""
    out = []
    for i in range(lat.dim):
        c = next(
            k
            for k in range(1, lat.index + 1)
            if lat.dual_contains_int([k if j == i else 0 for j in range(lat.dim)])
        )
        out.append(c)
    return tuple(out)


def dual_hilbert_basis(germ: ToricGerm) -> tuple[IntVec, ...]:
    """Minimal generating set of the monoid (dual lattice) cap (dual orthant).

    Every irreducible element lies in the box prod [0, c_i] where c_i e_i is
    the primitive dual vector on ray i (anything beyond can shed a c_i e_i and
    stay in the monoid), so it suffices to list the dual lattice points of the
    box and discard the ones that dominate another nonzero point: the
    difference of two monoid points is again in the lattice, and it is in the
    orthant exactly when the points are comparable.
    """
    lat = germ.lattice
    key = "hilbert-basis"
    if key in lat._cache:
        return lat._cache[key]
    c = _ray_orders(lat)
    grids = np.meshgrid(*[np.arange(ci + 1, dtype=np.int64) for ci in c], indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    rows = _np_rows(lat.int_rows)
    inside = ((pts @ rows.T) % lat.den == 0).all(axis=1)
    pts = pts[inside]
    pts = pts[pts.any(axis=1)]
    order = np.lexsort(tuple(pts[:, j] for j in range(lat.dim - 1, -1, -1)) + (pts.sum(axis=1),))
    pts = pts[order]
    basis: list[np.ndarray] = []
    for p in pts:
        if basis and (np.array(basis) <= p).all(axis=1).any():
            continue
        basis.append(p)
    result = tuple(sorted(tuple(int(x) for x in p) for p in basis))
    lat._cache[key] = result
    return result


# -- polyhedra -------------------------------------------------------------------


@dataclass(frozen=True)
class NewtonPoly:
    """Exponent set of an element of the maximal ideal, up to the implied
    translation cone: the polyhedron is conv(exponents) + dual orthant."""

    germ: ToricGerm
    exponents: tuple[IntVec, ...]
    pruned: tuple[IntVec, ...] = ()

    @property
    def dim(self) -> int:
        return self.germ.dim


def newton_poly_from_exponents(germ: ToricGerm, exponents, prune_dominated: bool = False) -> NewtonPoly:
    """Validated Newton polyhedron from dual-lattice exponents.

    Componentwise-dominated exponents never change the polyhedron; they are
    kept by default and removed (and recorded) under ``prune_dominated``.
    """
    seen: set[IntVec] = set()
    for e in exponents:
        vec = qvec(e, germ.dim)
        ints = []
        for c in vec:
            if c.denominator != 1 or c < 0:
                raise InputError(f"exponent {vec} must have nonnegative integer entries")
            ints.append(c.numerator)
        ivec = tuple(ints)
        if not any(ivec):
            raise InputError("the zero exponent (a unit, not in the maximal ideal) is not allowed")
        if not germ.lattice.dual_contains_int(ivec):
            raise NotInLattice(f"exponent {ivec} is not in the dual lattice")
        seen.add(ivec)
    if not seen:
        raise InputError("at least one exponent is required")
    exps = tuple(sorted(seen))
    pruned: tuple[IntVec, ...] = ()
    if prune_dominated:
        keep = []
        drop = []
        for e in exps:
            dominated = any(o != e and all(a <= b for a, b in zip(o, e)) for o in exps)
            (drop if dominated else keep).append(e)
        exps, pruned = tuple(keep), tuple(drop)
    return NewtonPoly(germ, exps, pruned)


@dataclass(frozen=True)
class FirstIntersection:
    mu: Fraction | None  # None encodes +infinity (ray never enters)
    weights: tuple[Fraction, ...] | None  # convex combination, aligned with exponents
    normal: tuple[Fraction, ...] | None  # y >= 0, <y,w> = 1, <y,m> >= mu for all m


def _mu_lp(exponents: list[IntVec], weights: QVec) -> tuple[Fraction, tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Exact LP for one exponent subset; returns (mu, lambda, normal).

    Solved in the pricing form  max z : z <= <y, m> for each exponent,
    <y, w> <= 1, (z, y) >= 0,  whose slack basis is feasible outright.  The
    optimum is mu, the optimizer y is the supporting normal, and the duals of
    the exponent rows are the convex weights of the primal form.
    """
    d = len(weights)
    c = [Fraction(1)] + [Fraction(0)] * d
    rows = []
    for m in exponents:
        rows.append(([Fraction(1)] + [Fraction(-v) for v in m], Fraction(0)))
    rows.append(([Fraction(0)] + list(weights), Fraction(1)))
    res = solve_lp_max_slack(c, rows)
    assert res.status == OPTIMAL, "the restricted intersection program is bounded"
    mu = res.objective
    normal = res.x[1:]
    lam = res.duals[: len(exponents)]
    total = sum(lam, start=Fraction(0))
    assert total == 1, "the distinguished column prices the weights to a convex combination"
    return mu, lam, normal


def _first_intersection(exponents: tuple[IntVec, ...], weights: QVec) -> FirstIntersection:
    """Column-generation wrapper: solve on a small active set, price the rest
    with the exact normal vector, and grow the set until nothing violates."""
    d = len(weights)
    zero_coords = [i for i in range(d) if weights[i] == 0]
    valid = [m for m in exponents if all(m[i] == 0 for i in zero_coords)]
    if not valid:
        return FirstIntersection(None, None, None)

    active = {min(valid, key=lambda m: (sum(m), m))}
    for i in range(d):
        active.add(min(valid, key=lambda m: (m[i], m)))
    active_list = sorted(active)
    while True:
        mu, lam, normal = _mu_lp(active_list, weights)
        # price the full exponent list in cleared-denominator integers
        nd = lcm(*(c.denominator for c in normal))
        pn = [int(c * nd) for c in normal]
        threshold = mu.numerator * nd
        scale = mu.denominator
        worst = min(
            valid,
            key=lambda m: (scale * sum(a * b for a, b in zip(pn, m)), m),
        )
        if scale * sum(a * b for a, b in zip(pn, worst)) >= threshold:
            break
        assert worst not in active, "optimal pricing cannot undercut an active column"
        active.add(worst)
        active_list = sorted(active)

    # lift the normal so it prices every exponent, including the ones forced
    # out by a zero-weight coordinate (raising those coordinates is free)
    if zero_coords:
        bump = Fraction(0)
        for m in exponents:
            z = sum(m[i] for i in zero_coords)
            if z:
                val = sum(Fraction(a) * b for a, b in zip(normal, m))
                if val < mu:
                    bump = max(bump, (mu - val) / z)
        if bump:
            normal = tuple(n + bump if i in zero_coords else n for i, n in enumerate(normal))

    by_exp = dict(zip(active_list, lam))
    full_lam = tuple(by_exp.get(m, Fraction(0)) for m in exponents)
    total = sum(full_lam, start=Fraction(0))
    assert total >= 1
    if total != 1:
        full_lam = tuple(v / total for v in full_lam)
    return FirstIntersection(mu, full_lam, normal)


def _poly_intersection(poly: NewtonPoly) -> FirstIntersection:
    key = ("first-intersection", poly.exponents, poly.germ.boundary)
    cache = poly.germ._cache
    if key not in cache:
        cache[key] = _first_intersection(poly.exponents, poly.germ.weights)
    return cache[key]


def first_intersection_mu(poly: NewtonPoly) -> Fraction | None:
    """Parameter of the first ray point t*w inside the polyhedron; None means
    the ray never enters (possible only when some weight vanishes)."""
    res = _poly_intersection(poly)
    if res.mu is not None:
        assert res.mu > 0, "exponents are nonzero and nonnegative, so mu > 0"
    return res.mu


@dataclass(frozen=True)
class LctReport:
    mu: Fraction | None  # None encodes +infinity
    lct: Fraction
    binding: str  # CAP_ONE when the constant 1 decides, RAY otherwise
    witness: tuple[Fraction, ...] | None  # convex weights, or None when infeasible

    def to_json_dict(self) -> dict:
        from .rationals import rat_str

        return {
            "mu": "infinity" if self.mu is None else rat_str(self.mu),
            "lct": rat_str(self.lct),
            "binding": self.binding,
            "witness": "infeasible" if self.witness is None else [rat_str(v) for v in self.witness],
        }


def lct_newton(poly: NewtonPoly) -> LctReport:
    """General-coefficient threshold min(1, 1/mu), with 1/infinity = 0."""
    res = _poly_intersection(poly)
    if res.mu is None:
        return LctReport(None, Fraction(0), RAY, None)
    inv = 1 / res.mu
    if inv > 1:
        return LctReport(res.mu, Fraction(1), CAP_ONE, res.weights)
    return LctReport(res.mu, inv, RAY, res.weights)


def lct_monomial(germ: ToricGerm, n) -> Fraction:
    """Threshold of the invariant divisor of a single monomial: the divisor is
    torus-invariant, so no cap at 1 applies."""
    poly = newton_poly_from_exponents(germ, [n])
    (exp,) = poly.exponents
    vals = [Fraction(w, e) for w, e in zip(germ.weights, exp) if e > 0]
    return min(vals)


def lct_fermat(dim: int, boundary, degrees) -> Fraction:
    """Threshold of x_1^{n_1} + ... + x_d^{n_d} on the standard germ."""
    germ = ToricGerm(Lattice.standard(dim), qvec(boundary, dim))
    degrees = [int(n) for n in degrees]
    if len(degrees) != dim or any(n < 1 for n in degrees):
        raise InputError("need one positive integer degree per coordinate")
    total = sum((Fraction(w, n) for w, n in zip(germ.weights, degrees)), start=Fraction(0))
    return min(Fraction(1), total)


def lct_general_member(germ: ToricGerm) -> LctReport:
    """Threshold of a general member of the maximal ideal: the Newton
    polyhedron generated by the dual Hilbert basis."""
    poly = newton_poly_from_exponents(germ, dual_hilbert_basis(germ))
    return lct_newton(poly)


def lct_upper_bound_from_valuation(poly: NewtonPoly, x) -> Fraction | None:
    """A(x) / min_a <m_a, x> for a primitive lattice x; None encodes +infinity
    (the valuation does not see the divisor).  Always >= the ray threshold."""
    a = log_discrepancy_of_valuation(poly.germ, x)
    x = qvec(x, poly.dim)
    v = min(sum((c * m for c, m in zip(x, exp)), start=Fraction(0)) for exp in poly.exponents)
    if v == 0:
        return None
    return a / v


def normal_witness_ray(poly: NewtonPoly) -> QVec | None:
    """Primitive lattice point on the pricing ray; realizes 1/mu exactly."""
    res = _poly_intersection(poly)
    if res.mu is None or res.normal is None or not any(res.normal):
        return None
    den = lcm(*(c.denominator for c in res.normal))
    ints = [int(c * den) for c in res.normal]
    vec = tuple(Fraction(c) for c in ints)
    k = poly.germ.lattice.primitive_scale(vec)
    return tuple(c / k for c in vec)
