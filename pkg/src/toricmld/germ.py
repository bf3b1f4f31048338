"""Toric log germs and their minimal log discrepancies.

A germ is the pair of a lattice N containing Z^d (with every standard basis
vector primitive in N) and boundary coefficients b in [0,1]^d; the ambient
cone is always the positive orthant.  The log discrepancy of the divisorial
valuation attached to a primitive x in N cap sigma is sum (1-b_i) x_i, and
every minimum of that form over a face stratum is realized inside the unit
box: subtracting a standard basis vector from a coordinate exceeding 1 stays
in the stratum and cannot increase the value because weights are >= 0.  The
finitely many box candidates are the coset representatives with zeros off
the support, zeros on the support lifted to 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import ceil, gcd, lcm

import numpy as np

from .errors import InputError, NotInLattice, NotPrimitive
from .lattice import Lattice, _divisors
from .rationals import QVec, qvec, qvec_str, rat

_INT64_LIMIT = 2**40


def _np_rows(rows):
    """Exact integer numpy matrix; falls back to object dtype for huge entries."""
    arr = np.array(rows, dtype=object)
    if arr.size == 0 or max(1, int(abs(arr).max())) < _INT64_LIMIT:
        return np.array(rows, dtype=np.int64).reshape(len(rows), -1)
    return arr


@dataclass(frozen=True)
class Face:
    """A nonempty support set S inside {1..d}, naming the cone face x_i > 0
    exactly for i in S and the invariant cycle C_S : (x_i = 0, i in S)."""

    support: tuple[int, ...]

    def __post_init__(self):
        sup = tuple(sorted(set(int(i) for i in self.support)))
        if not sup:
            raise InputError("a face needs a nonempty support")
        object.__setattr__(self, "support", sup)

    @classmethod
    def coerce(cls, value, dim: int) -> "Face":
        face = value if isinstance(value, Face) else cls(tuple(value))
        if face.support[0] < 1 or face.support[-1] > dim:
            raise InputError(f"face support {face.support} out of range 1..{dim}")
        return face

    def codim(self) -> int:
        return len(self.support)


def full_face(dim: int) -> Face:
    return Face(tuple(range(1, dim + 1)))


def all_faces(dim: int) -> list[Face]:
    faces = []
    for size in range(1, dim + 1):
        faces.extend(Face(c) for c in combinations(range(1, dim + 1), size))
    return faces


@dataclass(frozen=True)
class MldReport:
    value: Fraction
    witnesses: tuple[QVec, ...]
    face: Face

    def to_json_dict(self) -> dict:
        from .rationals import rat_str

        return {
            "value": rat_str(self.value),
            "witnesses": [[rat_str(c) for c in w] for w in self.witnesses],
            "face": list(self.face.support),
        }


@dataclass(frozen=True)
class ToricGerm:
    """Germ data: lattice N (normal form, e_i primitive) + boundary b."""

    lattice: Lattice
    boundary: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "boundary", qvec(self.boundary, self.lattice.dim))
        for b in self.boundary:
            if not 0 <= b <= 1:
                raise InputError(f"boundary coefficient {b} outside [0,1]")
        if not self.lattice.is_superlattice:
            raise InputError("germ lattice must contain Z^d")
        if any(k != 1 for k in self.lattice.unit_scales):
            raise InputError("standard basis vectors must be primitive; normalize first")

    @property
    def dim(self) -> int:
        return self.lattice.dim

    @cached_property
    def weights(self) -> QVec:
        return tuple(1 - b for b in self.boundary)

    @cached_property
    def _weight_ints(self) -> tuple[tuple[int, ...], int]:
        wd = lcm(*(w.denominator for w in self.weights))
        return tuple(int(w * wd) for w in self.weights), wd

    def log_discrepancy(self, x: QVec) -> Fraction:
        return sum((w * c for w, c in zip(self.weights, x)), start=Fraction(0))

    def faces(self) -> list[Face]:
        return all_faces(self.dim)

    # -- unit-box candidate sets (cached per lattice, shared across germs) --

    def _face_candidates(self, face: Face) -> np.ndarray:
        """den-scaled integer candidates for the face stratum minimum."""
        lat = self.lattice
        key = ("face-cands", face.support)
        if key not in lat._cache:
            den = lat.den
            on = [i - 1 for i in face.support]
            off = [j for j in range(lat.dim) if j + 1 not in face.support]
            rows = []
            for u in lat.rep_ints:
                if any(u[j] for j in off):
                    continue
                rows.append(tuple(den if (j in on and u[j] == 0) else u[j] for j in range(lat.dim)))
            lat._cache[key] = _np_rows(rows)
        return lat._cache[key]

    @cached_property
    def _cache(self) -> dict:
        return {}

    def __repr__(self) -> str:
        return f"ToricGerm({self.lattice!r}, b={qvec_str(self.boundary)})"


# -- constructors --------------------------------------------------------------


def germ_normalize(lattice: Lattice, boundary) -> ToricGerm:
    """Rescale coordinates so each standard basis vector becomes primitive.

    The i-th coordinate is multiplied by the primitive scale of e_i; boundary
    coefficients stay attached to their divisors.  Idempotent.
    """
    boundary = qvec(boundary, lattice.dim)
    for b in boundary:
        if not 0 <= b <= 1:
            raise InputError(f"boundary coefficient {b} outside [0,1]")
    if not lattice.is_superlattice:
        raise InputError("germ lattice must contain Z^d")
    scales = lattice.unit_scales
    if any(k != 1 for k in scales):
        rows = [tuple(c * k for c, k in zip(row, scales)) for row in lattice.basis]
        lattice = Lattice.from_rows(lattice.dim, rows)
        assert all(k == 1 for k in lattice.unit_scales)
    return ToricGerm(lattice, boundary)


def germ_cyclic_quotient(q: int, a) -> ToricGerm:
    """Quotient-singularity germ of type (1/q)(a_1,...,a_d) with zero boundary."""
    if q < 1:
        raise InputError("q must be a positive integer")
    a = [int(x) for x in a]
    gen = [Fraction(x, q) for x in a]
    lat = Lattice.from_generators(len(a), [gen])
    return germ_normalize(lat, [0] * len(a))


def germ_from_px(x) -> tuple[ToricGerm, tuple[int, ...]]:
    """Germ over Z^d + Z*x with boundary 1 - 1/n_j, plus the scales n_j.

    q is any (here the least) positive integer with q*x integral; the scales
    n_j = gcd(q, qx_1, .., qx_j omitted, .., qx_d) / gcd(q, qx_1, .., qx_d)
    do not depend on that choice, and agree with the primitive scales of the
    standard basis vectors in Z^d + Z*x (asserted).
    """
    x = qvec(x)
    d = len(x)
    if d == 0:
        raise InputError("empty vector")
    for c in x:
        if not 0 < c <= 1:
            raise InputError(f"coordinate {c} outside (0,1]")
    q = lcm(*(c.denominator for c in x))
    qx = [int(c * q) for c in x]
    g_all = gcd(q, *qx)
    scales = []
    for j in range(d):
        others = qx[:j] + qx[j + 1 :]
        scales.append(gcd(q, *others) // g_all if others else q // g_all)
    lat = Lattice.from_generators(d, [x])
    assert tuple(scales) == lat.unit_scales, "gcd formula must match primitive scales"
    boundary = [1 - Fraction(1, n) for n in scales]
    return germ_normalize(lat, boundary), tuple(scales)


# -- the engine -----------------------------------------------------------------


def log_discrepancy_of_valuation(germ: ToricGerm, x) -> Fraction:
    """sum (1-b_i) x_i for a primitive lattice point x of the orthant."""
    x = qvec(x, germ.dim)
    if any(c < 0 for c in x):
        raise InputError(f"{x} is outside the positive orthant")
    if not any(x):
        raise InputError("the zero vector is not a divisorial valuation")
    if not germ.lattice.contains(x):
        raise NotInLattice(f"{x} is not in the germ lattice")
    k = germ.lattice.primitive_scale(x)
    if k != 1:
        raise NotPrimitive(f"{x} = {k} * ({qvec_str(tuple(c / k for c in x))})", scale=k)
    return germ.log_discrepancy(x)


def mld_face(germ: ToricGerm, face) -> MldReport:
    """Minimum of sum (1-b_i) x_i over lattice points with support exactly S.

    Evaluated on the finite unit-box candidate set; witnesses are all box
    minimizers, lexicographically sorted.
    """
    face = Face.coerce(face, germ.dim)
    cands = germ._face_candidates(face)
    wn, wd = germ._weight_ints
    den = germ.lattice.den
    vals = cands @ np.array(wn, dtype=cands.dtype)
    m = int(vals.min())
    rows = sorted(tuple(int(c) for c in cands[i]) for i in np.nonzero(vals == m)[0])
    witnesses = tuple(tuple(Fraction(c, den) for c in row) for row in rows)
    return MldReport(Fraction(m, den * wd), witnesses, face)


def mld_global(germ: ToricGerm) -> MldReport:
    """Minimum over all nonempty faces; reports the first minimizing face
    in (codimension, lexicographic) order."""
    best: MldReport | None = None
    for face in germ.faces():
        rep = mld_face(germ, face)
        if best is None or rep.value < best.value:
            best = rep
    assert best is not None
    return best


def mld_bruteforce_oracle(germ: ToricGerm, face, radius: int) -> Fraction:
    """Exhaustive minimum over lattice points with coordinates in (0, radius]
    on the support and 0 off it, by direct coset-shift enumeration."""
    if radius < 1:
        raise InputError("radius must be >= 1")
    face = Face.coerce(face, germ.dim)
    lat = germ.lattice
    key = ("oracle-cands", face.support, radius)
    if key not in lat._cache:
        den = lat.den
        on = set(i - 1 for i in face.support)
        rows = []
        for u in lat.rep_ints:
            if any(c for j, c in enumerate(u) if j not in on):
                continue
            choices = []
            for j in range(lat.dim):
                if j not in on:
                    choices.append((0,))
                elif u[j] == 0:
                    choices.append(tuple(s * den for s in range(1, radius + 1)))
                else:
                    choices.append(tuple(u[j] + s * den for s in range(radius)))
            rows.extend(product(*choices))
        lat._cache[key] = _np_rows(rows)
    cands = lat._cache[key]
    wn, wd = germ._weight_ints
    vals = cands @ np.array(wn, dtype=cands.dtype)
    return Fraction(int(vals.min()), lat.den * wd)


def verify_minkowski(germ: ToricGerm, t, delta) -> bool:
    """Check that N meets the open dilate int(t*Delta) in no point but does
    meet int((t+delta)*Delta), for Delta = {x >= 0 : sum (1-b_i) x_i <= 1}.

    Interior points have all coordinates positive, so emptiness is decided on
    the full-support unit-box candidates: coordinate reduction by standard
    basis vectors keeps interiority and never increases the defining sum.
    """
    t, delta = rat(t), rat(delta)
    if t < 0 or delta <= 0:
        raise InputError("need t >= 0 and delta > 0")
    cands = germ._face_candidates(full_face(germ.dim))
    wn, wd = germ._weight_ints
    den = germ.lattice.den
    vals = [Fraction(int(v), den * wd) for v in cands @ np.array(wn, dtype=cands.dtype)]
    empty_at_t = all(v >= t for v in vals)
    nonempty_above = any(v < t + delta for v in vals)
    return empty_at_t and nonempty_above


def px_mld_formula(x) -> Fraction:
    """min over n >= 0 of sum_i (1 + n x_i - ceil(n x_i)); periodic in n with
    period q where q*x is integral, so only n = 0..q-1 are scanned."""
    x = qvec(x)
    for c in x:
        if not 0 < c <= 1:
            raise InputError(f"coordinate {c} outside (0,1]")
    q = lcm(*(c.denominator for c in x))
    best = None
    for n in range(q):
        total = sum((1 + n * c - ceil(n * c) for c in x), start=Fraction(0))
        if best is None or total < best:
            best = total
    assert best is not None
    return best


def cartier_index(germ: ToricGerm) -> int:
    """Smallest r >= 1 with r*(1-b_1,...,1-b_d) in the dual lattice."""
    w = germ.weights
    r0 = lcm(*(c.denominator for c in w))
    base = [int(c * r0) for c in w]
    for k in _divisors(germ.lattice.index):
        if germ.lattice.dual_contains_int([k * c for c in base]):
            return r0 * k
    raise AssertionError("order of the weight vector must divide the index")
