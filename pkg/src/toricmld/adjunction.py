"""Adjunction to an invariant divisor, with semicontinuity and bound checks.

Restricting a germ to the divisor H_i (its boundary coefficient must be 1)
happens in three steps: move coordinate i last, project the lattice along it,
and rescale each remaining coordinate by the primitive scale n_j of its
standard basis vector so the result is again in normal form.  The induced
boundary coefficient is b'_j = 1 - (1-b_j)/n_j.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .germ import ToricGerm, full_face, germ_normalize, mld_face


@dataclass(frozen=True)
class AdjunctionResult:
    germ: ToricGerm  # dimension d-1, normal form
    scales: tuple[int, ...]  # n_j, in the original order of the kept coordinates

    def to_json_dict(self) -> dict:
        from .survey import germ_document

        return {"germ": germ_document(self.germ), "scales": list(self.scales)}


@dataclass(frozen=True)
class CheckReport:
    passed: bool
    details: tuple[tuple[str, Fraction, Fraction], ...]

    def to_json_dict(self) -> dict:
        from .rationals import rat_str

        return {
            "passed": self.passed,
            "details": [[label, rat_str(lhs), rat_str(rhs)] for label, lhs, rhs in self.details],
        }


def adjoin_invariant_divisor(germ: ToricGerm, divisor: int) -> AdjunctionResult:
    """Restrict to the invariant divisor ``divisor`` (1-based, b_i = 1)."""
    d = germ.dim
    if d < 2:
        raise InputError("adjunction needs dimension at least 2")
    if not 1 <= divisor <= d:
        raise InputError(f"divisor index {divisor} out of range 1..{d}")
    if germ.boundary[divisor - 1] != 1:
        raise InputError("adjunction requires boundary coefficient 1 on the chosen divisor")
    lat = germ.lattice
    key = ("adjunction", divisor)
    if key not in lat._cache:
        perm = tuple(j for j in range(d) if j != divisor - 1) + (divisor - 1,)
        projected = lat.permute(perm).project_drop(d)
        scales = projected.unit_scales
        lat._cache[key] = (projected, scales)
    projected, scales = lat._cache[key]
    kept = [b for j, b in enumerate(germ.boundary) if j != divisor - 1]
    induced = [1 - (1 - b) / n for b, n in zip(kept, scales)]
    result = germ_normalize(projected, induced)
    assert result.lattice.unit_scales == tuple(1 for _ in range(d - 1))
    return AdjunctionResult(result, tuple(scales))


def check_precise_inversion(germ: ToricGerm, divisor: int) -> CheckReport:
    """Compare the fixed-point minimum upstairs with the one on the divisor."""
    adj = adjoin_invariant_divisor(germ, divisor)
    lhs = mld_face(germ, full_face(germ.dim)).value
    rhs = mld_face(adj.germ, full_face(adj.germ.dim)).value
    detail = (f"point-minimum vs divisor {divisor}", lhs, rhs)
    return CheckReport(lhs == rhs, (detail,))


def check_lower_semicontinuity(germ: ToricGerm) -> CheckReport:
    """mld(P) <= mld(face) + dim(cycle) for every proper invariant cycle."""
    at_point = mld_face(germ, full_face(germ.dim)).value
    details = []
    ok = True
    for face in germ.faces():
        if len(face.support) == germ.dim:
            continue
        bound = mld_face(germ, face).value + (germ.dim - len(face.support))
        details.append((f"S={face.support}", at_point, bound))
        ok = ok and at_point <= bound
    return CheckReport(ok, tuple(details))


def check_shokurov_bounds(germ: ToricGerm) -> CheckReport:
    """mld(P) <= d, and values above d-1 only on the standard lattice with
    the multiplicity formula d - sum(b)."""
    d = germ.dim
    value = mld_face(germ, full_face(d)).value
    details = [("point-minimum vs dimension", value, Fraction(d))]
    ok = value <= d
    if value > d - 1:
        smooth = germ.lattice.index == 1
        details.append(("smooth-branch lattice index", Fraction(germ.lattice.index), Fraction(1)))
        expected = d - sum(germ.boundary, start=Fraction(0))
        details.append(("smooth-branch multiplicity formula", value, expected))
        ok = ok and smooth and value == expected
    return CheckReport(ok, tuple(details))
