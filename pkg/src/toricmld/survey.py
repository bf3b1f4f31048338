"""Germ documents, corpus surveys, and verification runs.

Documents are JSON objects with rational entries spelled as strings "p/q"
(or "n"), never binary floats:

    {"dim": 2,
     "lattice": {"generators": [["1/3", "2/3"]]},
     "boundary": ["0", "0"]}

Parsing normalizes (canonical lattice form, primitive standard vectors);
serializing always emits the canonical basis, so serialize(parse(s)) is
canonical and parse(serialize(g)) == g.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from hashlib import sha256
from itertools import permutations, product

from .adjunction import check_lower_semicontinuity, check_precise_inversion, check_shokurov_bounds
from .errors import CheckFailed, InputError, ResourceLimit
from .germ import (
    ToricGerm,
    cartier_index,
    full_face,
    germ_normalize,
    mld_bruteforce_oracle,
    mld_face,
    mld_global,
    verify_minkowski,
)
from .lattice import Lattice, enumerate_superlattices
from .newton import lct_fermat, lct_general_member, lct_newton, newton_poly_from_exponents
from .rationals import qvec, rat, rat_str

ROW_CAP_DEFAULT = 10**6


# -- documents -------------------------------------------------------------------


def germ_document(germ: ToricGerm) -> dict:
    return {
        "dim": germ.dim,
        "lattice": {"generators": [[rat_str(c) for c in row] for row in germ.lattice.basis]},
        "boundary": [rat_str(b) for b in germ.boundary],
    }


def serialize_germ(germ: ToricGerm) -> str:
    return json.dumps(germ_document(germ), sort_keys=True, separators=(",", ":"))


def parse_germ(text: str | dict) -> ToricGerm:
    """Parse and normalize a germ document (string or already-decoded dict)."""
    if isinstance(text, str):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"not valid JSON: {exc}") from exc
    else:
        doc = text
    if not isinstance(doc, dict):
        raise InputError("germ document must be a JSON object")
    try:
        dim = int(doc["dim"])
        gens = doc.get("lattice", {}).get("generators", [])
        boundary = doc["boundary"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"missing field in germ document: {exc}") from exc
    if dim < 1:
        raise InputError("dim must be a positive integer")
    rows = [qvec([rat(c) for c in row], dim) for row in gens]
    lattice = Lattice.from_generators(dim, rows)
    return germ_normalize(lattice, qvec([rat(b) for b in boundary], dim))


def germ_id(germ: ToricGerm) -> str:
    return sha256(serialize_germ(germ).encode()).hexdigest()[:12]


# -- survey ----------------------------------------------------------------------


@dataclass(frozen=True)
class SurveyRow:
    germ_id: str
    dim: int
    index: int
    boundary: tuple[str, ...]
    mld_point: Fraction
    mld_global: Fraction
    mld_exceptional: Fraction | None  # min over codim >= 2 faces; None in dim 1
    witnesses: tuple[str, ...]
    cartier: int
    lsc_ok: bool
    bounds_ok: bool
    pia_ok: bool | None  # None when no coefficient equals 1
    lct_general: Fraction
    sort_key: tuple = field(repr=False, default=())

    HEADER = (
        "germ_id",
        "dim",
        "index",
        "boundary",
        "mld_point",
        "mld_global",
        "mld_exceptional",
        "witnesses",
        "cartier_index",
        "lsc_ok",
        "bounds_ok",
        "pia_ok",
        "lct_general_member",
    )

    def as_record(self) -> tuple:
        return (
            self.germ_id,
            str(self.dim),
            str(self.index),
            ";".join(self.boundary),
            rat_str(self.mld_point),
            rat_str(self.mld_global),
            "" if self.mld_exceptional is None else rat_str(self.mld_exceptional),
            ";".join(self.witnesses),
            str(self.cartier),
            str(self.lsc_ok).lower(),
            str(self.bounds_ok).lower(),
            "n/a" if self.pia_ok is None else str(self.pia_ok).lower(),
            rat_str(self.lct_general),
        )


def exceptional_mld(germ: ToricGerm) -> Fraction | None:
    """Minimum over the faces of codimension at least 2 (the valuations that
    are genuinely exceptional over the germ); None in dimension 1, where no
    such valuation exists."""
    values = [
        mld_face(germ, face).value for face in germ.faces() if len(face.support) >= 2
    ]
    return min(values) if values else None


def _survey_row(germ: ToricGerm) -> SurveyRow:
    point = mld_face(germ, full_face(germ.dim))
    glob = mld_global(germ)
    pia: bool | None = None
    if germ.dim >= 2:
        ones = [i + 1 for i, b in enumerate(germ.boundary) if b == 1]
        if ones:
            pia = all(check_precise_inversion(germ, i).passed for i in ones)
    return SurveyRow(
        germ_id=germ_id(germ),
        dim=germ.dim,
        index=germ.lattice.index,
        boundary=tuple(rat_str(b) for b in germ.boundary),
        mld_point=point.value,
        mld_global=glob.value,
        mld_exceptional=exceptional_mld(germ),
        witnesses=tuple("(" + ",".join(rat_str(c) for c in w) + ")" for w in point.witnesses),
        cartier=cartier_index(germ),
        lsc_ok=check_lower_semicontinuity(germ).passed,
        bounds_ok=check_shokurov_bounds(germ).passed,
        pia_ok=pia,
        lct_general=lct_general_member(germ).lct,
        sort_key=(germ.dim, germ.lattice.index, germ.lattice.basis, germ.boundary),
    )


def _rows_for_lattice(args) -> list[SurveyRow]:
    lattice, boundaries = args
    return [_survey_row(ToricGerm(lattice, b)) for b in boundaries]


def run_survey(
    dim: int,
    max_index: int,
    boundary_set,
    mod_permutations: bool = False,
    row_cap: int = ROW_CAP_DEFAULT,
    jobs: int = 1,
) -> list[SurveyRow]:
    """All germs built from bounded-index lattices crossed with boundary
    assignments drawn from the given finite coefficient set.

    Output order is canonical (dim, index, basis, boundary) no matter how the
    work is scheduled; exceeding ``row_cap`` raises instead of truncating.
    """
    coeffs = sorted({rat(b) for b in boundary_set})
    if not coeffs:
        raise InputError("boundary set must be nonempty")
    for b in coeffs:
        if not 0 <= b <= 1:
            raise InputError(f"boundary coefficient {b} outside [0,1]")
    lattices = enumerate_superlattices(dim, max_index)
    assignments = list(product(coeffs, repeat=dim))
    total = len(lattices) * len(assignments)
    if total > row_cap:
        raise ResourceLimit(f"survey would emit {total} rows, above the cap {row_cap}")
    if mod_permutations:
        work = []
        for lattice in lattices:
            per_lattice = []
            for b in assignments:
                orbit_keys = []
                for perm in permutations(range(dim)):
                    plat = lattice.permute(perm)
                    pb = tuple(b[p] for p in perm)
                    orbit_keys.append((plat.basis, pb))
                if min(orbit_keys) == (lattice.basis, b):
                    per_lattice.append(b)
            work.append((lattice, per_lattice))
    else:
        work = [(lattice, assignments) for lattice in lattices]

    if jobs > 1:
        import multiprocessing as mp

        try:
            ctx = mp.get_context("fork")
        except ValueError:  # pragma: no cover
            ctx = mp.get_context("spawn")
        with ctx.Pool(jobs) as pool:
            chunks = pool.map(_rows_for_lattice, work)
    else:
        chunks = [_rows_for_lattice(w) for w in work]
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=lambda r: r.sort_key)
    return rows


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SurveyRow.HEADER)
    for row in rows:
        writer.writerow(row.as_record())
    return buf.getvalue()


def rows_to_json(rows) -> str:
    payload = [dict(zip(SurveyRow.HEADER, row.as_record())) for row in rows]
    return json.dumps(payload, indent=1, sort_keys=True) + "\n"


# -- chain-condition report -------------------------------------------------------


@dataclass(frozen=True)
class AccReport:
    values: tuple[tuple[Fraction, int], ...]  # sorted distinct values with multiplicities
    maximum: Fraction
    gaps: tuple[tuple[Fraction, Fraction, Fraction], ...]  # consecutive (lo, hi, hi-lo)
    accumulation_candidates: tuple[tuple[Fraction, str, int], ...]  # (value, side, count)

    def to_json_dict(self) -> dict:
        return {
            "values": [[rat_str(v), n] for v, n in self.values],
            "maximum": rat_str(self.maximum),
            "gaps": [[rat_str(a), rat_str(b), rat_str(g)] for a, b, g in self.gaps],
            "accumulation_candidates": [
                [rat_str(v), side, n] for v, side, n in self.accumulation_candidates
            ],
        }


def acc_report(rows) -> AccReport:
    """Distinct point-minimum values of a survey, with sanity assertions.

    Raises CheckFailed when the dimension bound fails, when a non-standard
    lattice attains the bound, or when a zero-boundary three-dimensional
    corpus contradicts the terminal classification: a germ whose exceptional
    minimum exceeds 1 (no exceptional valuation at or below 1, the terminal
    regime the classification speaks about) must have point minimum 3 or
    1 + 1/q.  Non-isolated singularities escape that list legitimately: a
    surface germ with minimum m in (0,1) times a smooth curve has point
    minimum 1 + m at every point of its singular axis.

    Accumulation candidates are purely exploratory: a value v is flagged when
    at least three other distinct values lie within 1/8 of it on one side.
    No convergence claim is implied by the flag.
    """
    rows = list(rows)
    if not rows:
        raise InputError("acc report needs at least one row")
    dim = max(r.dim for r in rows)
    counts: dict[Fraction, int] = {}
    for r in rows:
        counts[r.mld_point] = counts.get(r.mld_point, 0) + 1
    values = sorted(counts)
    maximum = values[-1]
    if maximum > dim:
        raise CheckFailed(f"maximum {maximum} exceeds the dimension {dim}")
    for r in rows:
        if r.mld_point == dim and not (r.index == 1 and all(b == "0" for b in r.boundary)):
            raise CheckFailed("the dimension bound may only be attained by the standard germ")
    zero_boundary = all(all(b == "0" for b in r.boundary) for r in rows)
    if zero_boundary and all(r.dim == 3 for r in rows):
        for r in rows:
            if r.mld_exceptional is not None and r.mld_exceptional > 1:
                v = r.mld_point
                if v != 3 and (v - 1).numerator != 1:
                    raise CheckFailed(
                        f"terminal germ {r.germ_id} has value {v}, neither 3 nor of the form 1+1/q"
                    )
    gaps = tuple((a, b, b - a) for a, b in zip(values, values[1:]))
    window = Fraction(1, 8)
    cands = []
    for v in values:
        below = sum(1 for u in values if v - window < u < v)
        above = sum(1 for u in values if v < u < v + window)
        if below >= 3:
            cands.append((v, "from-below", below))
        if above >= 3:
            cands.append((v, "from-above", above))
    return AccReport(
        values=tuple((v, counts[v]) for v in values),
        maximum=maximum,
        gaps=gaps,
        accumulation_candidates=tuple(cands),
    )


# -- corpus verification ----------------------------------------------------------


@dataclass(frozen=True)
class CorpusConfig:
    dims: tuple[int, ...] = (1, 2, 3)
    max_index: int = 12
    boundary_set: tuple[Fraction, ...] = (Fraction(0), Fraction(1, 2), Fraction(2, 3), Fraction(1))
    oracle_radius: int = 3
    minkowski_delta: Fraction = Fraction(1, 7)
    fail_fast: bool = False
    row_cap: int = ROW_CAP_DEFAULT

    @classmethod
    def from_dict(cls, doc: dict) -> "CorpusConfig":
        kwargs = {}
        if "dims" in doc:
            kwargs["dims"] = tuple(int(d) for d in doc["dims"])
        if "max_index" in doc:
            kwargs["max_index"] = int(doc["max_index"])
        if "boundary_set" in doc:
            kwargs["boundary_set"] = tuple(rat(b) for b in doc["boundary_set"])
        if "oracle_radius" in doc:
            kwargs["oracle_radius"] = int(doc["oracle_radius"])
        if "minkowski_delta" in doc:
            kwargs["minkowski_delta"] = rat(doc["minkowski_delta"])
        if "fail_fast" in doc:
            kwargs["fail_fast"] = bool(doc["fail_fast"])
        if "row_cap" in doc:
            kwargs["row_cap"] = int(doc["row_cap"])
        return cls(**kwargs)


def corpus_germs(config: CorpusConfig):
    coeffs = sorted(set(config.boundary_set))
    for d in config.dims:
        for lattice in enumerate_superlattices(d, config.max_index):
            for b in product(coeffs, repeat=d):
                yield ToricGerm(lattice, b)


def _check_germ(germ: ToricGerm, config: CorpusConfig) -> list[str]:
    problems = []
    point = mld_face(germ, full_face(germ.dim))
    face_values = {}
    for face in germ.faces():
        engine = mld_face(germ, face)
        face_values[face.support] = engine.value
        oracle = mld_bruteforce_oracle(germ, face, config.oracle_radius)
        if engine.value != oracle:
            problems.append(f"oracle mismatch on face {face.support}: {engine.value} vs {oracle}")
        for w in engine.witnesses:
            if engine.value != germ.log_discrepancy(w):
                problems.append(f"witness {w} does not attain the face value")
            if not germ.lattice.contains(w):
                problems.append(f"witness {w} is outside the lattice")
    if not check_lower_semicontinuity(germ).passed:
        problems.append("lower semicontinuity inequality failed")
    if not check_shokurov_bounds(germ).passed:
        problems.append("dimension bound check failed")
    r = cartier_index(germ)
    for support, value in face_values.items():
        if (r * value).denominator != 1:
            problems.append(f"index divisibility failed on face {support}")
    if not verify_minkowski(germ, point.value, config.minkowski_delta):
        problems.append("lattice-point-free dilation check failed")
    for i, b in enumerate(germ.boundary, start=1):
        if b == 1 and germ.dim >= 2:
            if not check_precise_inversion(germ, i).passed:
                problems.append(f"adjunction equality failed on divisor {i}")
    if germ.lattice.index == 1:
        degrees = tuple((i % 3) + 1 for i in range(germ.dim))
        closed = lct_fermat(germ.dim, germ.boundary, degrees)
        poly = newton_poly_from_exponents(
            germ, [tuple(degrees[i] if j == i else 0 for j in range(germ.dim)) for i in range(germ.dim)]
        )
        if closed != lct_newton(poly).lct:
            problems.append("closed-form threshold disagrees with the ray program")
    lct = lct_general_member(germ).lct
    if all(b == 1 for b in germ.boundary):
        if lct != 0:
            problems.append("zero weights must give a zero general-member threshold")
    elif not 0 < lct <= 1:
        problems.append(f"general-member threshold {lct} outside (0,1]")
    return problems


def verify_corpus(config: CorpusConfig, germs=None) -> tuple[int, dict]:
    """Run the full battery over a corpus; returns (exit status, report).

    Status 0 means every check passed (vacuously on an empty corpus, with a
    warning); status 2 carries a reproduction payload for the first failing
    germ in the report.
    """
    report: dict = {"checked": 0, "failures": [], "warnings": []}
    source = corpus_germs(config) if germs is None else germs
    for germ in source:
        if report["checked"] >= config.row_cap:
            raise ResourceLimit(f"corpus exceeds the row cap {config.row_cap}")
        report["checked"] += 1
        try:
            problems = _check_germ(germ, config)
        except Exception as exc:  # a crash while checking is itself a failure
            problems = [f"exception during checks: {type(exc).__name__}: {exc}"]
        if problems:
            try:
                doc = germ_document(germ)
            except Exception:
                doc = {"repr": repr(germ)}
            report["failures"].append({"germ": doc, "problems": problems})
            if config.fail_fast:
                break
    if report["checked"] == 0:
        report["warnings"].append("empty corpus: all checks passed vacuously")
    status = 2 if report["failures"] else 0
    return status, report
