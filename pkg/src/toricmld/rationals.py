"""Exact rational scalars and vectors.

Scalars are ``fractions.Fraction`` (always reduced, positive denominator),
vectors are plain tuples of Fractions.  Nothing in this package ever touches
floating point; numpy shows up elsewhere only as an exact integer engine.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch, MalformedRational

Rat = Fraction
QVec = tuple[Fraction, ...]

_RAT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def rat(value) -> Fraction:
    """Coerce an int, Fraction or strict "p/q" string to a Fraction.

    String form is deliberately narrow: an optional sign, digits, and an
    optional /q part.  Decimal or float-ish spellings are rejected so that
    documents stay unambiguous.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RAT_RE.match(text):
            raise MalformedRational(f"malformed rational literal: {value!r}")
        num, _, den = text.partition("/")
        if den == "":
            return Fraction(int(num))
        if int(den) == 0:
            raise MalformedRational(f"zero denominator: {value!r}")
        return Fraction(int(num), int(den))
    raise MalformedRational(f"cannot interpret {value!r} as a rational")


def rat_str(value: Fraction) -> str:
    """Render a Fraction as "n" or "p/q"."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def qvec(entries: Iterable, dim: int | None = None) -> QVec:
    """Coerce an iterable of rational-like entries to a QVec."""
    vec = tuple(rat(e) for e in entries)
    if dim is not None and len(vec) != dim:
        raise DimensionMismatch(f"expected a vector of length {dim}, got {len(vec)}")
    return vec


def qvec_str(vec: Sequence[Fraction]) -> str:
    return "(" + ",".join(rat_str(e) for e in vec) + ")"


def common_denominator(vectors: Iterable[Sequence[Fraction]]) -> int:
    """lcm of the denominators of every entry of every vector (at least 1)."""
    den = 1
    for vec in vectors:
        for e in vec:
            den = lcm(den, Fraction(e).denominator)
    return den


def scaled_int_vector(vec: Sequence[Fraction], scale: int) -> tuple[int, ...]:
    """scale*vec as integers; raises if any entry fails to clear."""
    out = []
    for e in vec:
        s = Fraction(e) * scale
        if s.denominator != 1:
            raise ValueError(f"{scale} does not clear the denominator of {e}")
        out.append(s.numerator)
    return tuple(out)
