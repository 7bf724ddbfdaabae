"""Arithmetic progressions among coordinates of rational points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2

from .curves import CurvePoint, point_to_json
from .errors import DomainError
from .exactmath.rational import format_rational


@dataclass(frozen=True)
class APCertificate:
    first: Fraction
    difference: Fraction
    length: int
    members: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {
            "first": format_rational(self.first),
            "difference": format_rational(self.difference),
            "length": self.length,
            "members": [format_rational(v) for v in self.members],
        }


@dataclass(frozen=True)
class BoundsReport:
    s_x_lower: int
    s_y_lower: int
    x_witness: APCertificate
    y_witness: APCertificate

    def to_json(self) -> dict:
        return {
            "s_x_lower": self.s_x_lower,
            "s_y_lower": self.s_y_lower,
            "x_witness": self.x_witness.to_json(),
            "y_witness": self.y_witness.to_json(),
        }


@dataclass(frozen=True)
class SimultaneousCertificate:
    points: tuple[CurvePoint, ...]   # in x-progression order
    x_cert: APCertificate
    y_cert: APCertificate
    # y_order[j] is the index, within y_cert, of the y-value of points[j]
    y_order: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "points": [point_to_json(p) for p in self.points],
            "x_cert": self.x_cert.to_json(),
            "y_cert": self.y_cert.to_json(),
            "y_order": list(self.y_order),
        }


def certify_ap(values: Sequence) -> APCertificate | None:
    """Certificate if ``values`` (in the given order) is an AP of distinct terms."""
    vals = tuple(Fraction(v) for v in values)
    if not vals:
        return None
    if len(vals) == 1:
        return APCertificate(vals[0], Fraction(0), 1, vals)
    d = vals[1] - vals[0]
    if d == 0:
        return None
    for u, v in zip(vals[1:], vals[2:]):
        if v - u != d:
            return None
    return APCertificate(vals[0], d, len(vals), vals)


def _make_ap(first: Fraction, d: Fraction, length: int) -> APCertificate:
    return APCertificate(first, d, length, tuple(first + i * d for i in range(length)))


def longest_ap_subset(values: Iterable) -> APCertificate:
    """Longest AP contained in a set of rationals, listed ascending.

    Dynamic programming over pairs: ``best[j][d]`` is the length of the
    longest AP with difference ``d`` ending at the j-th smallest value.
    Ties go to the smallest difference, then the smallest first term.
    """
    distinct = sorted({Fraction(v) for v in values})
    if not distinct:
        raise DomainError("longest_ap_subset of an empty set")
    if len(distinct) == 1:
        return _make_ap(distinct[0], Fraction(0), 1)
    # mpq hashes and compares like Fraction but is several times faster here
    xs = [gmpy2.mpq(v.numerator, v.denominator) for v in distinct]
    best_len = 2
    best_key = None
    ends: list[dict] = []
    for j, xj in enumerate(xs):
        row: dict = {}
        for i in range(j):
            d = xj - xs[i]
            length = ends[i].get(d, 1) + 1
            row[d] = length
            if length >= best_len:
                first = xj - (length - 1) * d
                key = (-length, d, first)
                if best_key is None or key < best_key:
                    best_key = key
                    best_len = length
        ends.append(row)
    neg_len, d, first = best_key
    return _make_ap(Fraction(int(first.numerator), int(first.denominator)),
                    Fraction(int(d.numerator), int(d.denominator)), -neg_len)


def _require_affine(points: Sequence[CurvePoint]) -> None:
    for p in points:
        if p.is_infinity:
            raise DomainError("arithmetic progressions need affine points")


def certify_simultaneous(points: Sequence[CurvePoint]) -> SimultaneousCertificate | None:
    """Certificate if the x-values and the y-values are both APs of
    distinct terms, possibly in different orders.

    If the points are already given in x-progression order that order is
    kept (so P_0, P_1, ... keep their indices); otherwise they are sorted
    by x.  The y progression is always listed ascending.
    """
    pts = list(points)
    _require_affine(pts)
    if not pts:
        return None
    x_cert = certify_ap([p.x for p in pts])
    if x_cert is None:
        pts.sort(key=lambda p: p.x)
        x_cert = certify_ap([p.x for p in pts])
        if x_cert is None:
            return None
    ys = sorted(p.y for p in pts)
    y_cert = certify_ap(ys)
    if y_cert is None:
        return None
    index = {y: i for i, y in enumerate(ys)}
    return SimultaneousCertificate(tuple(pts), x_cert, y_cert, tuple(index[p.y] for p in pts))


def bounds_report(points: Sequence[CurvePoint]) -> BoundsReport:
    if not points:
        raise DomainError("bounds_report of an empty point set")
    _require_affine(points)
    xw = longest_ap_subset(p.x for p in points)
    yw = longest_ap_subset(p.y for p in points)
    return BoundsReport(xw.length, yw.length, xw, yw)
