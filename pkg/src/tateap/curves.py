"""Long Weierstrass and Tate normal form curves over Q, with the group law.

A long Weierstrass curve is

    Y^2 + a1 XY + a3 Y = X^3 + a2 X^2 + a4 X + a6

and the Tate normal form E(a, b) is the special case
(a1, a2, a3, a4, a6) = (a, -b, b, 0, 0).  The chord-tangent formulas are
written for the long form directly; no reduction to short form is made,
since a coordinate change would move the y-coordinates we care about.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, UsageError
from .exactmath.rational import format_rational, parse_rational


@dataclass(frozen=True)
class WeierstrassCurve:
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def b_invariants(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        a1, a2, a3, a4, a6 = self.coefficients
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    def is_tate(self) -> bool:
        return self.a4 == 0 and self.a6 == 0 and self.a2 == -self.a3

    def to_tate(self) -> "TateCurve":
        if not self.is_tate():
            raise DomainError(f"{self} is not in Tate normal form")
        return TateCurve(self.a1, self.a3)

    def __str__(self):
        return "[" + ", ".join(format_rational(c) for c in self.coefficients) + "]"


@dataclass(frozen=True)
class TateCurve:
    """E(a, b): Y^2 + aXY + bY = X^3 - bX^2."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def long_form(self) -> WeierstrassCurve:
        return WeierstrassCurve(self.a, -self.b, self.b, 0, 0)

    def __str__(self):
        return f"E({format_rational(self.a)}, {format_rational(self.b)})"


@dataclass(frozen=True)
class CurvePoint:
    """Affine point, or the point at infinity when ``x`` and ``y`` are None."""

    x: Fraction | None
    y: Fraction | None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise UsageError("a point needs both coordinates or neither")
        if self.x is not None:
            object.__setattr__(self, "x", Fraction(self.x))
            object.__setattr__(self, "y", Fraction(self.y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self):
        if self.is_infinity:
            return "O"
        return f"({format_rational(self.x)}, {format_rational(self.y)})"


INFINITY = CurvePoint(None, None)


def point(x, y) -> CurvePoint:
    return CurvePoint(Fraction(x), Fraction(y))


@dataclass(frozen=True)
class CoordChange:
    """Admissible change of variables ``x = u^2 x' + r``,
    ``y = u^3 y' + s u^2 x' + t`` (old coordinates in terms of new)."""

    u: Fraction
    r: Fraction = Fraction(0)
    s: Fraction = Fraction(0)
    t: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("u", "r", "s", "t"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.u == 0:
            raise UsageError("coordinate change needs u != 0")

    def inverse(self) -> "CoordChange":
        u, r, s, t = self.u, self.r, self.s, self.t
        return CoordChange(1 / u, -r / u**2, -s / u, (r * s - t) / u**3)


def _as_long(c) -> WeierstrassCurve:
    return c.long_form() if isinstance(c, TateCurve) else c


def discriminant(c) -> Fraction:
    b2, b4, b6, b8 = _as_long(c).b_invariants()
    return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def is_nonsingular(c) -> bool:
    return discriminant(c) != 0


def contains(c, p: CurvePoint) -> bool:
    if p.is_infinity:
        return True
    e = _as_long(c)
    x, y = p.x, p.y
    lhs = y * y + e.a1 * x * y + e.a3 * y
    rhs = ((x + e.a2) * x + e.a4) * x + e.a6
    return lhs == rhs


def _require_on(c: WeierstrassCurve, *pts: CurvePoint) -> None:
    for p in pts:
        if not contains(c, p):
            raise DomainError(f"point {p} is not on the curve {c}")


def _neg(e: WeierstrassCurve, p: CurvePoint) -> CurvePoint:
    if p.is_infinity:
        return p
    return CurvePoint(p.x, -p.y - e.a1 * p.x - e.a3)


def _add(e: WeierstrassCurve, p: CurvePoint, q: CurvePoint) -> CurvePoint:
    if p.is_infinity:
        return q
    if q.is_infinity:
        return p
    x1, y1, x2, y2 = p.x, p.y, q.x, q.y
    if x1 == x2 and y1 + y2 + e.a1 * x2 + e.a3 == 0:
        return INFINITY
    if x1 == x2:
        den = 2 * y1 + e.a1 * x1 + e.a3
        lam = (3 * x1 * x1 + 2 * e.a2 * x1 + e.a4 - e.a1 * y1) / den
        nu = (-x1**3 + e.a4 * x1 + 2 * e.a6 - e.a3 * y1) / den
    else:
        lam = (y2 - y1) / (x2 - x1)
        nu = (y1 * x2 - y2 * x1) / (x2 - x1)
    x3 = lam * lam + e.a1 * lam - e.a2 - x1 - x2
    y3 = -(lam + e.a1) * x3 - nu - e.a3
    return CurvePoint(x3, y3)


def negate(c, p: CurvePoint) -> CurvePoint:
    e = _as_long(c)
    _require_on(e, p)
    return _neg(e, p)


def add(c, p: CurvePoint, q: CurvePoint) -> CurvePoint:
    e = _as_long(c)
    _require_on(e, p, q)
    return _add(e, p, q)


def scalar_mul(c, k: int, p: CurvePoint) -> CurvePoint:
    """[k]p by double-and-add; negative k goes through the negation."""
    e = _as_long(c)
    _require_on(e, p)
    if k < 0:
        return _neg(e, _mul(e, -k, p))
    return _mul(e, k, p)


def _mul(e: WeierstrassCurve, k: int, p: CurvePoint) -> CurvePoint:
    acc = INFINITY
    while k:
        if k & 1:
            acc = _add(e, acc, p)
        p = _add(e, p, p)
        k >>= 1
    return acc


def multiples(c, p: CurvePoint, bound: int) -> dict[int, CurvePoint]:
    """``{m: [m]p}`` for ``-bound <= m <= bound``, built incrementally."""
    e = _as_long(c)
    _require_on(e, p)
    out = {0: INFINITY}
    acc = INFINITY
    for m in range(1, bound + 1):
        acc = _add(e, acc, p)
        out[m] = acc
        out[-m] = _neg(e, acc)
    return out


def transform(c, ch: CoordChange) -> WeierstrassCurve:
    e = _as_long(c)
    u, r, s, t = ch.u, ch.r, ch.s, ch.t
    a1, a2, a3, a4, a6 = e.coefficients
    return WeierstrassCurve(
        (a1 + 2 * s) / u,
        (a2 - s * a1 + 3 * r - s * s) / u**2,
        (a3 + r * a1 + 2 * t) / u**3,
        (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u**4,
        (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) / u**6,
    )


def transform_point(ch: CoordChange, p: CurvePoint) -> CurvePoint:
    """Image of a point of the old model on the model ``transform(c, ch)``."""
    if p.is_infinity:
        return p
    u, r, s, t = ch.u, ch.r, ch.s, ch.t
    xp = (p.x - r) / u**2
    yp = (p.y - s * u * u * xp - t) / u**3
    return CurvePoint(xp, yp)


def tate_reduction(a, b, c) -> tuple[CoordChange, TateCurve]:
    """Rescale ``Y^2 + aXY + bY = X^3 + cX^2`` (b, c nonzero) into Tate form.

    With u = -b/c the new model has a3 = b/u^3 = -c/u^2 = -a2.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if b == 0 or c == 0:
        raise DomainError("rescaling to Tate form needs b and c nonzero")
    ch = CoordChange(-b / c)
    return ch, transform(WeierstrassCurve(a, c, b, 0, 0), ch).to_tate()


def tate_points(c: TateCurve) -> tuple[CurvePoint, CurvePoint, CurvePoint]:
    """The points (0, 0), (b, 0), (0, -b) present on every E(a, b)."""
    if c.b == 0:
        raise DomainError("E(a, 0) is singular; distinguished points undefined")
    return point(0, 0), point(c.b, 0), point(0, -c.b)


# -- serialization ---------------------------------------------------------

def curve_to_json(c) -> dict:
    if isinstance(c, TateCurve):
        return {"tate": {"a": format_rational(c.a), "b": format_rational(c.b)}}
    return {k: format_rational(v) for k, v in zip(("a1", "a2", "a3", "a4", "a6"), c.coefficients)}


def curve_from_json(obj: dict):
    try:
        if "tate" in obj:
            t = obj["tate"]
            return TateCurve(parse_rational(t["a"]), parse_rational(t["b"]))
        return WeierstrassCurve(*(parse_rational(obj[k]) for k in ("a1", "a2", "a3", "a4", "a6")))
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed curve object: {obj!r}") from exc


def point_to_json(p: CurvePoint):
    if p.is_infinity:
        return "infinity"
    return {"x": format_rational(p.x), "y": format_rational(p.y)}


def point_from_json(obj) -> CurvePoint:
    if obj == "infinity":
        return INFINITY
    try:
        return CurvePoint(parse_rational(obj["x"]), parse_rational(obj["y"]))
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed point object: {obj!r}") from exc


def parse_curve_spec(text: str):
    """``tate:A,B`` or ``long:A1,A2,A3,A4,A6``."""
    kind, _, body = text.partition(":")
    parts = [s for s in body.split(",")] if body else []
    if kind == "tate" and len(parts) == 2:
        return TateCurve(*(parse_rational(s) for s in parts))
    if kind == "long" and len(parts) == 5:
        return WeierstrassCurve(*(parse_rational(s) for s in parts))
    raise UsageError(f"bad curve spec {text!r}; expected tate:A,B or long:A1,A2,A3,A4,A6")
