"""Rational scalars.

``fractions.Fraction`` already keeps numerator/denominator coprime with a
positive denominator, so it is used directly as the scalar type.  This
module only adds the string form used in every serialized artifact.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import UsageError

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def Q(value, den=None) -> Fraction:
    """Shorthand constructor: ``Q(3)``, ``Q(-5, 16)`` or ``Q("-5/16")``."""
    if isinstance(value, str) and den is None:
        return parse_rational(value)
    if den is None:
        return Fraction(value)
    return Fraction(value, den)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (optional sign) into an exact rational."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise UsageError(f"malformed rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise UsageError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    """Canonical ``"p/q"``, integers without the ``/1``."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
