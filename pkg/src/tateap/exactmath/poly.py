"""Dense univariate polynomials over the rationals."""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import zip_longest
from typing import Iterable

from ..errors import UsageError
from .linalg import Matrix, cofactor_determinant
from .rational import format_rational


class Poly:
    """Polynomial with ascending coefficients; ``Poly([1, 2])`` is 1 + 2x."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def affine(cls, slope, intercept) -> "Poly":
        """``slope * x + intercept``."""
        return cls([intercept, slope])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, t):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    @staticmethod
    def _lift(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Poly(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly([1])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def divmod_linear(self, root) -> tuple["Poly", Fraction]:
        """Synthetic division by ``(x - root)``: quotient and remainder."""
        if self.is_zero():
            return Poly(), Fraction(0)
        acc = Fraction(0)
        out = []
        for c in reversed(self.coeffs):
            acc = acc * root + c
            out.append(acc)
        rem = out.pop()
        return Poly(reversed(out)), rem

    def ratio_to(self, other: "Poly") -> Fraction | None:
        """The scalar ``s`` with ``self == s * other``, or None."""
        if other.is_zero():
            return None if not self.is_zero() else Fraction(0)
        s = self.leading / other.leading
        return s if self == other * s else None

    def primitive_integer_coeffs(self) -> list[int]:
        """Integer coefficients with content 1 and positive leading term."""
        if self.is_zero():
            raise UsageError("zero polynomial has no primitive form")
        lcm = 1
        for c in self.coeffs:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        ints = [int(c * lcm) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return [v // g for v in ints]

    def __repr__(self):
        return f"Poly([{', '.join(format_rational(c) for c in self.coeffs)}])"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = format_rational(abs(c))
            if k == 0:
                body = mag
            else:
                var = "a" if k == 1 else f"a^{k}"
                body = var if mag == "1" else f"{mag}*{var}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def det_poly(m: Matrix) -> Poly:
    """Determinant of a matrix with polynomial (or rational) entries."""
    if not m.is_square:
        raise UsageError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    lifted = m.map(lambda e: e if isinstance(e, Poly) else Poly([e]))
    return cofactor_determinant(lifted, zero=Poly())


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: Poly) -> list[tuple[Fraction, int]]:
    """All rational roots with multiplicity, ascending.

    Candidates come from the rational-root theorem applied to the
    primitive integer form; each hit is divided out to count multiplicity.
    """
    if p.is_zero():
        raise UsageError("rational_roots of the zero polynomial")
    roots: list[tuple[Fraction, int]] = []
    cs = list(p.coeffs)
    zero_mult = 0
    while cs[0] == 0:
        cs.pop(0)
        zero_mult += 1
    if zero_mult:
        roots.append((Fraction(0), zero_mult))
    rest = Poly(cs)
    if rest.degree >= 1:
        ints = rest.primitive_integer_coeffs()
        cands = sorted({
            Fraction(s * num, den)
            for num in _divisors(ints[0])
            for den in _divisors(ints[-1])
            for s in (1, -1)
        })
        for r in cands:
            mult = 0
            while rest.degree >= 1:
                q, rem = rest.divmod_linear(r)
                if rem != 0:
                    break
                rest = q
                mult += 1
            if mult:
                roots.append((r, mult))
    return sorted(roots)
