"""Exact rational arithmetic: scalars, linear algebra, polynomials."""

from .linalg import (
    LinearKind,
    LinearOutcome,
    Matrix,
    cofactor_determinant,
    determinant,
    rank,
    solve_linear,
)
from .poly import Poly, det_poly, rational_roots
from .rational import Q, Rational, format_rational, parse_rational

__all__ = [
    "LinearKind",
    "LinearOutcome",
    "Matrix",
    "Poly",
    "Q",
    "Rational",
    "cofactor_determinant",
    "det_poly",
    "determinant",
    "format_rational",
    "parse_rational",
    "rank",
    "rational_roots",
    "solve_linear",
]
