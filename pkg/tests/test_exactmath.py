from fractions import Fraction
from itertools import permutations
import math

import pytest
from hypothesis import given, settings, strategies as st

from tateap.errors import UsageError
from tateap.exactmath import (
    LinearKind,
    Matrix,
    Poly,
    cofactor_determinant,
    det_poly,
    determinant,
    format_rational,
    parse_rational,
    rational_roots,
    solve_linear,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)
nonzero = rationals.filter(lambda q: q != 0)


def canonical(q: Fraction) -> bool:
    return q.denominator > 0 and math.gcd(q.numerator, q.denominator) == 1


def leibniz_det(rows):
    """Permutation-sum determinant; independent of both library routes."""
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inversions % 2 else 1)
        for i, j in enumerate(perm):
            term *= rows[i][j]
        total += term
    return total


# -- rational strings ----------------------------------------------------------

@pytest.mark.parametrize("text, value", [
    ("-5/16", Fraction(-5, 16)),
    ("7", Fraction(7)),
    ("2/128", Fraction(1, 64)),
    ("0/5", Fraction(0)),
    ("+3/9", Fraction(1, 3)),
])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["", "1/0", "a/b", "1.5", "1/-2", "--1"])
def test_parse_rational_rejects(bad):
    with pytest.raises(UsageError):
        parse_rational(bad)


def test_format_rational():
    assert format_rational(Fraction(-5, 16)) == "-5/16"
    assert format_rational(Fraction(0)) == "0"
    assert format_rational(Fraction(12, 4)) == "3"


@given(rationals)
def test_format_parse_roundtrip(q):
    assert parse_rational(format_rational(q)) == q


@given(rationals, nonzero)
def test_field_axioms_and_canonical_form(x, y):
    for r in (x + y, x - y, x * y, x / y):
        assert canonical(r)
    assert (x + y) - y == x
    assert (x * y) / y == x


# -- linear solving ------------------------------------------------------------

def test_solve_length4_unique():
    m = Matrix.from_rows([[1, 0, 16], [0, -1, 72], [3, -2, 0]])
    rhs = [0, 0, -3]
    out = solve_linear(m, rhs)
    assert out.kind is LinearKind.UNIQUE
    assert out.solution == (Fraction(-1, 4), Fraction(9, 8), Fraction(1, 64))
    for i in range(3):
        assert sum(m[i, j] * out.solution[j] for j in range(3)) == rhs[i]


def test_solve_identity():
    out = solve_linear(Matrix.from_rows([[1, 0], [0, 1]]), [5, 7])
    assert out.kind is LinearKind.UNIQUE and out.solution == (5, 7)


def test_solve_length4_family():
    b2, b3 = Fraction(-2, 3), Fraction(-2)
    m = Matrix.from_rows([[b2, 0, 16], [0, b3, 72], [3, -2, 0]])
    out = solve_linear(m, [0, 0, 2 - 3 * b2 + 2 * b3])
    assert out.kind is LinearKind.FAMILY
    assert out.free_count == 1
    assert out.rank == 2


def test_solve_inconsistent():
    out = solve_linear(Matrix.from_rows([[1, 1], [2, 2]]), [1, 3])
    assert out.kind is LinearKind.INCONSISTENT


def test_solve_overdetermined_consistent():
    m = Matrix.from_rows([[1, 0], [0, 1], [1, 1]])
    out = solve_linear(m, [2, 3, 5])
    assert out.kind is LinearKind.UNIQUE and out.solution == (2, 3)


def test_solve_dimension_mismatch():
    with pytest.raises(UsageError):
        solve_linear(Matrix.from_rows([[1, 0], [0, 1]]), [1])


def test_matrix_shape_checks():
    with pytest.raises(UsageError):
        Matrix(2, 2, (1, 2, 3))
    with pytest.raises(UsageError):
        Matrix.from_rows([[1, 2], [3]])


@st.composite
def systems(draw):
    rows = draw(st.integers(1, 5))
    cols = draw(st.integers(1, 5))
    m = [[draw(rationals) for _ in range(cols)] for _ in range(rows)]
    rhs = [draw(rationals) for _ in range(rows)]
    return m, rhs


@settings(max_examples=200)
@given(systems())
def test_solution_residual_is_exactly_zero(system):
    rows, rhs = system
    m = Matrix.from_rows(rows)
    out = solve_linear(m, rhs)
    if out.kind is LinearKind.INCONSISTENT:
        return
    # Unique, and the Family particular solution, must both satisfy every row
    for i, row in enumerate(rows):
        assert sum(a * x for a, x in zip(row, out.solution)) == rhs[i]
    assert (out.kind is LinearKind.UNIQUE) == (out.rank == m.cols)


# -- determinants --------------------------------------------------------------

def test_determinant_small():
    assert determinant(Matrix.from_rows([[Fraction(3, 7)]])) == Fraction(3, 7)
    assert determinant(Matrix.from_rows([[1, 2], [3, 4]])) == -2


def test_determinant_non_square():
    with pytest.raises(UsageError):
        determinant(Matrix.from_rows([[1, 2]]))
    with pytest.raises(UsageError):
        det_poly(Matrix.from_rows([[1, 2]]))


@st.composite
def square(draw):
    n = draw(st.integers(1, 5))
    return [[draw(rationals) for _ in range(n)] for _ in range(n)]


@settings(max_examples=150)
@given(square())
def test_determinant_routes_agree(rows):
    m = Matrix.from_rows(rows)
    expected = leibniz_det(rows)
    assert determinant(m) == expected
    assert cofactor_determinant(m) == expected


def _param_matrix(betas):
    """Augmented 5x5 over Q[a] for beta_k = c_k (a + 1), canonical row order."""
    b2, b3, b4 = (Poly.affine(c, c) for c in betas)
    zero = Poly()
    return Matrix.from_rows([
        [b2, zero, zero, Poly.const(16), zero],
        [zero, b3, zero, Poly.const(72), zero],
        [zero, zero, b4, Poly.const(192), zero],
        [Poly.const(3), Poly.const(-2), zero, zero, 2 - 3 * b2 + 2 * b3],
        [Poly.const(4), zero, Poly.const(-2), zero, 4 - 4 * b2 + 2 * b4],
    ], scalar=None)


def test_det_poly_diagonal():
    ap1 = Poly.affine(1, 1)
    m = Matrix.from_rows([[ap1, Poly()], [Poly(), ap1]], scalar=None)
    assert det_poly(m) == Poly([1, 2, 1])


def test_det_poly_parametric_cases():
    ap1 = Poly.affine(1, 1)
    d1 = det_poly(_param_matrix((4, 6, 8)))
    assert d1.ratio_to(ap1 ** 2) is not None
    assert d1.ratio_to(-3072 * ap1 ** 2) is not None
    d2 = det_poly(_param_matrix((6, 4, 8)))
    assert d2.ratio_to(7168 * ap1 ** 2 * Poly.affine(4, 5)) is not None
    # specialized at a = 0 the first one has magnitude 3072
    spec = _param_matrix((4, 6, 8)).map(lambda e: e(0))
    assert abs(determinant(spec)) == 3072


@st.composite
def affine_matrices(draw):
    n = draw(st.integers(1, 4))
    return [[Poly.affine(draw(rationals), draw(rationals)) for _ in range(n)] for _ in range(n)]


@settings(max_examples=100)
@given(affine_matrices(), rationals)
def test_det_poly_commutes_with_evaluation(rows, t):
    m = Matrix.from_rows(rows, scalar=None)
    assert det_poly(m)(t) == determinant(m.map(lambda e: e(t)))


# -- rational roots --------------------------------------------------------------

def test_rational_roots_examples():
    ap1 = Poly.affine(1, 1)
    assert rational_roots(ap1 ** 2) == [(-1, 2)]
    p = 7168 * ap1 ** 2 * Poly.affine(4, 5)
    assert rational_roots(p) == [(Fraction(-5, 4), 1), (Fraction(-1), 2)]
    assert rational_roots(Poly([1, 0, 1])) == []


def test_rational_roots_zero_root_and_constant():
    assert rational_roots(Poly([0, 0, 3])) == [(0, 2)]
    assert rational_roots(Poly([5])) == []


def test_rational_roots_zero_poly():
    with pytest.raises(UsageError):
        rational_roots(Poly())


def _brute_roots(p: Poly):
    """Scan every rational-root-theorem candidate and evaluate directly."""
    ints = p.primitive_integer_coeffs()
    low = next(i for i, c in enumerate(ints) if c != 0)
    c0, cn = ints[low], ints[-1]
    cands = {Fraction(0)} if low else set()
    for num in range(1, abs(c0) + 1):
        if c0 % num:
            continue
        for den in range(1, abs(cn) + 1):
            if cn % den == 0:
                cands |= {Fraction(num, den), Fraction(-num, den)}
    return sorted(r for r in cands if p(r) == 0)


small_roots = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@settings(max_examples=150)
@given(st.lists(small_roots, max_size=4), st.lists(st.integers(-3, 3), min_size=1, max_size=3),
       st.integers(1, 6))
def test_rational_roots_match_bruteforce(roots, extra, scale):
    p = Poly([scale])
    for r in roots:
        p = p * Poly([-r, 1])
    # a factor that may or may not contribute roots of its own
    p = p * Poly(extra + [1])
    got = rational_roots(p)
    assert [r for r, _ in got] == _brute_roots(p)
    for r, mult in got:
        q = p
        for _ in range(mult):
            q, rem = q.divmod_linear(r)
            assert rem == 0
        assert q(r) != 0
