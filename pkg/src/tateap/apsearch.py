"""Exhaustive search for simultaneous progressions on E(a, b).

Points P_k = (k b, y_k), k = 0..n-1, lie on E(a, b) exactly when

    alpha_k * beta_k + 4 k^2 (k - 1) b = 0,   alpha_k + beta_k = 2 a k + 2,

and the two y-values above x = k b are -b alpha_k / 2 and -b beta_k / 2.
Fixing P_0 = (0, -b), P_1 = (b, 0) and choosing which term of a candidate
y-progression each P_k takes pins every beta_k, leaving a linear system in
(alpha_2, ..., alpha_{n-1}, b).  Each (progression, assignment) pair is one
case; there are n!/2 of them for length n.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .curves import CurvePoint, TateCurve, contains, curve_to_json, discriminant, point, point_to_json
from .errors import UsageError
from .exactmath import LinearKind, Matrix, Poly, det_poly, format_rational, rational_roots, solve_linear
from .progression import certify_simultaneous

MAX_SEARCH_LENGTH = 8


class Verdict(str, enum.Enum):
    ACCEPTED = "Accepted"
    FAMILY = "Family"
    INCONSISTENT = "InconsistentSystem"
    DEGENERATE_B = "DegenerateB"
    ZERO_ALPHA_BETA = "ZeroAlphaBeta"
    SINGULAR = "SingularCurve"
    PROGRESSION_FAILED = "ProgressionFailed"
    DUPLICATE = "Duplicate"


@dataclass(frozen=True)
class ProgressionShape:
    """Length-n y-progression t_p = (i - p) * b / g, p = 0..n-1.

    Term i is 0 and term i + g is -b, the y-values of P_1 and P_0.
    """

    n: int
    gap: int
    zero_index: int

    @property
    def anchors(self) -> tuple[int, int]:
        return self.zero_index, self.zero_index + self.gap

    def term_multiples(self) -> tuple[Fraction, ...]:
        """Each term divided by b (or by b(a+1) in the parametric variant)."""
        return tuple(Fraction(self.zero_index - p, self.gap) for p in range(self.n))

    def free_positions(self) -> tuple[int, ...]:
        return tuple(p for p in range(self.n) if p not in self.anchors)

    def to_json(self) -> dict:
        return {"g": self.gap, "i": self.zero_index}


@dataclass(frozen=True)
class CaseAssignment:
    """beta[k - 2] is beta_k for k = 2..n-1."""

    shape: ProgressionShape
    beta: tuple

    @property
    def n(self) -> int:
        return self.shape.n

    def beta_of(self, k: int):
        return self.beta[k - 2]


@dataclass(frozen=True)
class RootBranch:
    """Outcome of specializing a parametric case at one rational root."""

    a: Fraction
    multiplicity: int
    verdict: Verdict
    reason: str = ""


@dataclass
class CaseResult:
    assignment: CaseAssignment
    verdict: Verdict
    case_index: int = 0
    reason: str = ""
    curve: TateCurve | None = None
    points: tuple[CurvePoint, ...] | None = None
    alphas: tuple[Fraction, ...] | None = None
    betas: tuple[Fraction, ...] | None = None
    a_value: Fraction | None = None
    free_count: int = 0
    # parametric cases only
    det: Poly | None = None
    branches: list[RootBranch] = field(default_factory=list)


@dataclass(frozen=True)
class ZWitness:
    k: int
    z: Fraction


def _check_length(n: int) -> None:
    if not isinstance(n, int) or n < 3:
        raise UsageError(f"progression length must be an integer >= 3, got {n!r}")


def enumerate_shapes(n: int) -> list[ProgressionShape]:
    _check_length(n)
    return [ProgressionShape(n, g, i) for g in range(1, n) for i in range(n - g)]


def _assignments(shape: ProgressionShape):
    """Bijections k -> free position, as tuples of term multiples."""
    mults = shape.term_multiples()
    for perm in permutations(shape.free_positions()):
        yield tuple(mults[p] for p in perm)


def enumerate_cases(n: int) -> list[CaseAssignment]:
    out = []
    for shape in enumerate_shapes(n):
        for terms in _assignments(shape):
            out.append(CaseAssignment(shape, tuple(-2 * t for t in terms)))
    return out


def case_count(n: int) -> int:
    return math.factorial(n) // 2


def _quadric_coeff(k: int) -> int:
    return 4 * k * k * (k - 1)


def build_system(assignment: CaseAssignment) -> tuple[Matrix, list[Fraction]]:
    """Linear system in (alpha_2, ..., alpha_{n-1}, b).

    Rows: beta_k alpha_k + 4k^2(k-1) b = 0 for k = 2..n-1, then
    k alpha_2 - 2 alpha_k = 2(k-2) - k beta_2 + 2 beta_k for k = 3..n-1.
    """
    n = assignment.n
    if any(bk == 0 for bk in assignment.beta):
        raise UsageError("build_system needs every beta_k nonzero")
    return _system_rows(n, assignment.beta, zero=Fraction(0))


def _system_rows(n: int, beta, zero):
    m = n - 2
    rows, rhs = [], []
    for k in range(2, n):
        row = [zero] * (m + 1)
        row[k - 2] = beta[k - 2]
        row[m] = zero + _quadric_coeff(k)
        rows.append(row)
        rhs.append(zero)
    for k in range(3, n):
        row = [zero] * (m + 1)
        row[0] = zero + k
        row[k - 2] = zero - 2
        rows.append(row)
        rhs.append(2 * (k - 2) - k * beta[0] + 2 * beta[k - 2])
    scalar = Fraction if isinstance(zero, Fraction) else None
    return Matrix.from_rows(rows, scalar=scalar), rhs


def _finish(result: CaseResult, a: Fraction, b: Fraction, alphas, betas, anchors) -> CaseResult:
    """Shared tail: curve, points, membership, simultaneous certificate."""
    n = result.assignment.n
    result.alphas, result.betas, result.a_value = tuple(alphas), tuple(betas), a
    curve = TateCurve(a, b)
    result.curve = curve
    if discriminant(curve) == 0:
        result.verdict = Verdict.SINGULAR
        result.reason = "discriminant vanishes"
        return result
    pts = tuple(anchors) + tuple(point(k * b, -b * betas[k - 2] / 2) for k in range(2, n))
    result.points = pts
    off = [str(p) for p in pts if not contains(curve, p)]
    if off:
        result.verdict = Verdict.PROGRESSION_FAILED
        result.reason = "not on curve: " + ", ".join(off)
        return result
    if certify_simultaneous(pts) is None:
        result.verdict = Verdict.PROGRESSION_FAILED
        result.reason = "points do not form a simultaneous progression"
        return result
    for k in range(2, n):
        al, be = alphas[k - 2], betas[k - 2]
        assert al * be + _quadric_coeff(k) * b == 0
        assert al + be == 2 * a * k + 2
    result.verdict = Verdict.ACCEPTED
    return result


def solve_case(assignment: CaseAssignment, case_index: int = 0) -> CaseResult:
    n = assignment.n
    res = CaseResult(assignment, Verdict.INCONSISTENT, case_index)
    if any(bk == 0 for bk in assignment.beta):
        res.verdict, res.reason = Verdict.ZERO_ALPHA_BETA, "some beta_k is zero"
        return res
    m, rhs = build_system(assignment)
    out = solve_linear(m, rhs)
    if out.kind is LinearKind.INCONSISTENT:
        res.reason = f"coefficient rank {out.rank}, augmented system inconsistent"
        return res
    if out.kind is LinearKind.FAMILY:
        res.verdict, res.free_count = Verdict.FAMILY, out.free_count
        res.reason = f"{out.free_count} free variable(s)"
        return res
    *alphas, b = out.solution
    if b == 0:
        res.verdict, res.reason = Verdict.DEGENERATE_B, "b = 0"
        return res
    if any(al == 0 for al in alphas):
        res.verdict, res.reason = Verdict.ZERO_ALPHA_BETA, "some alpha_k is zero"
        return res
    beta = assignment.beta
    a = (alphas[0] + beta[0] - 2) / 4
    return _finish(res, a, b, alphas, beta, (point(0, -b), point(b, 0)))


def _solve_indexed(item):
    idx, case = item
    return solve_case(case, idx)


def run_search(n: int, jobs: int = 1) -> list[CaseResult]:
    """Solve every case of length n; repeated curves are marked Duplicate
    in case-index order, whatever order the cases were solved in."""
    if not isinstance(n, int) or not 4 <= n <= MAX_SEARCH_LENGTH:
        raise UsageError(f"search length must be in 4..{MAX_SEARCH_LENGTH}, got {n!r}")
    items = list(enumerate(enumerate_cases(n)))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_solve_indexed, items, chunksize=max(1, len(items) // (4 * jobs))))
    else:
        results = [_solve_indexed(it) for it in items]
    return mark_duplicates(results)


def mark_duplicates(results: list[CaseResult]) -> list[CaseResult]:
    results = sorted(results, key=lambda r: r.case_index)
    seen: dict[tuple, int] = {}
    for r in results:
        if r.verdict is not Verdict.ACCEPTED:
            continue
        key = (r.curve.a, r.curve.b)
        if key in seen:
            r.verdict = Verdict.DUPLICATE
            r.reason = f"same curve as case {seen[key]}"
        else:
            seen[key] = r.case_index
    return results


def summarize(results) -> dict[str, int]:
    counts = Counter(r.verdict for r in results)
    return {v.value: counts.get(v, 0) for v in Verdict}


# -- parametric anchors 0 and -b(a+1) ----------------------------------------

PARAMETRIC_LENGTH = 5


def enumerate_parametric_cases() -> list[CaseAssignment]:
    """Same shapes as the plain search, but with the progression scaled by
    (a + 1): beta_k becomes an affine polynomial in a."""
    out = []
    for shape in enumerate_shapes(PARAMETRIC_LENGTH):
        for terms in _assignments(shape):
            out.append(CaseAssignment(shape, tuple(Poly.affine(-2 * t, -2 * t) for t in terms)))
    return out


def parametric_matrix(assignment: CaseAssignment) -> Matrix:
    """Augmented 5x5 matrix over Q[a]: columns alpha_2, alpha_3, alpha_4, b, rhs."""
    m, rhs = _system_rows(assignment.n, assignment.beta, zero=Poly())
    rows = [list(m.row(i)) + [rhs[i]] for i in range(m.rows)]
    return Matrix.from_rows(rows, scalar=None)


def _parametric_branch(assignment: CaseAssignment, aug: Matrix, root: Fraction, mult: int,
                       case_index: int) -> tuple[RootBranch, CaseResult]:
    n = assignment.n
    res = CaseResult(assignment, Verdict.INCONSISTENT, case_index, a_value=root)

    def done(verdict: Verdict, reason: str):
        res.verdict, res.reason = verdict, reason
        return RootBranch(root, mult, verdict, reason), res

    if root == -1:
        return done(Verdict.DEGENERATE_B, "a = -1 merges the anchors 0 and -b(a+1)")
    betas = tuple(bk(root) for bk in assignment.beta)
    if any(bk == 0 for bk in betas):
        return done(Verdict.ZERO_ALPHA_BETA, "some beta_k vanishes at this a")
    spec = aug.map(lambda e: e(root))
    coeffs = Matrix.from_rows([spec.row(i)[:-1] for i in range(spec.rows)])
    out = solve_linear(coeffs, [spec[i, spec.cols - 1] for i in range(spec.rows)])
    if out.kind is LinearKind.INCONSISTENT:
        return done(Verdict.INCONSISTENT, "specialized system inconsistent")
    if out.kind is LinearKind.FAMILY:
        res.free_count = out.free_count
        return done(Verdict.FAMILY, f"{out.free_count} free variable(s)")
    *alphas, b = out.solution
    res.alphas, res.betas = tuple(alphas), betas
    if b == 0:
        return done(Verdict.DEGENERATE_B, "b = 0")
    if any(al == 0 for al in alphas):
        return done(Verdict.ZERO_ALPHA_BETA, "some alpha_k is zero")
    implied = [(alphas[k - 2] + betas[k - 2] - 2) / (2 * k) for k in range(2, n)]
    if any(v != root for v in implied):
        bad = next(v for v in implied if v != root)
        return done(Verdict.PROGRESSION_FAILED,
                    f"consistency: (alpha_k + beta_k - 2)/(2k) = {format_rational(bad)}, "
                    f"not a = {format_rational(root)}")
    _finish(res, root, b, alphas, betas, (point(0, 0), point(b, -b * (root + 1))))
    return RootBranch(root, mult, res.verdict, res.reason), res


def solve_parametric_case(assignment: CaseAssignment, case_index: int = 0) -> CaseResult:
    aug = parametric_matrix(assignment)
    det = det_poly(aug)
    if det.is_zero():
        res = CaseResult(assignment, Verdict.FAMILY, case_index, det=det)
        res.reason = "augmented determinant vanishes identically"
        return res
    roots = rational_roots(det)
    if not roots:
        res = CaseResult(assignment, Verdict.INCONSISTENT, case_index, det=det)
        res.reason = "augmented determinant has no rational root"
        return res
    outcomes = [_parametric_branch(assignment, aug, r, mult, case_index) for r, mult in roots]
    branches = [br for br, _ in outcomes]
    accepted = [res for br, res in outcomes if br.verdict is Verdict.ACCEPTED]
    if accepted:
        chosen = accepted[0]
    else:
        regular = [res for br, res in outcomes if br.a != -1]
        chosen = regular[0] if regular else outcomes[0][1]
    chosen.det = det
    chosen.branches = branches
    chosen.reason = "; ".join(f"a={format_rational(b.a)}: {b.verdict.value} ({b.reason})"
                              for b in branches)
    return chosen


def run_parametric_search() -> list[CaseResult]:
    cases = enumerate_parametric_cases()
    return mark_duplicates([solve_parametric_case(c, i) for i, c in enumerate(cases)])


# -- Z witnesses ---------------------------------------------------------------

def z_witnesses(result: CaseResult) -> list[ZWitness]:
    """Z_k = (alpha_k - beta_k)/2, which squares to (ak+1)^2 + 4k^2(k-1)b."""
    if result.verdict is not Verdict.ACCEPTED:
        raise UsageError(f"z_witnesses needs an Accepted case, got {result.verdict.value}")
    a, b = result.curve.a, result.curve.b
    out = []
    for k in range(2, result.assignment.n):
        z = (result.alphas[k - 2] - result.betas[k - 2]) / 2
        if z * z != (a * k + 1) ** 2 + _quadric_coeff(k) * b:
            raise AssertionError(f"Z_{k} identity fails for {result.curve}")
        out.append(ZWitness(k, z))
    return out


# -- serialization -------------------------------------------------------------

def _beta_json(beta) -> dict:
    return {str(k): (format_rational(v) if isinstance(v, Fraction) else str(v))
            for k, v in enumerate(beta, start=2)}


def case_to_json(r: CaseResult) -> dict:
    obj = {
        "case_index": r.case_index,
        "n": r.assignment.n,
        "shape": r.assignment.shape.to_json(),
        "beta": _beta_json(r.assignment.beta),
        "verdict": r.verdict.value,
    }
    if r.curve is not None and r.verdict in (Verdict.ACCEPTED, Verdict.DUPLICATE):
        obj["curve"] = curve_to_json(r.curve)
        obj["points"] = [point_to_json(p) for p in r.points]
    if r.det is not None:
        obj["det"] = str(r.det)
        obj["roots"] = [{"a": format_rational(b.a), "multiplicity": b.multiplicity,
                         "verdict": b.verdict.value} for b in r.branches]
    if r.reason:
        obj["reason"] = r.reason
    return obj


def summary_to_json(results) -> dict:
    return {"summary": summarize(results), "cases": len(results)}


def accepted_rows(results) -> list[dict]:
    """Accepted cases as table rows: beta_2..beta_{n-1}, a, b."""
    rows = []
    for r in results:
        if r.verdict is not Verdict.ACCEPTED:
            continue
        row = {f"beta_{k}": format_rational(v) for k, v in enumerate(r.betas, start=2)}
        row["a"] = format_rational(r.curve.a)
        row["b"] = format_rational(r.curve.b)
        rows.append(row)
    return rows
