"""Point generation from seeds and the lower bounds it certifies."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from . import apsearch
from .curves import (
    CurvePoint,
    TateCurve,
    WeierstrassCurve,
    _add,
    _as_long,
    contains,
    curve_to_json,
    discriminant,
    multiples,
    point,
    point_to_json,
)
from .errors import DomainError, UsageError
from .exactmath.rational import format_rational
from .progression import BoundsReport, bounds_report, certify_simultaneous

DEFAULT_COEFF_BOUND = 8
DEFAULT_COMBO_SIZE = 2
# Pairs of seeds miss x = -2b on E(25/21, -2/7); triples are needed there,
# and bound 4 keeps the point count low enough for the quadratic AP scan.
TABLE_COEFF_BOUND = 4
TABLE_COMBO_SIZE = 3


@dataclass(frozen=True)
class ExploreConfig:
    seeds: tuple[CurvePoint, ...]
    coeff_bound: int = DEFAULT_COEFF_BOUND
    combo_size: int = DEFAULT_COMBO_SIZE

    def __post_init__(self):
        object.__setattr__(self, "seeds", tuple(self.seeds))
        if self.coeff_bound < 1:
            raise UsageError("coeff_bound must be >= 1")
        if self.combo_size < 1:
            raise UsageError("combo_size must be >= 1")


@dataclass
class ExploreReport:
    curve: WeierstrassCurve | TateCurve
    points_found: list[CurvePoint]
    bounds: BoundsReport
    # length -> whether some subset of that size is a simultaneous AP;
    # lengths above the number of candidate points are not recorded
    has_simultaneous_of: dict[int, bool] = field(default_factory=dict)
    candidates: list[CurvePoint] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "curve": curve_to_json(self.curve),
            "points_found": len(self.points_found),
            "bounds": self.bounds.to_json(),
            "has_simultaneous_of": {str(k): v for k, v in sorted(self.has_simultaneous_of.items())},
            "candidates": [point_to_json(p) for p in self.candidates],
        }


def generate_points(curve, config: ExploreConfig) -> list[CurvePoint]:
    """Distinct affine points sum(m_j S_j) over subsets of at most
    ``combo_size`` seeds with 0 < |m_j| <= ``coeff_bound``.

    Order: subsets in ``itertools.combinations`` order, then coefficient
    vectors in ``itertools.product`` order; first occurrence wins.
    """
    e = _as_long(curve)
    for s in config.seeds:
        if s.is_infinity or not contains(e, s):
            raise DomainError(f"seed {s} is not an affine point of {curve}")
    table = [multiples(e, s, config.coeff_bound) for s in config.seeds]
    coeffs = [m for m in range(-config.coeff_bound, config.coeff_bound + 1) if m]
    seen: set[CurvePoint] = set()
    out: list[CurvePoint] = []
    for size in range(1, min(config.combo_size, len(table)) + 1):
        for subset in combinations(range(len(table)), size):
            for ms in product(coeffs, repeat=size):
                acc = table[subset[0]][ms[0]]
                for j, m in zip(subset[1:], ms[1:]):
                    acc = _add(e, acc, table[j][m])
                if not acc.is_infinity and acc not in seen:
                    seen.add(acc)
                    out.append(acc)
    return out


def _candidate_points(points, bounds: BoundsReport) -> list[CurvePoint]:
    xs = set(bounds.x_witness.members)
    ys = set(bounds.y_witness.members)
    return [p for p in points if p.x in xs and p.y in ys]


def simultaneous_lengths(points) -> dict[int, bool]:
    """For every L up to the number of distinct x-values, whether some L
    points form a simultaneous AP.

    Enumerates x-progressions through every pair of x-values, then every
    choice of point above each x; meant for small candidate sets.
    """
    by_x: dict[Fraction, list[CurvePoint]] = {}
    for p in points:
        by_x.setdefault(p.x, []).append(p)
    xs = sorted(by_x)
    found = {L: False for L in range(1, len(xs) + 1)}
    if xs:
        found[1] = True
    xset = set(xs)
    for i, x0 in enumerate(xs):
        for x1 in xs[i + 1:]:
            d = x1 - x0
            if x0 - d in xset:
                continue  # not the start of a maximal run
            run = [x0]
            while run[-1] + d in xset:
                run.append(run[-1] + d)
            for start in range(len(run) - 1):
                for stop in range(start + 2, len(run) + 1):
                    L = stop - start
                    if found[L]:
                        continue
                    for choice in product(*(by_x[x] for x in run[start:stop])):
                        if certify_simultaneous(choice) is not None:
                            found[L] = True
                            break
    return found


def explore(curve, config: ExploreConfig) -> ExploreReport:
    pts = generate_points(curve, config)
    if not pts:
        raise DomainError("no affine points generated")
    bounds = bounds_report(pts)
    cands = _candidate_points(pts, bounds)
    return ExploreReport(curve, pts, bounds, simultaneous_lengths(cands), cands)


def family3_curve(b) -> tuple[TateCurve, tuple[CurvePoint, CurvePoint, CurvePoint]]:
    """E(2b - 1, b) and its collinear progression (0, -b), (b, 0), (2b, b)."""
    b = Fraction(b)
    if b == 0:
        raise DomainError("family3_curve needs b != 0")
    c = TateCurve(2 * b - 1, b)
    if discriminant(c) == 0:
        raise DomainError(f"{c} is singular")
    return c, (point(0, -b), point(b, 0), point(2 * b, b))


@dataclass(frozen=True)
class TableRow:
    beta: tuple[Fraction, ...]
    curve: TateCurve
    bounds: BoundsReport

    def to_row(self) -> dict:
        row = {f"beta_{k}": format_rational(v) for k, v in enumerate(self.beta, start=2)}
        row.update(a=format_rational(self.curve.a), b=format_rational(self.curve.b),
                   s_x_lower=self.bounds.s_x_lower, s_y_lower=self.bounds.s_y_lower)
        return row


def _explore_case(args) -> TableRow:
    beta, curve, pts, bound, combo = args
    rep = explore(curve, ExploreConfig(pts, coeff_bound=bound, combo_size=combo))
    return TableRow(beta, curve, rep.bounds)


def reproduce_table(coeff_bound: int = TABLE_COEFF_BOUND, combo_size: int = TABLE_COMBO_SIZE,
                    jobs: int = 1) -> list[TableRow]:
    """Length-4 search, then bounds for each accepted curve seeded by its
    four progression points."""
    work = [(r.betas, r.curve, r.points, coeff_bound, combo_size)
            for r in apsearch.run_search(4) if r.verdict is apsearch.Verdict.ACCEPTED]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_explore_case, work))
    return [_explore_case(w) for w in work]
