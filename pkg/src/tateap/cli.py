"""Command line entry point: ``tateap <command> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from contextlib import contextmanager
from fractions import Fraction

from . import apsearch, explore as explore_mod
from .curves import contains, curve_to_json, discriminant, parse_curve_spec, point_from_json
from .errors import DomainError, UsageError
from .exactmath.rational import format_rational, parse_rational
from .progression import certify_ap, certify_simultaneous

FORMATS = ("jsonl", "csv", "pretty")
LARGE_SEARCH = 7


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


@contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _write_csv(out, rows: list[dict]) -> None:
    if not rows:
        return
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    out.write(buf.getvalue())


def _pretty_case(r: apsearch.CaseResult) -> str:
    beta = ", ".join(format_rational(v) if isinstance(v, Fraction) else str(v)
                     for v in r.assignment.beta)
    shape = r.assignment.shape
    line = f"#{r.case_index:<4d} g={shape.gap} i={shape.zero_index} beta=({beta}) {r.verdict.value}"
    if r.curve is not None and r.verdict in (apsearch.Verdict.ACCEPTED, apsearch.Verdict.DUPLICATE):
        line += f" {r.curve} points " + " ".join(str(p) for p in r.points)
    elif r.reason:
        line += f" [{r.reason}]"
    return line


def _emit_cases(results, fmt: str, out) -> None:
    if fmt == "csv":
        _write_csv(out, apsearch.accepted_rows(results))
        return
    for r in results:
        out.write((_dumps(apsearch.case_to_json(r)) if fmt == "jsonl" else _pretty_case(r)) + "\n")
    summary = apsearch.summary_to_json(results)
    if fmt == "jsonl":
        out.write(_dumps(summary) + "\n")
    else:
        counts = ", ".join(f"{k}: {v}" for k, v in summary["summary"].items() if v)
        out.write(f"{summary['cases']} cases; {counts}\n")


def cmd_search(args) -> int:
    if not 4 <= args.n <= apsearch.MAX_SEARCH_LENGTH:
        raise UsageError(f"--n must be in 4..{apsearch.MAX_SEARCH_LENGTH}")
    if args.n >= LARGE_SEARCH and not args.allow_large:
        raise UsageError(f"--n {args.n} needs --allow-large ({apsearch.case_count(args.n)} cases)")
    results = apsearch.run_search(args.n, jobs=args.jobs)
    with _output(args.out) as out:
        _emit_cases(results, args.format, out)
    return 0


def cmd_parametric(args) -> int:
    results = apsearch.run_parametric_search()
    with _output(args.out) as out:
        _emit_cases(results, args.format, out)
    return 0


def _load_points(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc.msg}") from exc
    if not isinstance(data, list):
        raise UsageError(f"{path} must hold a JSON array of points")
    return [point_from_json(p) for p in data]


def _first_violation(pts) -> str:
    if any(p.is_infinity for p in pts):
        return "point at infinity in the list"
    if len(set(pts)) != len(pts):
        return "repeated point"
    xs = sorted(p.x for p in pts)
    ys = sorted(p.y for p in pts)
    for name, vals in (("x", xs), ("y", ys)):
        if certify_ap(vals) is None:
            for u, v, w in zip(vals, vals[1:], vals[2:]):
                if v - u != w - v or v == u:
                    return (f"{name}-values not in progression: {format_rational(u)}, "
                            f"{format_rational(v)}, {format_rational(w)}")
            return f"{name}-values repeat"
    return "unknown"


def cmd_verify(args) -> int:
    curve = parse_curve_spec(args.curve)
    pts = _load_points(args.points)
    if discriminant(curve) == 0:
        print(f"FAIL: curve {curve} is singular")
        return 1
    for p in pts:
        if not contains(curve, p):
            print(f"FAIL: point {p} is not on {curve}")
            return 1
    cert = None
    if pts and not any(p.is_infinity for p in pts) and len(set(pts)) == len(pts):
        cert = certify_simultaneous(pts)
    if cert is None:
        print(f"FAIL: {_first_violation(pts) if pts else 'empty point list'}")
        return 1
    print(_dumps({"curve": curve_to_json(curve), "certificate": cert.to_json()}))
    return 0


def cmd_explore(args) -> int:
    curve = parse_curve_spec(args.curve)
    seeds = _load_points(args.seeds)
    config = explore_mod.ExploreConfig(seeds, coeff_bound=args.bound, combo_size=args.combo_size)
    rep = explore_mod.explore(curve, config)
    with _output(args.out) as out:
        if args.format == "pretty":
            b = rep.bounds
            out.write(f"curve {curve}: {len(rep.points_found)} points\n")
            out.write(f"S_x >= {b.s_x_lower}: " + ", ".join(map(format_rational, b.x_witness.members)) + "\n")
            out.write(f"S_y >= {b.s_y_lower}: " + ", ".join(map(format_rational, b.y_witness.members)) + "\n")
            longest = max((L for L, ok in rep.has_simultaneous_of.items() if ok), default=0)
            out.write(f"longest simultaneous progression among candidates: {longest}\n")
        else:
            out.write(_dumps(rep.to_json()) + "\n")
    return 0


def cmd_family3(args) -> int:
    b = parse_rational(args.b)
    curve, pts = explore_mod.family3_curve(b)
    cert = certify_simultaneous(pts)
    print(_dumps({"curve": curve_to_json(curve), "long": curve_to_json(curve.long_form()),
                  "certificate": cert.to_json()}))
    return 0


def cmd_table(args) -> int:
    rows = [r.to_row() for r in explore_mod.reproduce_table(args.bound, args.combo_size, jobs=args.jobs)]
    with _output(args.out) as out:
        if args.format == "csv":
            _write_csv(out, rows)
        elif args.format == "jsonl":
            for row in rows:
                out.write(_dumps(row) + "\n")
        else:
            for row in rows:
                out.write(f"({row['beta_2']}, {row['beta_3']})  E({row['a']}, {row['b']})  "
                          f"S_x >= {row['s_x_lower']}  S_y >= {row['s_y_lower']}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tateap", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("search", help="solve every case of a given progression length")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--format", choices=FORMATS, default="jsonl")
    s.add_argument("--out")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--allow-large", action="store_true", help=f"permit n >= {LARGE_SEARCH}")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("parametric", help="length-5 search anchored at 0 and -b(a+1)")
    s.add_argument("--format", choices=FORMATS, default="jsonl")
    s.add_argument("--out")
    s.set_defaults(func=cmd_parametric)

    s = sub.add_parser("verify", help="check points on a curve for a simultaneous progression")
    s.add_argument("--curve", required=True, help="tate:A,B or long:A1,A2,A3,A4,A6")
    s.add_argument("--points", required=True, help="JSON array of {x, y} objects")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("explore", help="generate points from seeds and report S_x, S_y bounds")
    s.add_argument("--curve", required=True)
    s.add_argument("--seeds", required=True)
    s.add_argument("--bound", type=int, default=explore_mod.DEFAULT_COEFF_BOUND)
    s.add_argument("--combo-size", type=int, default=explore_mod.DEFAULT_COMBO_SIZE)
    s.add_argument("--format", choices=("jsonl", "pretty"), default="jsonl")
    s.add_argument("--out")
    s.set_defaults(func=cmd_explore)

    s = sub.add_parser("family3", help="length-3 collinear family E(2b-1, b)")
    s.add_argument("--b", required=True)
    s.set_defaults(func=cmd_family3)

    s = sub.add_parser("table", help="length-4 curves with S_x, S_y lower bounds")
    s.add_argument("--bound", type=int, default=explore_mod.TABLE_COEFF_BOUND)
    s.add_argument("--combo-size", type=int, default=explore_mod.TABLE_COMBO_SIZE)
    s.add_argument("--format", choices=FORMATS, default="csv")
    s.add_argument("--out")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_table)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"tateap: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
