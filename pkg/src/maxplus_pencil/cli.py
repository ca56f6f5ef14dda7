"""Command line front end.

Exit codes: 0 success, 1 negative verdict (not an eigenvalue, not an
endpoint), 2 bad input, 3 violated precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import games, generators, spectral
from .core import DimensionError, format_ext, to_ext
from .fileio import MatrixFormatError, format_matrix, read_matrix, write_matrix

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3


class InputError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        v = to_ext(text)
    except (ValueError, TypeError, ZeroDivisionError):
        raise InputError(f"not a rational number: {text!r}") from None
    if not isinstance(v, Fraction):
        raise InputError(f"lambda must be finite, got {text!r}")
    return v


def _load_pair(args):
    try:
        A, B = read_matrix(args.A), read_matrix(args.B)
    except OSError as exc:
        raise InputError(str(exc)) from None
    if A.shape != B.shape:
        raise InputError(f"A is {A.rows}x{A.cols} but B is {B.rows}x{B.cols}")
    return A, B


def _pair_args(p):
    p.add_argument("--A", required=True, help="matrix file for A")
    p.add_argument("--B", required=True, help="matrix file for B")


def _jobs_arg(p):
    p.add_argument("--jobs", type=int, default=None, help="worker processes for oracle calls (default MAXPLUS_PENCIL_JOBS or 1)")


def _vector_text(x) -> str:
    return "(" + ", ".join(format_ext(v) for v in x) + ")"


def cmd_eval(args) -> int:
    A, B = _load_pair(args)
    red = spectral._reduce(A, B)
    if red.status == "unsolvable":
        print("-inf")
        return EXIT_OK
    if red.empty:
        print("0")
        return EXIT_OK
    print(format_ext(games.spectral_radius(games.build_game(red.A, red.B, _rational(args.lam)))))
    return EXIT_OK


def cmd_spectrum(args) -> int:
    A, B = _load_pair(args)
    meta = {}
    spec = spectral.compute_spectrum(A, B, jobs=args.jobs, meta=meta)
    if args.json:
        out = spec.to_dict()
        out["oracle_calls"] = meta.get("oracle_calls", 0)
        out["window_case"] = meta.get("window_case")
        print(json.dumps(out))
    else:
        print(spec)
    return EXIT_OK


def _csv_rows(f: spectral.PiecewiseAffine, n: int):
    lo, hi = f.meta.get("window", (Fraction(0), Fraction(0)))
    lo, hi = lo - 1, hi + 1
    n = max(n, 2)
    step = (hi - lo) / (n - 1)
    # decimal output here is a rendering of exact values
    return ["lambda,s"] + [f"{float(lo + k * step):.10g},{float(f(lo + k * step)):.10g}" for k in range(n)]


def cmd_sf(args) -> int:
    A, B = _load_pair(args)
    f = spectral.reconstruct_spectral_function(A, B, jobs=args.jobs)
    report = f.to_dict()
    meta = f.meta
    if "window" in meta:
        report["window"] = [format_ext(v) for v in meta["window"]]
        report["window_case"] = meta["window_case"]
    report["oracle_calls"] = meta.get("oracle_calls", 0)
    try:
        report["bounds"] = spectral.bounds_report(A, B).to_dict()
    except games.PreconditionError:
        report["bounds"] = None
    print(json.dumps(report, indent=2))
    if args.samples:
        rows = _csv_rows(f, args.samples)
        if args.csv:
            Path(args.csv).write_text("\n".join(rows) + "\n")
        else:
            print("\n".join(rows))
    return EXIT_OK


def cmd_bounds(args) -> int:
    A, B = _load_pair(args)
    print(json.dumps(spectral.bounds_report(A, B).to_dict(), indent=2))
    return EXIT_OK


def cmd_solve(args) -> int:
    A, B = _load_pair(args)
    x = spectral.eigenvector_at(A, B, _rational(args.lam))
    if x is None:
        print("not an eigenvalue")
        return EXIT_NEGATIVE
    print(_vector_text(x))
    return EXIT_OK


def cmd_check_endpoint(args) -> int:
    A, B = _load_pair(args)
    red = spectral._reduce(A, B)
    if red.status != "reduced" or red.empty:
        print("not an endpoint")
        return EXIT_NEGATIVE
    res = games.endpoint_certificate(games.build_game(red.A, red.B, _rational(args.lam)), args.side)
    if not res.certified:
        print(f"not an endpoint ({res.reason})")
        return EXIT_NEGATIVE
    cyc = res.cycle
    nodes = " -> ".join(str(i + 1) for i in cyc.cycle + cyc.cycle[:1])
    print(f"{args.side} endpoint certified")
    print(f"policy: {' '.join(f'{s}{k + 1}' for s, k in res.policy.describe(games.build_game(red.A, red.B, 0)))}")
    print(f"critical cycle: {nodes} (length {cyc.length}, lambda slope {cyc.slope}, mean {format_ext(cyc.mean)})")
    return EXIT_OK


def _parse_intervals(text: str):
    out = []
    for part in text.split(","):
        try:
            a, c = part.split(":")
        except ValueError:
            raise InputError(f"interval {part!r} is not of the form a:c") from None
        out.append((_rational(a), _rational(c)))
    return out


def cmd_gen(args) -> int:
    try:
        if args.kind == "slope":
            inst = generators.gen_slope_family(args.m, args.l)
        elif args.kind == "intervals":
            inst = generators.gen_interval_spectrum(_parse_intervals(args.intervals))
        else:
            inst = generators.gen_random(args.m, args.n, args.M, args.density, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.out_a and args.out_b:
        write_matrix(args.out_a, inst.A)
        write_matrix(args.out_b, inst.B)
    else:
        sys.stdout.write("# A\n" + format_matrix(inst.A) + "# B\n" + format_matrix(inst.B))
    if args.kind == "random":
        print(json.dumps({k: v for k, v in inst.meta.items()}), file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maxplus-pencil", description="Two-sided max-plus eigenproblem A x = lam + B x")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="exact value of s(lambda)")
    _pair_args(p)
    p.add_argument("--lambda", dest="lam", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("spectrum", help="spectrum as a union of closed intervals")
    _pair_args(p)
    _jobs_arg(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("sf", help="piecewise-affine spectral function")
    _pair_args(p)
    _jobs_arg(p)
    p.add_argument("--samples", type=int, default=0, help="also emit N samples as CSV (lambda,s)")
    p.add_argument("--csv", help="write the samples to this file instead of stdout")
    p.set_defaults(func=cmd_sf)

    p = sub.add_parser("bounds", help="bounds on the spectrum")
    _pair_args(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("solve", help="eigenvector for a given lambda")
    _pair_args(p)
    p.add_argument("--lambda", dest="lam", required=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check-endpoint", help="certify lambda as an interval end of the spectrum")
    _pair_args(p)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--side", choices=["Left", "Right"], required=True)
    p.set_defaults(func=cmd_check_endpoint)

    p = sub.add_parser("gen", help="write an instance")
    p.add_argument("kind", choices=["slope", "intervals", "random"])
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--M", type=int, default=5)
    p.add_argument("--density", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--intervals", default="0:0", help="comma separated a:c pairs, e.g. 1:2,2.2:2.4,3:3")
    p.add_argument("--out-a")
    p.add_argument("--out-b")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, MatrixFormatError, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except games.PreconditionError as exc:
        print(f"precondition violated ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
