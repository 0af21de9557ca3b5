"""Command-line front end.

Subcommands: ``eval`` (value grids as CSV), ``coeffs`` (coefficient tables as
CSV), ``verify`` (identity suite as JSON), ``table`` (derived constants as
markdown).  Exit codes: 0 success, 1 verification failure, 2 unreadable
parameter file, 3 unbalanced weights.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

import numpy as np

from .coefficients import (compute_a, compute_c, compute_g, compute_l,
                           compute_q, compute_q_tilde)
from .errors import DeltaNeutralityError, ParameterError
from .evaluator import ContourSpec, SeriesSpec, eval_auto, eval_contour, eval_series_t1
from .params import ParameterSet, derive, validate
from .verify import run_all


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _json_write(obj: Any, out, indent: int = 0) -> None:
    """Deterministic JSON writer with fixed 17-significant-digit floats."""
    pad = "  " * indent
    if isinstance(obj, dict):
        out.write("{\n")
        items = list(obj.items())
        for i, (k, v) in enumerate(items):
            out.write(f'{pad}  {json.dumps(str(k))}: ')
            _json_write(v, out, indent + 1)
            out.write(",\n" if i < len(items) - 1 else "\n")
        out.write(pad + "}")
    elif isinstance(obj, (list, tuple)):
        out.write("[")
        for i, v in enumerate(obj):
            _json_write(v, out, indent + 1)
            if i < len(obj) - 1:
                out.write(", ")
        out.write("]")
    elif isinstance(obj, bool):
        out.write("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.write(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.write(_fmt(obj))
    elif obj is None:
        out.write("null")
    else:
        out.write(json.dumps(str(obj)))


def _load_params(path: str) -> ParameterSet:
    try:
        with open(path) as fh:
            params = ParameterSet.from_json(fh.read())
    except (OSError, ValueError, ParameterError) as exc:
        if isinstance(exc, DeltaNeutralityError):
            raise
        print(f"error: cannot read parameter file {path}: {exc}", file=sys.stderr)
        raise SystemExit(2)
    try:
        validate(params)
    except DeltaNeutralityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(3)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(2)
    return params


def _parse_grid(text: str) -> np.ndarray:
    try:
        lo, hi, count = text.split(":")
        lo, hi, count = float(lo), float(hi), int(count)
    except ValueError:
        raise SystemExit(f"error: bad grid spec {text!r}, expected start:stop:count")
    if not (lo < hi and count >= 1):
        raise SystemExit("error: grid needs start < stop and count >= 1")
    return np.linspace(lo, hi, count)


def cmd_eval(args) -> int:
    params = _load_params(args.params)
    d = derive(params)
    print("x,value,error_estimate,method")
    for x in _parse_grid(args.grid):
        x = float(x)
        if x == d.rho:
            # singular point, excluded from evaluation
            print(f"{_fmt(x)},nan,nan,closed_form")
            continue
        if x > d.rho:
            print(f"{_fmt(x)},{_fmt(0.0)},{_fmt(0.0)},closed_form")
            continue
        if args.route == "contour":
            r = eval_contour(params, x, ContourSpec(tail_tol=args.tolerance * 1e-3))
        elif args.route == "series":
            r = eval_series_t1(params, x / d.rho,
                               SeriesSpec(theta=args.theta, n_max=max(args.nmax, 64)))
        else:
            r = eval_auto(params, x, theta=args.theta)
        print(f"{_fmt(x)},{_fmt(r.value)},{_fmt(r.abs_error_estimate)},{r.method}")
    return 0


def cmd_coeffs(args) -> int:
    params = _load_params(args.params)
    n = args.nmax
    if args.table == "all":
        q = [0.0] + [compute_q(params, m) for m in range(1, n + 1)]
        qt = [0.0] + [compute_q_tilde(params, args.theta, m) for m in range(1, n + 1)]
        l = compute_l(params, n)
        c = compute_c(params, args.theta, n)
        a = compute_a(params, args.theta, n)
        print("index,q,q_tilde,l,c,a")
        for i in range(n + 1):
            print(",".join([str(i), _fmt(q[i]), _fmt(qt[i]), _fmt(l[i]),
                            _fmt(c[i]), _fmt(a[i])]))
        return 0
    if args.table == "g":
        gt = compute_g(params.a, params.b, args.removed_k, n)
        print("index,value,route")
        for i, v in enumerate(gt.g):
            print(f"{i},{_fmt(v)},explicit")
        return 0
    routes = {"q": "direct", "l": "recurrence", "c": "recurrence",
              "a": args.route_a}
    if args.table == "q":
        vals = [0.0] + [compute_q(params, m) for m in range(1, n + 1)]
    elif args.table == "l":
        vals = compute_l(params, n)
    elif args.table == "c":
        vals = compute_c(params, args.theta, n)
    elif args.table == "a":
        vals = compute_a(params, args.theta, n, route=args.route_a)
    else:
        raise SystemExit(f"error: unknown table {args.table!r}")
    print("index,value,route")
    for i, v in enumerate(vals):
        print(f"{i},{_fmt(v)},{routes[args.table]}")
    return 0


def cmd_verify(args) -> int:
    params = _load_params(args.params)
    reports = run_all(params, tolerance=args.tolerance)
    payload = [r.to_dict() for r in reports]
    _json_write(payload, sys.stdout)
    print()
    return 0 if all(r.passed for r in reports) else 1


def cmd_table(args) -> int:
    params = _load_params(args.params)
    d = derive(params)
    print("| constant | value |")
    print("| --- | --- |")
    print(f"| delta | {_fmt(d.delta)} |")
    print(f"| mu | {_fmt(d.mu)} |")
    print(f"| rho | {_fmt(d.rho)} |")
    print(f"| nu | {_fmt(d.nu)} |")
    print(f"| gamma_pole | {_fmt(d.gamma_pole)} |")
    print(f"| g_case | {'yes' if d.is_g_case else 'no'} |")
    return 0


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(
        prog="deltah",
        description="Compactly supported gamma-ratio transforms: evaluation, "
                    "coefficient tables, and identity verification.")
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--params", required=True, help="JSON parameter file")
    common.add_argument("--theta", type=float, default=0.0,
                        help="free splitting parameter of the edge series")
    common.add_argument("--nmax", type=int, default=40,
                        help="table / series length")
    common.add_argument("--tolerance", type=float, default=1e-6)
    common.add_argument("--output", choices=("csv", "json"), default="csv")

    p = sub.add_parser("eval", parents=[common], help="evaluate on an x grid")
    p.add_argument("--grid", required=True, help="start:stop:count")
    p.add_argument("--route", choices=("auto", "contour", "series"),
                   default="auto")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("coeffs", parents=[common], help="dump coefficient tables")
    p.add_argument("--table", choices=("all", "q", "l", "c", "a", "g"),
                   default="all")
    p.add_argument("--route-a", choices=("stirling", "noerlund"),
                   default="stirling")
    p.add_argument("--removed-k", type=int, default=1,
                   help="excluded lower-shift index for the g table (1-based)")
    p.set_defaults(fn=cmd_coeffs)

    p = sub.add_parser("verify", parents=[common], help="run the identity suite")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("table", parents=[common], help="derived constants")
    p.set_defaults(fn=cmd_table)

    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
