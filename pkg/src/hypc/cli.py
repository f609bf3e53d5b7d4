"""Command-line front end: ``hypc {gamma,eval,verify,table,convolve}``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 evaluation error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import List, Optional

import numpy as np

from .errors import HypcError, OnUnitCircle, ResonantParameters
from .gamma import gamma_c
from .identities import SUITES, _jsonable, run_suite
from .kernel import GParams
from .lattice import LambdaList, LambdaPoint
from .quadrature import QuadConfig, convolve_g, g_eval_quad
from .residue import g_eval_series

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_EVAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}")


def parse_params(a: str, b: str) -> GParams:
    try:
        return GParams(LambdaList.from_text(a or ""), LambdaList.from_text(b or ""))
    except (ValueError, TypeError) as e:
        raise UsageError(f"bad parameter list: {e}")


def parse_grid(text: str) -> List[complex]:
    """``re0:re1:n_re,im0:im1:n_im``, scanned with the real part varying fastest."""
    try:
        re_s, im_s = text.split(",")
        r0, r1, nr = re_s.split(":")
        i0, i1, ni = im_s.split(":")
        xs = np.linspace(float(r0), float(r1), int(nr))
        ys = np.linspace(float(i0), float(i1), int(ni))
    except ValueError:
        raise UsageError(f"bad grid {text!r}; expected re0:re1:n,im0:im1:n")
    if int(nr) < 1 or int(ni) < 1:
        raise UsageError("grid sizes must be positive")
    return [complex(x, y) for y in ys for x in xs]


def quad_config(args) -> QuadConfig:
    return QuadConfig(tol_abs=args.tol_abs, tol_rel=args.tol_rel, max_k=args.max_k)


def evaluate(params: GParams, z: complex, engine: str, cfg: QuadConfig):
    if z == 0:
        raise UsageError("z must be nonzero")
    if engine == "series":
        return g_eval_series(params, z)
    if engine == "quad":
        return g_eval_quad(params, z, cfg)
    try:
        return g_eval_series(params, z)
    except (ResonantParameters, OnUnitCircle):
        return g_eval_quad(params, z, cfg)


def _error_payload(e: Exception) -> dict:
    return {"error": {"kind": type(e).__name__, "message": str(e)}}


def _emit(obj) -> None:
    print(json.dumps(obj, default=_jsonable))


def cmd_gamma(args) -> int:
    try:
        p = LambdaPoint.from_text(args.point)
    except (ValueError, TypeError) as e:
        raise UsageError(f"bad lattice point {args.point!r}: {e}")
    g = gamma_c(p)
    out = {"k": p.k, "sigma": p.sigma, "pole": g.is_pole}
    if g.is_pole:
        out["residue"] = g.residue.real
    else:
        out.update(re=g.value.real, im=g.value.imag)
    _emit(out)
    return EXIT_OK


def cmd_eval(args) -> int:
    params = parse_params(args.a, args.b)
    z = parse_complex(args.z)
    try:
        res = evaluate(params, z, args.engine, quad_config(args))
    except HypcError as e:
        _emit(_error_payload(e))
        return EXIT_EVAL
    _emit(res.to_dict())
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {sorted(SUITES)}")
    tol = args.tol if args.tol is not None else DEFAULT_SUITE_TOL.get(args.suite, 1e-8)
    report = run_suite(args.suite, args.samples, args.seed, tol)
    print(report.to_json())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_table(args) -> int:
    params = parse_params(args.a, args.b)
    grid = parse_grid(args.z)
    cfg = quad_config(args)
    rows = []
    for z in grid:
        try:
            res = evaluate(params, z, args.engine, cfg)
            eng = res.engine + ("/" + res.diagnostics["branch"] if "branch" in res.diagnostics else "")
            rows.append((z.real, z.imag, res.value.real, res.value.imag, res.abs_error_estimate, eng))
        except (HypcError, UsageError) as e:
            rows.append((z.real, z.imag, math.nan, math.nan, math.nan, "error:" + type(e).__name__))
    if args.out == "json":
        _emit([dict(zip(TABLE_COLUMNS, r)) for r in rows])
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(TABLE_COLUMNS)
        w.writerows(rows)
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def cmd_convolve(args) -> int:
    p1 = parse_params(args.a, args.b)
    p2 = parse_params(args.a2, args.b2)
    t = parse_complex(args.t)
    if t == 0:
        raise UsageError("t must be nonzero")
    cfg = quad_config(args)
    try:
        integral = convolve_g(p1, p2, t, cfg)
    except HypcError as e:
        _emit(_error_payload(e))
        return EXIT_EVAL
    merged = GParams(p1.a_list + p2.a_list, p1.b_list + p2.b_list)
    try:
        ref = evaluate(merged, t, "auto", cfg).value
        diff = abs(integral - ref)
    except HypcError as e:
        ref, diff = None, None
        print(f"reference value unavailable: {e}", file=sys.stderr)
    _emit({"integral": integral, "reference": ref, "difference": diff,
           "merged": merged.to_dict()})
    return EXIT_OK


TABLE_COLUMNS = ("re_z", "im_z", "re_G", "im_G", "abs_err", "engine")
DEFAULT_SUITE_TOL = {"gamma": 1e-11, "asymptotics": 1e-3, "engines": 1e-5, "closed_forms": 1e-10,
                     "identities": 1e-8, "pde": 1e-4, "multiplication": 1e-6, "euler": 1e-3,
                     "vilenkin": 1e-3, "convolution": 1e-3}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hypc", description="Hypergeometric functions of the complex field.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, params=True):
        if params:
            p.add_argument("--a", default="", help='upper list, e.g. "0:0.5:0;1:0.8:0.1" (k:Re sigma:Im sigma)')
            p.add_argument("--b", default="", help="lower list, same grammar")
        p.add_argument("--engine", choices=("auto", "series", "quad"), default="auto",
                       help="auto tries the series and falls back to quadrature (default auto)")
        p.add_argument("--tol-rel", type=float, default=1e-6, help="quadrature relative tolerance (default 1e-6)")
        p.add_argument("--tol-abs", type=float, default=1e-8, help="quadrature absolute tolerance (default 1e-8)")
        p.add_argument("--max-k", type=int, default=200, help="largest |k| summed by quadrature (default 200)")

    g = sub.add_parser("gamma", help="gamma_c at a lattice point")
    g.add_argument("point", help='"k:Re sigma:Im sigma"')
    g.set_defaults(func=cmd_gamma)

    e = sub.add_parser("eval", help="evaluate pGq at one point")
    common(e)
    e.add_argument("--z", required=True, help='argument, e.g. "2+0.5i"')
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, help=f"one of {', '.join(sorted(SUITES))}")
    v.add_argument("--samples", type=int, default=20, help="number of draws (default 20)")
    v.add_argument("--seed", type=int, default=0, help="seed (default 0)")
    v.add_argument("--tol", type=float, default=None, help="residual tolerance (default depends on suite)")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="tabulate pGq on a rectangular grid")
    common(t)
    t.add_argument("--z", required=True, help='grid "re0:re1:n,im0:im1:n"')
    t.add_argument("--out", choices=("csv", "json"), default="csv", help="output format (default csv)")
    t.set_defaults(func=cmd_table)

    c = sub.add_parser("convolve", help="multiplicative convolution of two G functions at t")
    common(c)
    c.add_argument("--a2", default="", help="upper list of the second factor")
    c.add_argument("--b2", default="", help="lower list of the second factor")
    c.add_argument("--t", required=True, help="convolution argument")
    c.set_defaults(func=cmd_convolve)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as e:
        print(f"hypc: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
