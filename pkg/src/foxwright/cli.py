"""Command-line front end: ``foxwright {eval,coeffs,cut,scan,selftest}``.

Exit codes: 0 ok, 1 self-test failure, 2 domain error, 3 tolerance failure,
4 parse error.  Errors are reported as one JSON line on stderr.
"""
from __future__ import annotations

import argparse
import cmath
import csv
import json
import math
import os
import sys
from typing import Optional, Sequence

from . import engine, selftest
from .errors import (
    CutError,
    DeltaError,
    DomainError,
    FoxWrightError,
    IntegerMuError,
    PoleCollisionError,
    PoleError,
    ScaleError,
    ShapeError,
    SigmaError,
    ToleranceError,
)
from .evaluator import (
    EvalResult,
    average_on_cut,
    eval_at_rho,
    eval_auto,
    eval_maclaurin,
    eval_residue_series,
    eval_singular_expansion,
    jump_on_cut,
)
from .params import ParameterSet, choose_sigma, parse_complex, parse_complex_list, validate

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_DOMAIN = 2
EXIT_TOLERANCE = 3
EXIT_PARSE = 4

# most specific first
_ERROR_TAGS = [
    (CutError, "on-branch-cut"),
    (DeltaError, "delta-not-minus-one"),
    (ShapeError, "bad-shape"),
    (ScaleError, "scale-too-small"),
    (SigmaError, "bad-sigma"),
    (IntegerMuError, "integer-mu"),
    (PoleCollisionError, "pole-collision"),
    (PoleError, "gamma-pole"),
    (DomainError, "domain"),
    (ToleranceError, "tolerance"),
]

SEQUENCES = ("q", "q-theta", "l", "l-theta", "V", "V-dual", "R", "W")


class ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def error_tag(exc: BaseException) -> str:
    for cls, tag in _ERROR_TAGS:
        if isinstance(exc, cls):
            return tag
    return "error"


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _real_list(text: str) -> list[float]:
    vals = parse_complex_list(text)
    if any(v.imag != 0 for v in vals):
        raise ValueError(f"scales must be real: {text!r}")
    return [v.real for v in vals]


def _param_set(args) -> ParameterSet:
    try:
        a = parse_complex_list(args.a)
        A = _real_list(args.A)
        b = parse_complex_list(args.b)
        B = _real_list(args.B)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return validate(a, A, b, B)


def _complex_arg(text: str, name: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise ParseError(f"--{name}: {exc}") from exc


def _cpx(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _evaluate(ps: ParameterSet, z: complex, rep: str, sigma: Optional[float], tol: float) -> EvalResult:
    if rep == "auto":
        return eval_auto(ps, z, tol)
    if rep == "maclaurin":
        return eval_maclaurin(ps, z, tol)
    if rep == "residue":
        return eval_residue_series(ps, z, tol)
    if rep == "singular":
        return eval_singular_expansion(ps, z / ps.rho, sigma, tol)
    raise ParseError(f"representation {rep!r} needs no argument z")


def run_eval(args, out) -> int:
    ps = _param_set(args)
    if args.at_rho or args.rep == "at-rho":
        res = eval_at_rho(ps, args.sigma, args.tol)
    else:
        if args.z is None:
            raise ParseError("eval needs --z or --at-rho")
        res = _evaluate(ps, _complex_arg(args.z, "z"), args.rep, args.sigma, args.tol)
    if args.format == "json":
        rec = {"re": res.value.real, "im": res.value.imag, "representation": res.representation,
               "terms_used": res.terms_used, "err_estimate": res.err_estimate}
        out.write(json.dumps(rec) + "\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["re", "im", "representation", "terms_used", "err_estimate"])
        w.writerow([_fmt(res.value.real), _fmt(res.value.imag), res.representation, res.terms_used,
                    _fmt(res.err_estimate)])
    return EXIT_OK


def _sequence(ps: ParameterSet, seq: str, start: int, count: int, sigma: float, theta: float, tol: float):
    idx = range(start, start + count)
    if seq in ("q", "q-theta"):
        idx = range(max(start, 1), max(start, 1) + count)
        th = theta if seq == "q-theta" else None
        return [(i, engine.q_m(ps, sigma, i, th)) for i in idx]
    if seq == "l":
        return [(i, engine.l_r(ps, sigma, i)) for i in idx]
    if seq == "l-theta":
        return [(i, engine.l_r_theta(ps, sigma, theta, i)) for i in idx]
    if seq == "V":
        return [(i, engine.v_n(ps, sigma, theta, i)) for i in idx]
    if seq == "V-dual":
        return [(i, engine.v_n_dual(ps, sigma, theta, i)) for i in idx]
    if seq == "R":
        return [(i, engine.coeff_R(ps, sigma, i, theta)) for i in idx]
    return [(i, engine.coeff_W(ps, sigma, i, tol, theta)) for i in idx]


def run_coeffs(args, out) -> int:
    ps = _param_set(args)
    if args.count < 0 or args.start < 0:
        raise ParseError("--count and --start must be non-negative")
    sigma = choose_sigma(ps, args.sigma)
    if args.seq not in ("q", "q-theta", "l", "l-theta"):
        ps.require_scales()
    rows = _sequence(ps, args.seq, args.start, args.count, sigma, args.theta, args.tol)
    if args.format == "json":
        rec = {"seq": args.seq, "sigma": sigma, "theta": args.theta,
               "values": [{"index": i, "re": v.real, "im": v.imag} for i, v in rows]}
        out.write(json.dumps(rec) + "\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["index", "re", "im"])
        for i, v in rows:
            w.writerow([i, _fmt(v.real), _fmt(v.imag)])
    return EXIT_OK


def run_cut(args, out) -> int:
    ps = _param_set(args)
    if args.x is None:
        raise ParseError("cut needs --x")
    x = _complex_arg(args.x, "x")
    if x.imag != 0:
        raise ParseError("--x must be real")
    jump = jump_on_cut(ps, x.real, args.tol)
    avg = average_on_cut(ps, x.real, args.tol)
    if args.format == "json":
        out.write(json.dumps({"x": x.real, "jump": _cpx(jump), "average": _cpx(avg)}) + "\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["x", "jump_re", "jump_im", "average_re", "average_im"])
        w.writerow([_fmt(x.real), _fmt(jump.real), _fmt(jump.imag), _fmt(avg.real), _fmt(avg.imag)])
    return EXIT_OK


def parse_grid(spec: str) -> list[complex]:
    """Scaled grid points w (z = rho * w).

    ``line:w0:w1:n``  n points from w0 to w1 inclusive
    ``ring:c:r:n``    n points c + r exp(2 pi i k / n)
    ``radial:t0:t1:n`` n real points from t0 to t1 inclusive
    """
    parts = spec.split(":")
    if len(parts) != 4:
        raise ParseError(f"bad grid spec {spec!r}")
    kind, p1, p2, p3 = parts
    try:
        n = int(p3)
    except ValueError as exc:
        raise ParseError(f"bad point count in {spec!r}") from exc
    if n < 1:
        raise ParseError("grid needs at least one point")
    try:
        if kind in ("line", "radial"):
            w0, w1 = parse_complex(p1), parse_complex(p2)
            if kind == "radial" and (w0.imag or w1.imag):
                raise ParseError("radial grid takes real end points")
            if n == 1:
                return [w0]
            return [w0 + (w1 - w0) * k / (n - 1) for k in range(n)]
        if kind == "ring":
            c, r = parse_complex(p1), parse_complex(p2).real
            return [c + r * cmath.exp(2j * math.pi * k / n) for k in range(n)]
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown grid kind {kind!r}")


def run_scan(args, out) -> int:
    ps = _param_set(args)
    if not args.grid:
        raise ParseError("scan needs --grid")
    points = parse_grid(args.grid)
    rows = []
    for w in points:
        z = ps.rho * w
        try:
            res = _evaluate(ps, z, args.rep, args.sigma, args.tol)
            rows.append((w, z, res.value, res.representation, res.err_estimate, ""))
        except FoxWrightError as exc:
            rows.append((w, z, None, "", None, error_tag(exc)))
    radius = None
    if args.radius:
        try:
            radius = engine.w_radius_estimate(ps, args.sigma, args.radius_terms)
        except FoxWrightError as exc:
            radius = error_tag(exc)
    if args.format == "json":
        recs = [{"w": _cpx(w), "z": _cpx(z), "value": None if v is None else _cpx(v),
                 "representation": rep, "err_estimate": e, "error": err or None}
                for w, z, v, rep, e, err in rows]
        rec = {"points": recs}
        if args.radius:
            rec["radius_estimate"] = radius
        out.write(json.dumps(rec) + "\n")
        return EXIT_OK
    wr = csv.writer(out, lineterminator="\n")
    wr.writerow(["w_re", "w_im", "z_re", "z_im", "re", "im", "representation", "err_estimate", "error"])
    for w, z, v, rep, e, err in rows:
        wr.writerow([_fmt(w.real), _fmt(w.imag), _fmt(z.real), _fmt(z.imag),
                     "" if v is None else _fmt(v.real), "" if v is None else _fmt(v.imag),
                     rep, "" if e is None else _fmt(e), err])
    if args.radius:
        wr.writerow(["radius-estimate", radius if isinstance(radius, str) else _fmt(radius)])
    return EXIT_OK


def run_selftest(args, out) -> int:
    sets = dict(selftest.BUILTIN_SETS)
    if args.seed is not None:
        sets.update(selftest.random_sets(args.seed, args.count))
    if args.a is not None:
        try:
            sets["custom"] = (parse_complex_list(args.a), _real_list(args.A),
                              parse_complex_list(args.b), _real_list(args.B))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    results = selftest.run_battery(sets)
    for r in results:
        out.write(selftest.format_result(r) + "\n")
    failed = selftest.summarize(results)
    if failed:
        out.write("FAILED: " + ", ".join(f"{r.label}/{r.name}" for r in failed) + "\n")
        return EXIT_SELFTEST
    out.write(f"all {len(results)} checks passed\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False, allow_abbrev=False)
    common.add_argument("--a", help="top parameters a_k, comma separated complex literals")
    common.add_argument("--A", default="", help="top scales A_k")
    common.add_argument("--b", default="", help="bottom parameters b_j")
    common.add_argument("--B", default="", help="bottom scales B_j")
    common.add_argument("--sigma", type=float, default=None)
    common.add_argument("--theta", type=float, default=0.0)
    common.add_argument("--tol", type=float, default=engine.DEFAULT_TOL)
    common.add_argument("--max-terms", type=int, default=None, help="series term cap (also FWX_MAX_TERMS)")
    common.add_argument("--format", choices=("json", "csv"), default=None,
                        help="output format (default json; csv for scan)")

    p = _Parser(prog="foxwright", description="Fox-Wright function with balanced scales", allow_abbrev=False)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", parents=[common], help="evaluate pPsi_q(z)", allow_abbrev=False)
    e.add_argument("--z")
    e.add_argument("--at-rho", action="store_true", help="evaluate at z = rho")
    e.add_argument("--rep", choices=("auto", "maclaurin", "residue", "singular", "at-rho"), default="auto")

    c = sub.add_parser("coeffs", parents=[common], help="export coefficient sequences", allow_abbrev=False)
    c.add_argument("--seq", choices=SEQUENCES, default="V")
    c.add_argument("--start", type=int, default=0)
    c.add_argument("--count", type=int, default=10)

    k = sub.add_parser("cut", parents=[common], help="jump and average on the cut", allow_abbrev=False)
    k.add_argument("--x")

    s = sub.add_parser("scan", parents=[common], help="evaluate on a grid of z/rho", allow_abbrev=False)
    s.add_argument("--grid", help="line:w0:w1:n | ring:c:r:n | radial:t0:t1:n")
    s.add_argument("--rep", choices=("auto", "maclaurin", "residue", "singular"), default="auto")
    s.add_argument("--radius", action="store_true", help="append a root-test radius estimate for the W series")
    s.add_argument("--radius-terms", type=int, default=60)

    t = sub.add_parser("selftest", parents=[common], help="run the invariant battery", allow_abbrev=False)
    t.add_argument("--seed", type=int, default=None, help="add random parameter sets from this seed")
    t.add_argument("--count", type=int, default=2, help="number of random sets")
    return p


_COMMANDS = {"eval": run_eval, "coeffs": run_coeffs, "cut": run_cut, "scan": run_scan, "selftest": run_selftest}


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    saved = os.environ.get("FWX_MAX_TERMS")
    try:
        args = build_parser().parse_args(argv)
        if args.format is None:
            args.format = "csv" if args.command == "scan" else "json"
        if args.command != "selftest" and args.a is None:
            raise ParseError("--a is required")
        if args.max_terms is not None:
            if args.max_terms < 1:
                raise ParseError("--max-terms must be positive")
            os.environ["FWX_MAX_TERMS"] = str(args.max_terms)
        return _COMMANDS[args.command](args, out)
    except ParseError as exc:
        err.write(json.dumps({"error": "parse", "message": str(exc)}) + "\n")
        return EXIT_PARSE
    except ToleranceError as exc:
        err.write(json.dumps({"error": "tolerance", "message": str(exc)}) + "\n")
        return EXIT_TOLERANCE
    except DomainError as exc:
        err.write(json.dumps({"error": error_tag(exc), "message": str(exc)}) + "\n")
        return EXIT_DOMAIN
    finally:
        if saved is None:
            os.environ.pop("FWX_MAX_TERMS", None)
        else:
            os.environ["FWX_MAX_TERMS"] = saved


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
