"""Command-line interface: ``mandelangles <subcommand> [flags]``.

Exit status is 0 on success, 1 on a domain error and 2 on a usage error.
Exact values are printed as ``num/den``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from fractions import Fraction
from pathlib import Path

import mpmath

from . import biaccess, figures, kneading, ksigma, raytrace, realslice, tuning
from .angle import fmt, parse_angle, word_value
from .errors import DomainError


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected num/den, got {text!r}") from None


def _prec() -> int:
    env = os.environ.get("RAYS_PRECISION_BITS")
    return int(env) if env else kneading.DEFAULT_PREC


def _decimal(x, digits: int) -> str:
    if isinstance(x, Fraction):
        x = mpmath.mpf(x.numerator) / x.denominator
    return mpmath.nstr(x, digits, strip_zeros=False, min_fixed=-math.inf, max_fixed=math.inf)


def _levels(text: str) -> list:
    a, _, b = text.partition(":")
    return list(range(int(a), int(b) + 1))


def _sigma(args) -> ksigma.SigmaParam:
    if args.p is not None:
        return ksigma.SigmaParam.dyadic(args.p)
    if args.sigma is not None:
        return ksigma.SigmaParam(args.sigma)
    raise DomainError("give --p or --sigma")


def _words(args) -> tuning.TuningWords:
    return tuning.words_from_opening(realslice.Opening.from_pn(args.p, args.n))


def cmd_in_r(args):
    t = args.t
    if args.bits:
        bits = args.bits
        verdict = realslice.in_R_depth(bits, args.depth or len(bits) - 1)
        return _dump({"bits": bits, "verdict": str(verdict)})
    return _dump({"t": fmt(t), "in_R": realslice.in_R(t)})


def cmd_openings(args):
    ops = realslice.enumerate_openings(args.max_period, args.jobs)
    return "\n".join(o.to_json() for o in ops)


def cmd_opening_sum(args):
    return _dump({"sum": fmt(realslice.openings_length_sum(args.max_period, args.jobs))})


def cmd_cover(args):
    return realslice.cover_R(args.max_period).to_csv().rstrip("\n")


def cmd_ksigma_build(args):
    return ksigma.build_level(_sigma(args), args.level).set.to_csv().rstrip("\n")


def cmd_ksigma_verify(args):
    report = ksigma.verify_structure(ksigma.SigmaParam.dyadic(args.p), args.max_level)
    return "\n".join(_dump(r) for r in report)


def cmd_ksigma_dim(args):
    sp = _sigma(args)
    levels = _levels(args.levels)
    counts = ksigma.interval_counts(sp, levels)
    slope = ksigma.boxdim_estimate(sp, levels)
    return _dump({"sigma": fmt(sp.sigma), "levels": [levels[0], levels[-1]], "counts": counts,
                  "slope": round(slope, 6), "lower_bound": round(ksigma.dim_lower_bound(sp), 6)})


def cmd_tau(args):
    param = kneading.RealParam(args.c, _prec())
    w = kneading.tau(param, args.bits)
    digits = max(1, int(args.bits * math.log10(2)))
    out = {"input": args.c, "value": _decimal(word_value(w), digits), "word": w,
           "certified_bits": args.bits}
    # inside a component closure the value is the constant extension
    try:
        if biaccess.locate(param, realslice.enumerate_openings(10)) is not None:
            out["extended"] = True
    except DomainError:
        out["extended"] = "unresolved"
    return _dump(out)


def cmd_pi(args):
    c = kneading.pi(args.t, args.tol, prec=max(_prec(), 128))
    digits = max(1, int(-math.log10(args.tol)))
    return _dump({"input": fmt(args.t), "value": _decimal(c, digits + 1), "certified_digits": digits})


def cmd_nonrec(args):
    d = kneading.nonrecurrence_depth(kneading.RealParam(args.c, _prec()), args.steps)
    return _dump({"c": args.c, "steps": args.steps, "min_distance": round(d, 12)})


def cmd_tune(args):
    r = tuning.tune_angle(_words(args), args.t)
    images = [fmt(x) for x in r] if isinstance(r, tuple) else [fmt(r)]
    return _dump({"t": fmt(args.t), "images": images})


def cmd_psi(args):
    return _dump({"s": fmt(args.s), "psi": fmt(tuning.staircase_psi(_words(args), args.s))})


def cmd_cantor_dim(args):
    w = _words(args)
    scales, counts, slope = tuning.cantor_boxdim(w, args.depth or 12 * w.period)
    return _dump({"p": w.period, "scales": scales, "counts": counts, "slope": round(slope, 6)})


def cmd_s_c(args):
    return _dump({"t": fmt(args.t), "tau": fmt(args.tau),
                  "in_S": biaccess.s_c_membership(args.t, args.tau)})


def cmd_dim_report(args):
    ops = realslice.enumerate_openings(10, args.jobs)
    if args.sweep:
        lo, hi, steps = float(args.sweep[0]), float(args.sweep[1]), int(args.sweep[2])
        cs = [lo + (hi - lo) * k / max(steps - 1, 1) for k in range(steps)]
        return biaccess.reports_csv([biaccess.dim_report(repr(c), ops) for c in cs]).rstrip("\n")
    r = biaccess.dim_report(args.c, ops)
    row = r.as_row()
    return _dump({k: (round(v, 9) if isinstance(v, float) else v) for k, v in row.items()})


def cmd_trace_ray(args):
    ray = raytrace.trace_ray(args.c, args.t, args.depth, args.R0)
    return ray.to_csv().rstrip("\n")


def cmd_verify_landing(args):
    root = None
    if args.parabolic_period:
        root = raytrace.parabolic_root(args.c, args.parabolic_period)
    res = raytrace.verify_landing(args.c, depth=args.depth, t=args.t, root=root)
    return _dump({"c": args.c, "depth": args.depth, "residual": float(f"{res:.3e}")})


def cmd_figures(args):
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    files = {
        "openings_circle.svg": figures.openings_circle(),
        "ksigma_hierarchy.svg": figures.ksigma_hierarchy(),
        "ray_overlay.svg": figures.ray_overlay(),
    }
    for name, text in files.items():
        (out / name).write_text(text)
    names = sorted(files)
    if args.ppm:
        (out / "julia_backdrop.ppm").write_bytes(figures.escape_time_ppm(-1.75))
        names.append("julia_backdrop.ppm")
    return _dump({"written": names})


def build_parser() -> argparse.ArgumentParser:
    def globals_(default):
        g = argparse.ArgumentParser(add_help=False)
        g.add_argument("--jobs", type=int, default=default(1), help="worker processes")
        g.add_argument("--seed", type=int, default=default(0), help="seed for randomized sampling")
        g.add_argument("--out", default=default(None), help="output directory for figures")
        return g

    # global flags may come before or after the subcommand
    common = globals_(lambda v: argparse.SUPPRESS)
    parser = argparse.ArgumentParser(prog="mandelangles", parents=[globals_(lambda v: v)],
                                     description="External-angle combinatorics of real quadratics.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("in-r", cmd_in_r, "membership of an angle in R")
    sp.add_argument("--t", type=parse_angle)
    sp.add_argument("--bits", help="leading binary digits instead of an exact angle")
    sp.add_argument("--depth", type=int)

    sp = add("openings", cmd_openings, "openings of period <= P, one JSON object per line")
    sp.add_argument("--max-period", type=int, required=True)
    sp = add("opening-sum", cmd_opening_sum, "total length of the openings")
    sp.add_argument("--max-period", type=int, required=True)
    sp = add("cover", cmd_cover, "closed cover of R in [0, 1/2] as CSV")
    sp.add_argument("--max-period", type=int, required=True)

    for name, fn, help_ in (("ksigma-build", cmd_ksigma_build, "one level of K_sigma as CSV"),
                            ("ksigma-dim", cmd_ksigma_dim, "interval-count slope of K_sigma")):
        sp = add(name, fn, help_)
        sp.add_argument("--p", type=int)
        sp.add_argument("--sigma", type=_frac)
        if name == "ksigma-build":
            sp.add_argument("--level", type=int, required=True)
        else:
            sp.add_argument("--levels", default="8:20", help="first:last")
    sp = add("ksigma-verify", cmd_ksigma_verify, "structure checks, one JSON record per line")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--max-level", type=int, default=10)

    sp = add("tau", cmd_tau, "tau(c) from the certified itinerary")
    sp.add_argument("--c", required=True)
    sp.add_argument("--bits", type=int, default=24)
    sp = add("pi", cmd_pi, "parameter with angle t")
    sp.add_argument("--t", type=parse_angle, required=True)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp = add("nonrec", cmd_nonrec, "closest approach of the critical orbit to 0")
    sp.add_argument("--c", required=True)
    sp.add_argument("--steps", type=int, default=100)

    for name, fn, help_ in (("tune", cmd_tune, "tuning image of an angle"),
                            ("psi", cmd_psi, "inverse staircase"),
                            ("cantor-dim", cmd_cantor_dim, "box-count slope of the tuning Cantor set")):
        sp = add(name, fn, help_)
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--n", type=int, required=True)
        if name == "tune":
            sp.add_argument("--t", type=parse_angle, required=True)
        elif name == "psi":
            sp.add_argument("--s", type=_frac, required=True)
        else:
            sp.add_argument("--depth", type=int)

    sp = add("s-c", cmd_s_c, "biaccessibility of an angle for a given tau")
    sp.add_argument("--t", type=parse_angle, required=True)
    sp.add_argument("--tau", type=_frac, required=True)
    sp = add("dim-report", cmd_dim_report, "dimension bounds for B_c")
    sp.add_argument("--c")
    sp.add_argument("--sweep", nargs=3, metavar=("LO", "HI", "STEPS"))

    sp = add("trace-ray", cmd_trace_ray, "dynamic ray polyline as CSV")
    sp.add_argument("--c", required=True)
    sp.add_argument("--t", type=parse_angle, required=True)
    sp.add_argument("--depth", type=int, default=40)
    sp.add_argument("--R0", type=float, default=100.0)
    sp = add("verify-landing", cmd_verify_landing, "distance from the ray at tau(c) to the root")
    sp.add_argument("--c", required=True)
    sp.add_argument("--t", type=parse_angle)
    sp.add_argument("--depth", type=int, default=40)
    sp.add_argument("--parabolic-period", type=int)

    sp = add("figures", cmd_figures, "write the SVG figures")
    sp.add_argument("--ppm", action="store_true", help="also write an escape-time backdrop")
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    random.seed(args.seed)
    try:
        if args.command == "in-r" and args.t is None and not args.bits:
            parser.error("in-r needs --t or --bits")
        if args.command == "dim-report" and not (args.c or args.sweep):
            parser.error("dim-report needs --c or --sweep")
        text = args.fn(args)
    except SystemExit as e:
        return int(e.code or 0)
    except DomainError as e:
        print(_dump({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)
        return 1
    print(text, file=stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
