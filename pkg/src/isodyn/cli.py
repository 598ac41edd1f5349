"""Command-line entry point.

Exit codes: 0 on success or a passing check, 1 on a failing check, 2 on
invalid input.  Every numeric run echoes the tolerances and seeds it used
in the ``config`` block of its JSON output.
"""
from __future__ import annotations

import argparse
import sys

from . import __version__
from . import io as iio
from .errors import IsodynError, IsodynamicUndefined, Undefined
from .figures import emit_figure
from .isodyn_map import RationalMap, associated_rational, critical_value_divisor, isodynamic_divisor, isodynamic_poly, validate
from .mobius import crosscheck_suite, equivariance_suite
from .separation import adversarial_control, conjecture_scan
from .special import gen_laguerre, gen_legendre
from .strata import scan_strata
from .triangle import (Triangle, apollonian_residual, centroid_line, isodynamic_points_triangle, x26613,
                       x26613_from_discriminant)

__all__ = ["main", "build_parser", "gen_legendre", "gen_laguerre", "emit_figure"]

DEFAULT_SEED = 20240101


def _pt(z):
    z = complex(z)
    if z.real == float("inf") or z.imag == float("inf"):
        return "inf"
    return [z.real, z.imag]


def _sorted_divisor(D):
    obj = D.to_json()
    obj["points"] = sorted(obj["points"], key=lambda p: (p[0], p[1]))
    return obj


def _divisor_report(w: RationalMap, args):
    report = validate(w)
    out = {"config": {"tol": args.tol, "pipeline": args.pipeline, "mode": w.mode},
           "input": iio.rational_to_json(w), "validity": report.status.value}
    if not report.ok:
        out["witness"] = str(report.witness) if report.witness is not None else None
        out["detail"] = report.detail
        return out, 2
    if args.pipeline == "critical":
        D = critical_value_divisor(associated_rational(w), tol=args.tol)
    else:
        D = isodynamic_divisor(w, tol=args.tol)
    out["divisor"] = _sorted_divisor(D)
    if w.mode == "exact" and w.isodynamic_degree <= 12:
        out["isodynamic_poly"] = iio.poly_to_json(isodynamic_poly(w))
    return out, 0


def cmd_iso_poly(args):
    if args.json:
        w = iio.rational_from_json(_read_json(args.json))
    elif args.coeffs:
        w = RationalMap.polynomial(iio.parse_coeffs(args.coeffs, exact=not args.float), args.d)
    else:
        raise iio.InputError("give --coeffs or --json")
    return _divisor_report(w, args)


def cmd_iso_rat(args):
    if args.json:
        w = iio.rational_from_json(_read_json(args.json))
    else:
        if not (args.p and args.q):
            raise iio.InputError("give --p and --q, or --json")
        w = RationalMap.from_pq(iio.parse_coeffs(args.p, not args.float), iio.parse_coeffs(args.q, not args.float))
    return _divisor_report(w, args)


def cmd_iso_triangle(args):
    T = Triangle.from_points(iio.parse_vertices(args.vertices))
    S, S2 = isodynamic_points_triangle(T)
    out = {"config": {"tol": args.tol}, "vertices": T.to_json(), "S": _pt(S), "S_prime": _pt(S2),
           "residual_S": apollonian_residual(T, S),
           "residual_S_prime": None if _pt(S2) == "inf" else apollonian_residual(T, S2)}
    try:
        u1 = x26613(T)
        out["X26613"] = _pt(u1)
        out["X26613_from_discriminant"] = _pt(x26613_from_discriminant(T))
    except Undefined as exc:
        out["X26613"] = None
        out["X26613_note"] = str(exc)
    return out, 0


def cmd_check_equivariance(args):
    poles = [args.pole_degree] if args.pole_degree is not None else [0, 1, 2]
    runs = [equivariance_suite(args.d, dd, args.trials, args.seed, args.tol, args.kappa) for dd in poles]
    ok = all(r["pass"] for r in runs)
    out = {"config": {"d": args.d, "pole_degrees": poles, "trials": args.trials, "seed": args.seed,
                      "tol": args.tol, "kappa": args.kappa}, "runs": runs, "pass": ok}
    return out, 0 if ok else 1


def cmd_check_crosscheck(args):
    configs = [(d, dd) for d in range(3, args.max_d + 1) for dd in range(args.max_pole + 1)]
    rep = crosscheck_suite(configs, args.trials, args.seed, args.tol)
    return {"config": {"trials": args.trials, "seed": args.seed, "tol": args.tol,
                       "configs": [list(c) for c in configs]}, "report": rep}, 0 if rep["pass"] else 1


def cmd_check_separation(args):
    rect = iio.parse_rect(args.rect)
    rep = conjecture_scan(args.d, args.samples, rect, args.seed)
    ctrl = adversarial_control(args.d, args.seed, rect=rect)
    ok = rep["strict"] == 0 and ctrl["separable"]
    out = {"config": {"d": args.d, "samples": args.samples, "rect": list(rect), "seed": args.seed,
                      "margin_tol": rep["margin_tol"]}, "scan": rep, "control": ctrl, "pass": ok}
    return out, 0 if ok else 1


def cmd_scan_strata(args):
    rep = scan_strata(args.d, args.samples, args.seed)
    out = {"config": {"d": args.d, "samples": args.samples, "seed": args.seed, "tol": "exact"}, "report": rep}
    return out, 1 if rep["pass"] is False else 0


def cmd_centroid_line(args):
    P = iio.parse_coeffs(args.coeffs, exact=not args.float)
    alphas = iio.parse_alphas(args.alphas)
    L = centroid_line(P, alphas)
    out = {"config": {"alphas": [str(a) for a in alphas], "tol": args.tol}, "line": L.to_json(),
           "collinear": bool(L.degenerate or L.max_residual < args.tol)}
    return out, 0


def cmd_emit_figure(args):
    out_base = args.out or f"{args.kind}{args.n}"
    summary = emit_figure(args.kind, args.n, out_base)
    summary["config"] = {"kind": args.kind, "n": args.n, "tol": 1e-15}
    return summary, 0


def _read_json(path):
    if path == "-":
        return iio.loads(sys.stdin.read(), "<stdin>")
    with open(path) as fh:
        return iio.loads(fh.read(), path)


def build_parser():
    p = argparse.ArgumentParser(prog="isodyn", description="Isodynamic points of polynomials and rational functions.")
    p.add_argument("--version", action="version", version=f"isodyn {__version__}")
    p.add_argument("-o", "--output", help="write the JSON report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    iso = sub.add_parser("iso", help="isodynamic divisor of one input").add_subparsers(dest="what", required=True)
    for name, fn in (("poly", cmd_iso_poly), ("rat", cmd_iso_rat)):
        q = iso.add_parser(name, help=f"divisor of a {'polynomial' if name == 'poly' else 'ratio p/q'}")
        if name == "poly":
            q.add_argument("--coeffs", help='coefficients, highest power first, e.g. "1,0,0,-1"')
            q.add_argument("--d", type=int, help="form degree if larger than the degree of P")
        else:
            q.add_argument("--p", help="numerator coefficients, highest power first")
            q.add_argument("--q", help="denominator coefficients, highest power first")
        q.add_argument("--json", help="input JSON file ('-' for stdin)")
        q.add_argument("--float", action="store_true", help="read coefficients as doubles instead of rationals")
        q.add_argument("--pipeline", choices=["discriminant", "critical"], default="discriminant")
        q.add_argument("--tol", type=float, default=1e-10, help="root clustering tolerance")
        q.set_defaults(func=fn)
    q = iso.add_parser("triangle", help="isodynamic points and X(26613) of a triangle")
    q.add_argument("--vertices", required=True, help='"x1,y1 x2,y2 x3,y3"')
    q.add_argument("--tol", type=float, default=1e-9)
    q.set_defaults(func=cmd_iso_triangle)

    chk = sub.add_parser("check", help="numeric verification suites").add_subparsers(dest="what", required=True)
    q = chk.add_parser("equivariance", help="Möbius equivariance on random inputs")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--pole-degree", type=int, help="default: run 0, 1 and 2")
    q.add_argument("--trials", type=int, default=200)
    q.add_argument("--seed", type=int, default=DEFAULT_SEED)
    q.add_argument("--tol", type=float, default=1e-7)
    q.add_argument("--kappa", type=float, default=4.0, help="condition-number cap for random maps")
    q.set_defaults(func=cmd_check_equivariance)
    q = chk.add_parser("crosscheck", help="discriminant route versus critical values")
    q.add_argument("--trials", type=int, default=200)
    q.add_argument("--max-d", type=int, default=6)
    q.add_argument("--max-pole", type=int, default=2)
    q.add_argument("--seed", type=int, default=DEFAULT_SEED)
    q.add_argument("--tol", type=float, default=1e-8)
    q.set_defaults(func=cmd_check_crosscheck)
    q = chk.add_parser("separation", help="scan for circles separating roots from isodynamic points")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--samples", type=int, default=1000)
    q.add_argument("--rect", default="-1,1,-1,1", help="xmin,xmax,ymin,ymax")
    q.add_argument("--seed", type=int, default=DEFAULT_SEED)
    q.set_defaults(func=cmd_check_separation)

    scan = sub.add_parser("scan", help="stratification scans").add_subparsers(dest="what", required=True)
    q = scan.add_parser("strata", help="meta-discriminant factorization at random rational points")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--samples", type=int, default=10)
    q.add_argument("--seed", type=int, default=DEFAULT_SEED)
    q.set_defaults(func=cmd_scan_strata)

    q = sub.add_parser("centroid-line", help="centroids of the alpha-polar discriminant zeros")
    q.add_argument("--coeffs", required=True, help="coefficients, highest power first")
    q.add_argument("--alphas", default="-5:5", help='"lo:hi" or comma list')
    q.add_argument("--float", action="store_true")
    q.add_argument("--tol", type=float, default=1e-8, help="collinearity tolerance")
    q.set_defaults(func=cmd_centroid_line)

    emit = sub.add_parser("emit", help="figure emitters").add_subparsers(dest="what", required=True)
    q = emit.add_parser("figure", help="CSV and SVG of roots and isodynamic points")
    q.add_argument("kind", choices=["legendre", "laguerre"])
    q.add_argument("n", type=int)
    q.add_argument("--out", help="output path stem (default: <kind><n>)")
    q.set_defaults(func=cmd_emit_figure)
    return p


def _join_negative_values(argv, flags=("--rect", "--alphas", "--coeffs", "--p", "--q", "--vertices")):
    # argparse reads "-5,5,..." as an option; glue such values to their flag
    out, k = [], 0
    while k < len(argv):
        if argv[k] in flags and k + 1 < len(argv) and argv[k + 1].startswith("-"):
            out.append(f"{argv[k]}={argv[k + 1]}")
            k += 2
        else:
            out.append(argv[k])
            k += 1
    return out


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_negative_values(argv))
    try:
        out, code = args.func(args)
    except (iio.InputError, IsodynamicUndefined) as exc:
        print(f"isodyn: invalid input: {exc}", file=sys.stderr)
        return 2
    except IsodynError as exc:
        print(f"isodyn: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = iio.dumps(out)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
