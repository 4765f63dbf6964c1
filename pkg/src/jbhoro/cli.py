"""Command line front end.

Commands operate on the JSON formats of jsonio and print a single JSON
object to stdout.  Exit codes: 0 success, 1 verification property failure,
2 usage or parse error, 3 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import jsonio, verify
from .compactify import phi_boundary, phi_interior
from .errors import NonConvergenceError
from .exp_bridge import exp_extend
from .horo_v import detour_cost_v, horofunction_v_eval
from .metric_d import caratheodory_distance, detour_cost_d, horofunction_d_eval
from .spectral import spectral_decompose

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_USAGE = 2
EXIT_NONCONVERGENCE = 3


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _cmd_decompose(args) -> int:
    space = jsonio.space_from_json(jsonio.load_json(args.space)) if args.space else None
    x = jsonio.element_from_json(jsonio.load_json(args.input), space=space)
    _emit(jsonio.frame_to_json(spectral_decompose(x)))
    return EXIT_OK


def _cmd_verify(args) -> int:
    kmax_exp = max(3, int(math.log2(args.kmax)))
    report = verify.run_report(args.suite, args.trials, args.seed, args.tol,
                               kmax_exp=kmax_exp,
                               with_timing=not args.no_timestamp)
    _emit(report)
    return EXIT_OK if report["passed"] else EXIT_PROPERTY_FAILURE


def _cmd_dist(args) -> int:
    x = jsonio.element_from_json(jsonio.load_json(args.x))
    y = jsonio.element_from_json(jsonio.load_json(args.y), space=x.space)
    _emit({"rho": caratheodory_distance(x, y)})
    return EXIT_OK


def _cmd_horo(args) -> int:
    at = jsonio.element_from_json(jsonio.load_json(args.at))
    if args.mode == "eval-d":
        datum = jsonio.datum_d_from_json(jsonio.load_json(args.datum))
        kmax_exp = max(3, int(math.log2(args.kmax)))
        if args.method == "both":
            closed = horofunction_d_eval(datum, at, "induced_norm")
            ladder, diag = horofunction_d_eval(datum, at, "extrapolate",
                                               kmax_exp=kmax_exp, diagnostics=True)
            _emit({"value": closed, "extrapolated": ladder,
                   "gap": abs(closed - ladder), "ladder_ks": diag["ks"]})
        else:
            value, diag = horofunction_d_eval(datum, at, args.method,
                                              kmax_exp=kmax_exp, diagnostics=True)
            out = {"value": value, "method": args.method}
            if args.method == "extrapolate":
                out["ladder_ks"] = diag["ks"]
            _emit(out)
    else:
        datum = jsonio.datum_v_from_json(jsonio.load_json(args.datum))
        _emit({"value": horofunction_v_eval(datum, at), "method": "eigenvalue"})
    return EXIT_OK


def _cmd_phi(args) -> int:
    if (args.input is None) == (args.datum is None):
        print("phi needs exactly one of --input (interior) or --datum (boundary)",
              file=sys.stderr)
        return EXIT_USAGE
    if args.input:
        point = phi_interior(jsonio.element_from_json(jsonio.load_json(args.input)))
    else:
        point = phi_boundary(jsonio.datum_v_from_json(jsonio.load_json(args.datum)))
    _emit(jsonio.dual_point_to_json(point))
    return EXIT_OK


def _cmd_detour(args) -> int:
    if args.side == "v":
        h1 = jsonio.datum_v_from_json(jsonio.load_json(args.first))
        h2 = jsonio.datum_v_from_json(jsonio.load_json(args.second))
        fwd, bwd = detour_cost_v(h1, h2), detour_cost_v(h2, h1)
    else:
        h1 = jsonio.datum_d_from_json(jsonio.load_json(args.first))
        h2 = jsonio.datum_d_from_json(jsonio.load_json(args.second))
        fwd = detour_cost_d(h1, h2, args.method)
        bwd = detour_cost_d(h2, h1, args.method)
    total = fwd + bwd
    _emit({
        "finite": total.finite,
        "H": fwd.value if fwd.finite else None,
        "H_reverse": bwd.value if bwd.finite else None,
        "delta": total.value if total.finite else None,
        "side": args.side,
    })
    return EXIT_OK


def _cmd_exp_extend(args) -> int:
    h = jsonio.datum_v_from_json(jsonio.load_json(args.datum))
    _emit(jsonio.datum_d_to_json(exp_extend(h)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jbh",
        description="Caratheodory-distance geometry and horofunction "
                    "compactification of matrix unit balls")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="spectral frame of an element")
    p.add_argument("--input", required=True, help="element JSON file")
    p.add_argument("--space", help="optional space JSON file to validate against")
    p.set_defaults(fn=_cmd_decompose)

    p = sub.add_parser("verify", help="run a randomized verification suite")
    p.add_argument("--suite", required=True,
                   choices=list(verify.SUITE_NAMES) + ["all"])
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None,
                   help="override every property tolerance")
    p.add_argument("--kmax", type=int, default=2 ** 20,
                   help="largest k of the approach-sequence ladders")
    p.add_argument("--no-timestamp", action="store_true",
                   help="omit wall-clock fields for byte-identical reports")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("dist", help="Caratheodory distance between two points")
    p.add_argument("x", help="element JSON file")
    p.add_argument("y", help="element JSON file")
    p.set_defaults(fn=_cmd_dist)

    p = sub.add_parser("horo", help="evaluate a horofunction")
    hsub = p.add_subparsers(dest="mode", required=True)
    pd = hsub.add_parser("eval-d", help="ball-side closed form or sequence limit")
    pd.add_argument("--datum", required=True, help="D boundary datum JSON")
    pd.add_argument("--at", required=True, help="evaluation point JSON")
    pd.add_argument("--method", default="induced_norm",
                    choices=["induced_norm", "extrapolate", "both"])
    pd.add_argument("--kmax", type=int, default=2 ** 20)
    pd.set_defaults(fn=_cmd_horo)
    pv = hsub.add_parser("eval-v", help="normed-space eigenvalue formula")
    pv.add_argument("--datum", required=True, help="V boundary datum JSON")
    pv.add_argument("--at", required=True, help="evaluation point JSON")
    pv.set_defaults(fn=_cmd_horo)

    p = sub.add_parser("phi", help="map a point or boundary datum into the dual ball")
    p.add_argument("--input", help="element JSON (interior map)")
    p.add_argument("--datum", help="V boundary datum JSON (boundary map)")
    p.set_defaults(fn=_cmd_phi)

    p = sub.add_parser("detour", help="detour cost and distance of two boundary data")
    p.add_argument("first", help="boundary datum JSON")
    p.add_argument("second", help="boundary datum JSON")
    p.add_argument("--side", default="v", choices=["v", "d"])
    p.add_argument("--method", default="closed", choices=["closed", "limit"],
                   help="ball-side method (ignored for --side v)")
    p.set_defaults(fn=_cmd_detour)

    p = sub.add_parser("exp-extend", help="extend a normed-space datum to the ball")
    p.add_argument("--datum", required=True, help="V boundary datum JSON")
    p.set_defaults(fn=_cmd_exp_extend)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except NonConvergenceError as exc:
        print(f"numeric non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
