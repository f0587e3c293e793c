"""Command-line interface: ``torus-extremal {eval,grid,oracle,verify}``.

Machine output (JSON or CSV) goes to stdout, human summaries to stderr.
Complex numbers are written ``re,im``; coordinates of a point are separated by
spaces.
"""

import argparse
import json
import math
import re
import sys

from . import formulas as F
from . import grids as G
from .geometry import sigma_21
from .oracle import (
    OracleConfig,
    OracleError,
    OracleUnbounded,
    convergence_sweep,
    interval_samples,
    projected_set_samples,
    simplex_samples,
    total_degree,
    trapezoid_samples,
)
from .variety import LeafIndex, TorusParams, leaf_point, membership_residual, param_point, sample_real_torus
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_OFF_VARIETY = 2
EXIT_IO = 3
EXIT_CHECK_FAILED = 4
EXIT_UNBOUNDED = 5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-1,0.5" and "-1,1" through as values rather than option flags
        self._negative_number_matcher = re.compile(r"^-(\d|\.\d)")

    # argparse exits with status 2 on bad input; 2 is reserved for off-variety points
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_complex(text):
    parts = text.split(",")
    if len(parts) == 1:
        parts.append("0")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected re,im but got {text!r}")
    try:
        z = complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected re,im but got {text!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise argparse.ArgumentTypeError(f"non-finite value {text!r}")
    return z


def parse_leaf(text):
    try:
        a, b = (int(s) for s in text.split(","))
        return LeafIndex(a, b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a leaf like +1,-1 but got {text!r}") from None


def parse_range(text):
    try:
        lo, hi = (float(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected min,max but got {text!r}") from None
    return lo, hi


def parse_degrees(text):
    try:
        ks = [int(s) for s in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a list like 2,4,8 but got {text!r}") from None
    if any(k < 1 for k in ks):
        raise argparse.ArgumentTypeError("degrees must be positive")
    return ks


def _cjson(z):
    return [z.real, z.imag]


def _emit(obj):
    sys.stdout.write(json.dumps(obj) + "\n")


def _params(args):
    try:
        return TorusParams(r=args.r, R=args.R)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _torus_point(args, p):
    if args.point is not None and (args.theta is not None or args.phi is not None):
        raise UsageError("give either --point or --theta/--phi, not both")
    if args.point is not None:
        if len(args.point) == 3:
            return tuple(args.point)
        if len(args.point) == 2:
            return leaf_point(p, args.point[0], args.point[1], args.leaf)
        raise UsageError("--point takes three coordinates, or two together with --leaf")
    if args.theta is None or args.phi is None:
        raise UsageError("missing --point (or --theta and --phi)")
    try:
        return param_point(p, args.theta, args.phi)
    except OverflowError as exc:
        raise UsageError(str(exc)) from None


# -- eval --------------------------------------------------------------------

def cmd_eval(args):
    p = _params(args)
    z = _torus_point(args, p)
    res = membership_residual(p, z)
    try:
        ev = F.v_torus(p, z)
    except F.OffVarietyError:
        _emit({"error": "OFF_VARIETY", "residual": res, "point": [_cjson(c) for c in z]})
        print(f"point is off the torus variety (residual {res:.3e})", file=sys.stderr)
        return EXIT_OFF_VARIETY
    _emit({
        "value": ev.value,
        "active_branch": ev.active_branch.value,
        "h_argument": ev.h_argument,
        "residual": res,
    })
    return EXIT_OK


# -- grid --------------------------------------------------------------------

def _grid_spec(args):
    if args.preset:
        specs = G.preset_specs(args.nx or 41)
        if args.preset not in specs:
            raise UsageError(f"unknown preset {args.preset!r}; choose from {', '.join(specs)}")
        return specs[args.preset]
    p = _params(args)
    chart = G.Chart.LEAF_REAL_Z1Z2 if args.chart == "real" else G.Chart.LEAF_COMPLEX_Z1
    default_y = (-4.0, 4.0) if chart is G.Chart.LEAF_REAL_Z1Z2 else (-3.0, 3.0)
    try:
        return G.GridSpec(
            chart=chart,
            leaf=args.leaf,
            x_range=args.x_range or (-4.0, 4.0),
            y_range=args.y_range or default_y,
            nx=args.nx or 41,
            ny=args.ny or args.nx or 41,
            params=p,
            overlay=args.overlay,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_grid(args):
    spec = _grid_spec(args)
    g = G.evaluate_grid(spec, workers=args.threads)
    fmt = args.format
    try:
        if fmt == "svg":
            text = G.grid_to_svg(g, args.color_map)
        elif fmt == "json":
            text = G.grid_to_json(g)
        else:
            text = G.grid_to_csv(g)
        if args.out:
            G._write_text(args.out, text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    s = g.summary()
    print(
        f"{spec.nx}x{spec.ny} grid, {len(spec.leaves)} sheet(s): min {s['min']}, max {s['max']}, "
        f"zero cells {s['zero_cells']}, flagged {s['flagged_cells']}",
        file=sys.stderr,
    )
    if args.out:
        _emit(s)
    return EXIT_OK


# -- oracle ------------------------------------------------------------------

#: Upper end of the admissible gap, times k.  For the interval this is the
#: Chebyshev bound; the other targets get twice it, which covers every case
#: measured.  Polygon deflation and the h^-k remainder of T_k are added on top.
GAP_CONSTANTS = {
    "interval": math.log(2.0),
    "simplex": 2.0 * math.log(2.0),
    "trapezoid": 2.0 * math.log(2.0),
    "cylinder": 2.0 * math.log(2.0),
    "torus": 2.0 * math.log(2.0),
}
#: Sampling slack allowed below zero.
GAP_FLOOR = -0.05


def gap_bracket(target, k, directions, value):
    """Admissible range of ``formula - lower`` at degree ``k`` for a formula value ``value``."""
    if value <= 0:
        return GAP_FLOOR, math.inf
    remainder = -math.log1p(-math.exp(-2.0 * k * value))
    hi = (GAP_CONSTANTS[target] - math.log(math.cos(math.pi / directions)) + remainder) / k
    return GAP_FLOOR, hi + 1e-9


def _oracle_problem(args, p):
    t = args.target
    pt = args.point
    n = args.samples
    if t == "torus":
        z = _torus_point(args, p)
        if membership_residual(p, z) > F.API_RESIDUAL_TOL:
            raise F.OffVarietyError(membership_residual(p, z))
        return sample_real_torus(p, n or 48, n or 48), total_degree(3), z, F.v_torus(p, z).value
    if pt is None:
        raise UsageError("missing --point")
    need = 1 if t == "interval" else 2
    if len(pt) != need:
        raise UsageError(f"target {t} takes {need} coordinate(s) in --point")
    if t == "interval":
        return interval_samples(n or 201), total_degree(1), tuple(pt), F.v_interval(pt[0])
    if t == "simplex":
        return simplex_samples(n or 40), total_degree(2), tuple(pt), F.v_simplex(pt)
    if t == "trapezoid":
        return trapezoid_samples(p, n or 30, n or 30), total_degree(2), tuple(pt), F.v_trapezoid(p, pt).value
    # cylinder: the projected set in (w1, w3) with the Sigma_{2,1} degree
    return projected_set_samples(p, n or 30, n or 30), sigma_21(), tuple(pt), F.v_piE(p, pt)


def cmd_oracle(args):
    p = _params(args)
    try:
        samples, poly, z, formula = _oracle_problem(args, p)
    except F.OffVarietyError as exc:
        _emit({"error": "OFF_VARIETY", "residual": exc.residual})
        print(str(exc), file=sys.stderr)
        return EXIT_OFF_VARIETY
    try:
        cfg = OracleConfig(
            degree=args.degrees[-1],
            polytope=poly,
            directions=args.directions,
            objective_directions=args.objective_directions,
        )
        ests = convergence_sweep(cfg, samples, z, args.degrees)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    except OracleUnbounded as exc:
        _emit({"error": exc.code})
        print(f"{exc}\nhint: raise --samples or lower --degrees", file=sys.stderr)
        return EXIT_UNBOUNDED
    except OracleError as exc:
        _emit({"error": exc.code})
        print(str(exc), file=sys.stderr)
        return EXIT_CHECK_FAILED
    rows, ok = [], True
    for e in ests:
        gap = formula - e.lower_value
        lo, hi = gap_bracket(args.target, e.degree, args.directions, formula)
        inside = lo <= gap <= hi
        ok &= inside
        rows.append({
            "k": e.degree,
            "lower_value": e.lower_value,
            "formula_value": formula,
            "gap": gap,
            "bracket": [lo, hi if math.isfinite(hi) else None],
            "within_bracket": inside,
        })
        print(f"k={e.degree:3d}  lower {e.lower_value:.6f}  formula {formula:.6f}  gap {gap:+.6f}"
              f"  [{lo:+.3f}, {hi:+.3f}] {'ok' if inside else 'OUT'}", file=sys.stderr)
    _emit(rows)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# -- verify ------------------------------------------------------------------

def cmd_verify(args):
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    results = run_suite(args.suite, args.seed)
    failed = [r.name for r in results if not r.passed]
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail} ({r.seconds:.2f}s)", file=sys.stderr)
    _emit({
        "suite": args.suite,
        "seed": args.seed,
        "results": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
        "failed": failed,
    })
    if failed:
        print("failed invariants: " + ", ".join(failed), file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def _add_torus(sp):
    sp.add_argument("--R", type=float, default=2.0, help="major radius (default 2)")
    sp.add_argument("--r", type=float, default=1.0, help="minor radius (default 1)")


def _add_point(sp, nargs="+"):
    sp.add_argument("--point", type=parse_complex, nargs=nargs, metavar="RE,IM")
    sp.add_argument("--theta", type=parse_complex, metavar="RE,IM")
    sp.add_argument("--phi", type=parse_complex, metavar="RE,IM")
    sp.add_argument("--leaf", type=parse_leaf, default=LeafIndex(1, 1), metavar="OUTER,Z3",
                    help="leaf signs used with a two-coordinate --point (default +1,+1)")


def build_parser():
    ap = _Parser(prog="torus-extremal", description="Extremal function of the real torus.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate the extremal function at a point")
    _add_torus(e)
    _add_point(e)
    e.set_defaults(func=cmd_eval)

    g = sub.add_parser("grid", help="evaluate on a chart grid and write CSV, JSON or SVG")
    _add_torus(g)
    g.add_argument("--preset", help="use one of the built-in grid presets")
    g.add_argument("--chart", choices=("real", "complex"), default="real")
    g.add_argument("--leaf", type=parse_leaf, default=LeafIndex(1, 1), metavar="OUTER,Z3")
    g.add_argument("--overlay", action="store_true", help="also evaluate the companion leaf")
    g.add_argument("--x-range", type=parse_range, metavar="MIN,MAX")
    g.add_argument("--y-range", type=parse_range, metavar="MIN,MAX")
    g.add_argument("--nx", type=int)
    g.add_argument("--ny", type=int)
    g.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    g.add_argument("--color-map", choices=G.COLOR_MAPS, default="viridis")
    g.add_argument("--out", help="output file (default stdout)")
    g.add_argument("--threads", type=int, default=1, help="worker processes for row evaluation")
    g.set_defaults(func=cmd_grid)

    o = sub.add_parser("oracle", help="compare the closed form with the polynomial LP lower bound")
    _add_torus(o)
    o.add_argument("--target", choices=tuple(GAP_CONSTANTS), required=True)
    _add_point(o)
    o.add_argument("--degrees", type=parse_degrees, default=[2, 4, 6])
    o.add_argument("--samples", type=int, help="samples per axis of the compact set")
    o.add_argument("--directions", type=int, default=32)
    o.add_argument("--objective-directions", type=int, default=16)
    o.add_argument("--threads", type=int, default=1, help="accepted for symmetry; the LP runs single-threaded")
    o.set_defaults(func=cmd_oracle)

    v = sub.add_parser("verify", help="run the invariant suites")
    v.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)}")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--threads", type=int, default=1)
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        ap.error("--threads must be at least 1")
    try:
        return args.func(args)
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"torus-extremal {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
