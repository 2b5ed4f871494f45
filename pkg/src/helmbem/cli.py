"""Command-line interface: ``helmbem {eigs,solve,field,sweep,verify}``.

Tables go to ``--out`` (or stdout) as CSV or JSON; progress and summaries go
to stderr. ``sweep`` and ``verify`` exit with status 0 iff all asserted
checks pass.
"""

import argparse
import io
import json
import math
import sys
import warnings

import numpy as np

from . import harness
from ._accel import backend_name
from .bem import build_space, galerkin_error, panel_count
from .circle_spectral import Formulation, circle_symbols, default_truncation, exact_density
from .curves import parse_curve
from .errors import QuadratureWarning
from .harness import SweepConfig, VerifyConfig, atomic_write, load_config
from .scattering import IncidentField, is_unit_circle, reconstruct_field, solve_scattering
from .specfun import bessel_table


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------
def _num(v):
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return "%.17g" % v


def _table_text(columns, rows, fmt):
    if fmt == "json":
        recs = []
        for row in rows:
            rec = {}
            for c, v in zip(columns, row):
                if isinstance(v, float) and not math.isfinite(v):
                    v = None
                rec[c] = v
            recs.append(rec)
        return json.dumps(recs, indent=1) + "\n"
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_num(v) for v in row) + "\n")
    return buf.getvalue()


def _emit(columns, rows, fmt, out):
    text = _table_text(columns, rows, fmt)
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _log(msg):
    print(msg, file=sys.stderr)


def _float_list(text):
    return [float(x) for x in str(text).replace(",", " ").split()]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------
def cmd_eigs(args):
    k = args.k
    M = args.max_mode if args.max_mode is not None else int(math.ceil(4 * k))
    lam = circle_symbols(float(k), M).lam
    rows = [(m, float(lam[m].real), float(lam[m].imag), float(abs(lam[m] - 1.0) * m / k))
            for m in range(M + 1)]
    _emit(("m", "Re(lambda)", "Im(lambda)", "abs(lambda-1)*m/k"), rows, args.format, args.out)
    return 0


def _space_from_args(args, curve):
    if args.n_panels is not None:
        return build_space(curve, args.n_panels, args.p, hk=curve.perimeter * args.k / args.n_panels)
    return build_space(curve, panel_count(curve, args.k, args.hk), args.p, hk=args.hk)


def _solve(args):
    curve = parse_curve(args.curve)
    space = _space_from_args(args, curve)
    incident = IncidentField.plane_wave(args.k, args.theta)
    sol = solve_scattering(curve, incident, args.formulation, space)
    _log(f"curve={args.curve} k={args.k:g} N={space.N} h={space.h:.6g} hk={space.h * args.k:.4g} "
         f"formulation={sol.formulation.value} backend={backend_name()}")
    return curve, space, sol


def cmd_solve(args):
    curve, space, sol = _solve(args)
    if is_unit_circle(curve):
        exact = exact_density(sol.formulation, args.k, args.theta, default_truncation(args.k, space.N))
        err, best = galerkin_error(exact, sol.density)
        _log(f"relative L2 error {err / exact.norm():.6e}, quasi-optimality ratio {err / best:.6f}")
    c = sol.density.coeffs
    rows = [(i // space.P, i % space.P, float(c[i].real), float(c[i].imag)) for i in range(space.N)]
    _emit(("panel", "dof", "Re", "Im"), rows, args.format, args.out)
    return 0


def _parse_grid(text):
    parts = text.split(":")
    if len(parts) != 6:
        raise argparse.ArgumentTypeError("grid must be nx:ny:xmin:xmax:ymin:ymax")
    nx, ny = int(parts[0]), int(parts[1])
    if nx < 1 or ny < 1:
        raise argparse.ArgumentTypeError("grid needs nx, ny >= 1")
    return nx, ny, *(float(p) for p in parts[2:])


def cmd_field(args):
    nx, ny, x0, x1, y0, y1 = args.grid
    curve, space, sol = _solve(args)
    X, Y = np.meshgrid(np.linspace(x0, x1, nx), np.linspace(y0, y1, ny))
    pts = np.array([X.ravel(), Y.ravel()])
    inside = curve.contains(pts)
    u = np.full(pts.shape[1], np.nan + 1j * np.nan)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", QuadratureWarning)
        if np.any(~inside):
            u[~inside] = reconstruct_field(sol, pts[:, ~inside])
    for w in caught:
        _log(f"warning: {w.message}")
    rows = [(float(pts[0, i]), float(pts[1, i]), float(u[i].real), float(u[i].imag), int(inside[i]))
            for i in range(pts.shape[1])]
    _emit(("x", "y", "ReU", "ImU", "inside_flag"), rows, args.format, args.out)
    return 0


def cmd_sweep(args):
    overrides = {
        "curve": args.curve, "formulation": args.formulation, "p": args.p,
        "hk_values": _float_list(args.hk) if args.hk else None,
        "k_values": _float_list(args.k) if args.k else None,
        "theta": args.theta, "seed": args.seed, "output": args.out,
        "contrast": True if args.contrast else None,
        "condition": False if args.no_condition else None,
    }
    cfg = load_config(SweepConfig, args.config, overrides)
    records = harness.run_sweep(cfg, progress=None if args.quiet else _log)
    checks = harness.sweep_checks(records, cfg)
    for c in checks:
        _log(c.line())
    if not cfg.output:
        sys.stdout.write(harness.records_csv(records))
    ok = all(c.passed for c in checks if c.asserted)
    _log(f"overall: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def cmd_verify(args):
    overrides = {
        "k_values": _float_list(args.k) if args.k else None,
        "plateau_end": args.plateau_end, "support_end": args.support_end,
        "epsilon": args.epsilon, "seed": args.seed, "output": args.out,
    }
    cfg = load_config(VerifyConfig, args.config, overrides)
    report = harness.run_verification(cfg)
    sys.stdout.write(report.to_json() if args.format == "json" else report.to_text())
    return 0 if report.passed else 1


def cmd_specfun_table(args):
    xs = _float_list(args.x)
    rows = []
    for x in xs:
        t = bessel_table(args.max_order, x)
        J, Jp, H = t.J(), t.Jp(), t.H()
        for m in range(args.max_order + 1):
            rows.append((m, x, float(J[m]), float(Jp[m]), float(H[m].real), float(H[m].imag)))
    _emit(("m", "x", "J", "J'", "ReH", "ImH"), rows, args.format, args.out)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------
def _add_problem_args(p):
    p.add_argument("--curve", default="circle", help="circle, ellipse:a:b or kite (default circle)")
    p.add_argument("--k", type=float, required=True, help="wavenumber")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--hk", type=float, default=0.5, help="target h*k (default 0.5)")
    g.add_argument("--n-panels", type=int, default=None, help="panel count (overrides --hk)")
    p.add_argument("--p", type=int, default=0, help="polynomial degree (default 0)")
    p.add_argument("--formulation", choices=[f.value for f in Formulation], default="indirect")
    p.add_argument("--theta", type=float, default=0.0, help="incidence angle in radians")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output file (default stdout)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="helmbem",
        description="Galerkin BEM for 2-d sound-soft Helmholtz scattering: wavenumber sweeps and checks.")
    sub = parser.add_subparsers(dest="command", metavar="{eigs,solve,field,sweep,verify}")
    sub.required = True

    p = sub.add_parser("eigs", help="eigenvalues lambda_m(k) of 2A_k on the unit circle")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--max-mode", type=int, default=None, help="largest |m| (default ceil(4k))")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_eigs)

    p = sub.add_parser("solve", help="boundary density for a plane wave")
    _add_problem_args(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("field", help="total field on a grid")
    _add_problem_args(p)
    p.add_argument("--grid", type=_parse_grid, required=True, help="nx:ny:xmin:xmax:ymin:ymax")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("sweep", help="k-sweep at fixed hk (JSON config, flags override)")
    p.add_argument("--config", default=None, help="JSON file with SweepConfig fields")
    p.add_argument("--curve", default=None)
    p.add_argument("--formulation", choices=("direct", "indirect", "both"), default=None)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--hk", default=None, help="comma-separated hk values")
    p.add_argument("--k", default=None, help="comma-separated k values")
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--contrast", action="store_true", help="add the h k^{4/3} = const series")
    p.add_argument("--no-condition", action="store_true", help="skip the condition-norm estimate")
    p.add_argument("--out", default=None, help="output directory (CSV, JSON, .dat)")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="unit-circle verification suite")
    p.add_argument("--config", default=None, help="JSON file with VerifyConfig fields")
    p.add_argument("--k", default=None, help="comma-separated k values")
    p.add_argument("--plateau-end", type=float, default=None)
    p.add_argument("--support-end", type=float, default=None)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None, help="directory for verify.txt / verify.json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("specfun-table")  # hidden: offline validation dump
    p.add_argument("--x", required=True, help="comma-separated arguments")
    p.add_argument("--max-order", type=int, default=10)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_specfun_table)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, ArithmeticError) as exc:
        _log(f"error: {exc}")
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
