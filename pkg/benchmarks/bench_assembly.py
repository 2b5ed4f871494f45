"""Far-field assembly and potential evaluation: numba kernels vs the numpy fallback.

Usage::

    python3 benchmarks/bench_assembly.py [--k 10 20 40] [--hk 0.5] [--repeat 2]

Both backends run in one process (``assemble(..., backend=...)``), so numba
must be installed and not disabled. The first numba call compiles (or loads
the on-disk cache); it is timed separately and excluded from the table.
"""

import argparse
import time

import numpy as np

from helmbem._accel import USE_NUMBA
from helmbem.bem import assemble, build_space, panel_count
from helmbem.circle_spectral import Formulation
from helmbem.curves import parse_curve
from helmbem.scattering import layer_potentials


def _best(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--curve", default="kite")
    ap.add_argument("--k", type=float, nargs="+", default=[10.0, 20.0, 40.0])
    ap.add_argument("--hk", type=float, default=0.5)
    ap.add_argument("--repeat", type=int, default=2)
    args = ap.parse_args(argv)
    if not USE_NUMBA:
        raise SystemExit("numba is unavailable or disabled (HELMBEM_DISABLE_NUMBA); nothing to compare")

    curve = parse_curve(args.curve)
    warm = build_space(curve, 8, 0, hk=1.0)
    t0 = time.perf_counter()
    assemble(curve, 1.0, Formulation.INDIRECT, warm, backend="numba")
    layer_potentials(warm, 1.0, np.ones(warm.N), np.array([[5.0], [0.0]]), backend="numba")
    print(f"numba warm-up (compile or cache load): {time.perf_counter() - t0:.2f} s")

    print(f"{'k':>6} {'N':>6} {'far numba s':>12} {'far numpy s':>12} {'speedup':>8} "
          f"{'max |diff|':>11} {'pot numba s':>12} {'pot numpy s':>12}")
    rng = np.random.default_rng(0)
    for k in args.k:
        space = build_space(curve, panel_count(curve, k, args.hk), 0, hk=args.hk)
        tn, sn = _best(lambda: assemble(curve, k, Formulation.INDIRECT, space, backend="numba"), args.repeat)
        tp, sp = _best(lambda: assemble(curve, k, Formulation.INDIRECT, space, backend="numpy"), args.repeat)
        far_n = sn.timings["far"]
        far_p = sp.timings["far"]
        diff = float(np.max(np.abs(sn.matrix - sp.matrix)))
        coeffs = rng.standard_normal(space.N) + 1j * rng.standard_normal(space.N)
        th = np.linspace(0.0, 2.0 * np.pi, 400, endpoint=False)
        pts = 4.0 * np.array([np.cos(th), np.sin(th)])
        pn, _ = _best(lambda: layer_potentials(space, k, coeffs, pts, backend="numba"), args.repeat)
        pp, _ = _best(lambda: layer_potentials(space, k, coeffs, pts, backend="numpy"), args.repeat)
        print(f"{k:6g} {space.N:6d} {far_n:12.3f} {far_p:12.3f} {far_p / far_n:8.2f} "
              f"{diff:11.2e} {pn:12.3f} {pp:12.3f}")


if __name__ == "__main__":
    main()
