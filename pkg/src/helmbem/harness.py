"""Wavenumber sweeps at fixed ``hk``, the unit-circle verification suite and result files.

A sweep solves the plane-wave problem for every ``(k, hk)`` cell and records
the relative density error, the best-approximation error from the same space
and their ratio (the measured quasi-optimality constant). On the unit circle
the exact density comes from the Fourier oracle; on other curves the
reference is the solution on a mesh refined ``reference_refinement`` times.
"""

import csv
import dataclasses
import io
import json
import math
import os
import tempfile
import time
import traceback
from dataclasses import dataclass, field

import numpy as np

from .bem import assemble, build_space, estimate_qo_condition_norm, galerkin_error, panel_count
from .circle_spectral import (
    CutoffSpec,
    Formulation,
    creg_ratio,
    cutoff_leaks,
    cutoff_smoothing_constant,
    default_truncation,
    dgs_min_real,
    exact_density,
    hf_cutoff_norms,
    hf_multiplier_norms,
    lambda_tail_constant,
    verify_inverse_decomposition,
)
from .curves import parse_curve
from .scattering import IncidentField, is_unit_circle, solve_scattering

CSV_COLUMNS = ("k", "h", "N", "rel_err", "best_approx", "qo_ratio", "cond_norm", "creg_ratio", "ms")

SERIES_HK = "hk"          # h k fixed
SERIES_HK43 = "hk43"      # h k^{4/3} fixed (contrast)


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------
def _formulations(text):
    if str(text).lower() == "both":
        return [Formulation.DIRECT, Formulation.INDIRECT]
    return [Formulation.parse(text)]


@dataclass
class SweepConfig:
    """Parameters of a wavenumber sweep.

    ``formulation`` is ``"direct"``, ``"indirect"`` or ``"both"``. With
    ``contrast`` set, every ``hk`` series is repeated with ``h k^{4/3}`` held
    at its value for the smallest ``k``.
    """

    curve: str = "circle"
    formulation: str = "both"
    p: int = 0
    hk_values: list = field(default_factory=lambda: [0.5])
    k_values: list = field(default_factory=lambda: [10.0, 20.0, 40.0, 80.0, 160.0])
    theta: float = 0.0
    tolerances: dict = field(default_factory=lambda: {"qo_max": 4.5, "flat_factor": 1.5})
    output: str | None = None
    seed: int = 0
    contrast: bool = False
    condition: bool = True
    reference_refinement: int = 4
    k_min: float = 2.0

    def validate(self):
        parse_curve(self.curve)
        _formulations(self.formulation)
        if int(self.p) != self.p or self.p < 0:
            raise ValueError("p must be a non-negative integer")
        if not self.k_values or not self.hk_values:
            raise ValueError("k_values and hk_values must be non-empty")
        if min(self.k_values) < self.k_min:
            raise ValueError(f"all k must be >= k_min = {self.k_min}")
        if min(self.hk_values) <= 0:
            raise ValueError("hk values must be positive")
        if self.reference_refinement < 2:
            raise ValueError("reference_refinement must be >= 2")
        return self

    def to_dict(self):
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, d):
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**d)
        cfg.k_values = [float(k) for k in cfg.k_values]
        cfg.hk_values = [float(h) for h in cfg.hk_values]
        cfg.tolerances = {**cls().tolerances, **dict(cfg.tolerances)}
        return cfg.validate()


def load_config(cls, path=None, overrides=None):
    """Config from a JSON file (optional) with non-``None`` ``overrides`` applied on top."""
    data = {}
    if path:
        with open(path) as fh:
            data = json.load(fh)
    for key, val in (overrides or {}).items():
        if val is not None:
            data[key] = val
    return cls.from_dict(data)


# ---------------------------------------------------------------------------
# records
# ---------------------------------------------------------------------------
@dataclass
class SweepRecord:
    """One ``(k, hk, formulation)`` cell.

    ``rel_err`` and ``best_approx`` are both relative to ``||v||``, so
    ``rel_err = qo_ratio * best_approx``. ``cond_norm`` and ``creg_ratio``
    are NaN off the unit circle; ``ms`` includes the (shared) assembly.
    """

    k: float
    h: float
    N: int
    rel_err: float
    best_approx: float
    qo_ratio: float
    cond_norm: float
    creg_ratio: float
    ms: float
    formulation: str = "indirect"
    hk: float = math.nan
    series: str = SERIES_HK
    error: str | None = None

    @property
    def ok(self):
        return self.error is None

    def row(self):
        return [getattr(self, c) for c in CSV_COLUMNS]


def _failed(k, hk, series, form, err, ms):
    nan = math.nan
    return SweepRecord(k, nan, 0, nan, nan, nan, nan, nan, ms, form.value, hk, series,
                       f"{type(err).__name__}: {err}")


def _nested_errors(ref, density):
    """``||ref - v_N||`` and ``||(I - P_N) ref||`` for ``ref`` on a nested refinement."""
    fine, space = ref.space, density.space
    rv = fine.values_at_nodes(ref.coeffs).ravel()
    mu = fine.mu.ravel()
    i, xi = space.mesh.locate(fine.t.ravel())
    b = space.basis_at(i, xi[:, None])[:, :, 0]                     # (m, P)
    c = density.coeffs.reshape(space.n_panels, space.P)
    err = math.sqrt(float(np.sum(mu * np.abs(rv - np.sum(b * c[i], axis=1)) ** 2)))
    proj = np.zeros((space.n_panels, space.P), dtype=complex)
    np.add.at(proj, i, b * (rv * mu)[:, None])
    best = math.sqrt(float(np.sum(mu * np.abs(rv - np.sum(b * proj[i], axis=1)) ** 2)))
    return err, best, math.sqrt(float(np.sum(mu * np.abs(rv) ** 2)))


def _systems(curve, k, space):
    """Indirect and direct Galerkin systems from one assembly."""
    ind = assemble(curve, k, Formulation.INDIRECT, space)
    return {Formulation.INDIRECT: ind, Formulation.DIRECT: ind.transposed()}


def _run_cell(cfg, curve, k, hk, series, forms):
    p = int(cfg.p)
    n = panel_count(curve, k, hk)
    space = build_space(curve, n, p, hk=hk)
    incident = IncidentField.plane_wave(k, cfg.theta)
    t0 = time.perf_counter()
    systems = _systems(curve, k, space)
    shared = time.perf_counter() - t0
    circle = is_unit_circle(curve)
    cond = math.nan
    if circle and cfg.condition:
        t1 = time.perf_counter()
        cond = estimate_qo_condition_norm(k, space, seed=cfg.seed).value
        shared += time.perf_counter() - t1
    fine = ref_systems = None
    out = []
    for form in forms:
        t1 = time.perf_counter()
        try:
            sol = solve_scattering(curve, incident, form, space, system=systems[form])
            if circle:
                exact = exact_density(form, k, cfg.theta, default_truncation(k, space.N))
                err, best = galerkin_error(exact, sol.density)
                vnorm = exact.norm()
                creg = creg_ratio(exact, k)
            else:
                if ref_systems is None:
                    fine = build_space(curve, n * int(cfg.reference_refinement), p, qorder=space.qorder)
                    ref_systems = _systems(curve, k, fine)
                ref = solve_scattering(curve, incident, form, fine, system=ref_systems[form]).density
                err, best, vnorm = _nested_errors(ref, sol.density)
                creg = math.nan
            ms = 1e3 * (shared + time.perf_counter() - t1)
            out.append(SweepRecord(float(k), space.h, space.N, err / vnorm, best / vnorm,
                                   err / best if best > 0 else math.inf, cond, creg, ms,
                                   form.value, float(hk), series))
        except Exception as exc:  # isolate the failing cell, keep sweeping
            out.append(_failed(float(k), float(hk), series, form, exc,
                               1e3 * (shared + time.perf_counter() - t1)))
    return out


def run_sweep(cfg, progress=None):
    """Run all cells of ``cfg``; writes result files when ``cfg.output`` is set.

    A cell that raises is recorded with its error message and NaN values.
    """
    cfg.validate()
    curve = parse_curve(cfg.curve)
    forms = _formulations(cfg.formulation)
    ks = sorted(float(k) for k in cfg.k_values)
    series = [SERIES_HK] + ([SERIES_HK43] if cfg.contrast else [])
    records = []
    for hk0 in cfg.hk_values:
        for s in series:
            for k in ks:
                hk = hk0 if s == SERIES_HK else hk0 * (ks[0] / k) ** (1.0 / 3.0)
                try:
                    recs = _run_cell(cfg, curve, k, hk, s, forms)
                except Exception as exc:
                    recs = [_failed(k, hk, s, f, exc, math.nan) for f in forms]
                    if progress:
                        progress(traceback.format_exc())
                for r in recs:
                    r.hk = float(hk0)
                records.extend(recs)
                if progress:
                    for r in recs:
                        progress(_progress_line(r))
    if cfg.output:
        emit_outputs(records, cfg.output, cfg)
    return records


def _progress_line(r):
    if not r.ok:
        return f"k={r.k:g} hk={r.hk:g} {r.series} {r.formulation}: FAILED {r.error}"
    return (f"k={r.k:g} hk={r.hk:g} {r.series} {r.formulation}: N={r.N} rel_err={r.rel_err:.3e} "
            f"qo={r.qo_ratio:.3f} cond={r.cond_norm:.3f} {r.ms:.0f} ms")


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------
@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    asserted: bool = True

    def line(self):
        tag = "PASS" if self.passed else ("FAIL" if self.asserted else "note")
        return f"[{tag}] {self.name}: {self.detail}"


def _groups(records):
    groups = {}
    for r in records:
        groups.setdefault((r.formulation, r.series, r.hk), []).append(r)
    for g in groups.values():
        g.sort(key=lambda r: r.k)
    return groups


def sweep_checks(records, cfg):
    """Asserted: every cell solved, ``1 <= qo_ratio <= qo_max``, relative error flat in ``k``.

    Reported only: whether ``qo_ratio`` is non-increasing beyond ``k = 20``.
    """
    tol = cfg.tolerances
    qo_max = float(tol.get("qo_max", 4.5))
    flat = float(tol.get("flat_factor", 1.5))
    out = []
    failed = [r for r in records if not r.ok]
    out.append(CheckResult("solves", not failed,
                           f"{len(records) - len(failed)}/{len(records)} cells solved"))
    for (form, series, hk), g in sorted(_groups(records).items()):
        tag = f"{form} {series} hk={hk:g}"
        good = [r for r in g if r.ok]
        if not good:
            continue
        qo = [r.qo_ratio for r in good]
        out.append(CheckResult(f"qo_ratio {tag}", all(1.0 - 1e-12 <= q <= qo_max for q in qo),
                               f"range [{min(qo):.4f}, {max(qo):.4f}], bound {qo_max:g}"))
        base = good[0].rel_err
        worst = max(r.rel_err / base for r in good)
        out.append(CheckResult(f"flat rel_err {tag}", worst <= flat,
                               f"max rel_err / rel_err(k={good[0].k:g}) = {worst:.4f}, bound {flat:g}"))
        late = [r.qo_ratio for r in good if r.k >= 20.0]
        trend = all(b <= a * (1.0 + 1e-3) for a, b in zip(late, late[1:]))
        out.append(CheckResult(f"qo trend {tag}", trend,
                               "non-increasing beyond k=20" if trend else "not monotone beyond k=20",
                               asserted=False))
    return out


# ---------------------------------------------------------------------------
# verification suite on the unit circle
# ---------------------------------------------------------------------------
@dataclass
class VerifyConfig:
    """Parameters of the unit-circle verification suite."""

    k_values: list = field(default_factory=lambda: [5.0, 10.0, 20.0, 40.0, 80.0])
    mode_factor: float = 4.0
    tail_delta: float = 0.5
    epsilon: float = 0.2
    plateau_end: float = 1.2
    support_end: float = 2.0
    theta: float = 0.0
    condition_k: list = field(default_factory=lambda: [10.0, 20.0, 40.0, 80.0])
    condition_hk: float = 0.5
    seed: int = 0
    tolerances: dict = field(default_factory=lambda: {
        "dgs": 1e-9, "tail_factor": 2.0, "hf_factor": 3.0, "inverse": 1e-8,
        "smoothing_factor": 2.0, "creg_factor": 2.0, "condition": 1.0,
    })
    output: str | None = None

    def validate(self):
        if not self.k_values or min(self.k_values) <= 0:
            raise ValueError("k_values must be positive")
        CutoffSpec(self.plateau_end, self.support_end)
        return self

    def to_dict(self):
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, d):
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**d)
        cfg.tolerances = {**cls().tolerances, **dict(cfg.tolerances)}
        return cfg.validate()


@dataclass
class VerificationReport:
    checks: list

    @property
    def passed(self):
        return all(c.passed for c in self.checks if c.asserted)

    def to_text(self):
        lines = [c.line() for c in self.checks]
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def to_json(self):
        return json.dumps({"passed": self.passed, "checks": [dataclasses.asdict(c) for c in self.checks]},
                          indent=2, sort_keys=True) + "\n"


def _spread(vals):
    return max(vals) / min(vals)


def _fmt(vals):
    return ", ".join(f"{v:.6g}" for v in vals)


def run_verification(cfg):
    """Unit-circle checks, each with pass/fail; the report is deterministic for a fixed config."""
    cfg.validate()
    tol = cfg.tolerances
    ks = [float(k) for k in cfg.k_values]
    Ms = [int(math.ceil(cfg.mode_factor * k)) for k in ks]
    spec = CutoffSpec(cfg.plateau_end, cfg.support_end)
    checks = []

    mins = [dgs_min_real(k, M).value for k, M in zip(ks, Ms)]
    checks.append(CheckResult("min Re lambda_m >= 1", min(mins) >= 1.0 - tol["dgs"],
                              f"min over |m| <= {cfg.mode_factor:g}k: {_fmt(mins)}"))

    tails = [lambda_tail_constant(k, cfg.tail_delta, M) for k, M in zip(ks, Ms)]
    checks.append(CheckResult("tail constant stable", _spread(tails) <= tol["tail_factor"],
                              f"delta={cfg.tail_delta:g}: {_fmt(tails)} (spread {_spread(tails):.4f})"))

    hf = [hf_multiplier_norms(k, cfg.epsilon) for k in ks]
    cut = [hf_cutoff_norms(spec, k) for k in ks]
    leaks = [k for k in ks if cutoff_leaks(spec, k)]
    cs = [h.C_S for h in hf]
    cd = [h.C_D for h in hf]
    bound = tol["hf_factor"]
    ok_hf = (_spread(cs) <= bound and max(cd) <= bound * cd[0]
             and max(c.C_S for c in cut) <= bound * cut[0].C_S
             and max(c.C_D for c in cut) <= bound * cut[0].C_D and not leaks)
    detail = f"C_S {_fmt(cs)}; C_D {_fmt(cd)}; cutoff C_S {_fmt([c.C_S for c in cut])}"
    if leaks:
        detail += f"; cutoff keeps frequencies <= k for k = {_fmt(leaks)}"
    checks.append(CheckResult("high-frequency bounds", ok_hf, detail))

    inv = [verify_inverse_decomposition(k, M) for k, M in zip(ks, Ms)]
    checks.append(CheckResult("inverse decomposition", max(inv) <= tol["inverse"],
                              f"max residual {max(inv):.3e}"))

    sm = [cutoff_smoothing_constant(spec, k) for k in ks]
    checks.append(CheckResult("cutoff smoothing", _spread(sm) <= tol["smoothing_factor"],
                              f"max (1+m^2)^(1/2) chi / k: {_fmt(sm)}"))

    for form in (Formulation.DIRECT, Formulation.INDIRECT):
        cr = [creg_ratio(exact_density(form, k, cfg.theta), k) for k in ks]
        checks.append(CheckResult(f"C_reg ratio {form.value}", _spread(cr) <= tol["creg_factor"],
                                  f"{_fmt(cr)} (spread {_spread(cr):.4f})"))

    circle = parse_curve("circle")
    conds = []
    for k in cfg.condition_k:
        space = build_space(circle, panel_count(circle, k, cfg.condition_hk), 0, hk=cfg.condition_hk)
        conds.append(estimate_qo_condition_norm(k, space, seed=cfg.seed).value)
    checks.append(CheckResult("quasi-optimality condition norm < 1",
                              max(conds) < tol["condition"],
                              f"hk={cfg.condition_hk:g}, k={_fmt(cfg.condition_k)}: {_fmt(conds)}"))
    report = VerificationReport(checks)
    if cfg.output:
        base = cfg.output
        os.makedirs(base, exist_ok=True)
        atomic_write(os.path.join(base, "verify.txt"), report.to_text())
        atomic_write(os.path.join(base, "verify.json"), report.to_json())
    return report


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------
def atomic_write(path, text):
    """Write ``text`` to ``path`` through a temporary file and ``os.replace``."""
    d = os.path.dirname(os.path.abspath(path))
    try:
        os.makedirs(d, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
        try:
            with os.fdopen(fd, "w", newline="") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def _g17(v):
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return "%.17g" % v


def records_csv(records):
    """CSV text with the fixed header and 17-significant-digit floats."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow([_g17(v) for v in r.row()])
    return buf.getvalue()


def parse_records_csv(text):
    """Inverse of :func:`records_csv` (the CSV columns only)."""
    rows = list(csv.reader(io.StringIO(text)))
    if tuple(rows[0]) != CSV_COLUMNS:
        raise ValueError(f"unexpected header {rows[0]}")
    out = []
    for row in rows[1:]:
        vals = {c: (int(v) if c == "N" else float(v)) for c, v in zip(CSV_COLUMNS, row)}
        out.append(vals)
    return out


def _jsonable(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None if math.isnan(v) else ("inf" if v > 0 else "-inf")
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def series_filename(curve, formulation, series, hk, ext):
    slug = curve.replace(":", "-")
    return f"{slug}_{formulation}_{series}_hk{hk:g}.{ext}"


def emit_outputs(records, out_dir, cfg=None):
    """Write one CSV per ``(formulation, series, hk)``, a JSON mirror and plot-data files.

    Returns the list of written paths.
    """
    if not records:
        raise ValueError("no records to write")
    curve = cfg.curve if cfg is not None else "curve"
    paths = []
    groups = _groups(records)
    for (form, series, hk), g in sorted(groups.items()):
        p = os.path.join(out_dir, series_filename(curve, form, series, hk, "csv"))
        atomic_write(p, records_csv(g))
        paths.append(p)
    # plot data: one file per (formulation, series), one block per hk
    by_fs = {}
    for (form, series, hk), g in sorted(groups.items()):
        by_fs.setdefault((form, series), []).append((hk, g))
    for (form, series), blocks in sorted(by_fs.items()):
        lines = [f"# {curve} {form} {series}: k rel_err best_approx qo_ratio N"]
        for hk, g in blocks:
            lines.append(f"# hk = {hk:g}")
            lines += [f"{_g17(r.k)} {_g17(r.rel_err)} {_g17(r.best_approx)} {_g17(r.qo_ratio)} {r.N}"
                      for r in g]
            lines += ["", ""]
        p = os.path.join(out_dir, f"{curve.replace(':', '-')}_{form}_{series}.dat")
        atomic_write(p, "\n".join(lines))
        paths.append(p)
    doc = {"config": cfg.to_dict() if cfg is not None else None,
           "records": [dataclasses.asdict(r) for r in records]}
    p = os.path.join(out_dir, "sweep.json")
    atomic_write(p, json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n")
    paths.append(p)
    return paths
