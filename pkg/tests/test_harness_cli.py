"""Sweeps, the verification suite, result files and the command-line interface."""

import json
import math
import os

import numpy as np
import pytest

from helmbem import cli, harness
from helmbem.circle_spectral import circle_symbols
from helmbem.harness import (
    CSV_COLUMNS,
    SweepConfig,
    VerifyConfig,
    emit_outputs,
    load_config,
    parse_records_csv,
    records_csv,
    run_sweep,
    run_verification,
    sweep_checks,
)

SMALL = dict(k_values=[10.0, 20.0], hk_values=[0.5])


@pytest.fixture(scope="module")
def small_records():
    cfg = SweepConfig(**SMALL)
    return cfg, run_sweep(cfg)


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------
def test_config_rejects_unknown_keys():
    with pytest.raises(ValueError, match="unknown"):
        SweepConfig.from_dict({"curve": "circle", "bogus": 1})
    with pytest.raises(ValueError, match="unknown"):
        VerifyConfig.from_dict({"plateau": 1.2})


@pytest.mark.parametrize("bad", [{"k_values": [1.0]}, {"hk_values": [0.0]}, {"p": -1},
                                 {"curve": "square"}, {"formulation": "neither"}, {"k_values": []}])
def test_config_validation(bad):
    with pytest.raises(ValueError):
        SweepConfig.from_dict(bad)


def test_flags_override_config_file(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"curve": "kite", "p": 1, "k_values": [10, 20], "theta": 0.3}))
    cfg = load_config(SweepConfig, str(path), {"p": 0, "theta": None, "curve": "ellipse:2:1"})
    assert cfg.p == 0 and cfg.curve == "ellipse:2:1"
    assert cfg.theta == 0.3 and cfg.k_values == [10.0, 20.0]
    assert cfg.tolerances == SweepConfig().tolerances


def test_partial_tolerances_merge_with_defaults():
    cfg = SweepConfig.from_dict({"tolerances": {"qo_max": 3.0}})
    assert cfg.tolerances == {"qo_max": 3.0, "flat_factor": 1.5}


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------
def test_sweep_records_consistent(small_records):
    cfg, recs = small_records
    assert len(recs) == 4 and all(r.ok for r in recs)
    for r in recs:
        assert r.qo_ratio >= 1.0
        assert r.rel_err >= 0 and r.best_approx >= 0
        assert r.rel_err == pytest.approx(r.qo_ratio * r.best_approx, rel=1e-14)
        assert r.h * r.k == pytest.approx(0.5, rel=0.02)
        assert 0 < r.cond_norm < 1 and 0 < r.creg_ratio < 2 and r.ms > 0
    assert all(c.passed for c in sweep_checks(recs, cfg))


def test_sweep_deterministic(small_records):
    cfg, recs = small_records
    again = run_sweep(SweepConfig(**SMALL))
    for a, b in zip(recs, again):
        assert a.row()[:-1] == b.row()[:-1]      # everything but the wall time, bit for bit


def test_sweep_contrast_series():
    recs = run_sweep(SweepConfig(k_values=[10.0, 20.0], hk_values=[0.5], formulation="direct",
                                 contrast=True, condition=False))
    hk43 = [r for r in recs if r.series == harness.SERIES_HK43]
    assert len(hk43) == 2
    # h k^{4/3} held fixed: N grows like k^{4/3}
    assert hk43[1].h * 20.0 ** (4 / 3) == pytest.approx(hk43[0].h * 10.0 ** (4 / 3), rel=0.02)
    assert hk43[1].N / hk43[0].N == pytest.approx(2 ** (4 / 3), rel=0.02)
    assert all(math.isnan(r.cond_norm) for r in recs)


def test_sweep_off_circle_uses_refined_reference():
    recs = run_sweep(SweepConfig(curve="ellipse:1.5:1", k_values=[4.0], hk_values=[0.5],
                                 formulation="indirect"))
    (r,) = recs
    assert r.ok and 1.0 <= r.qo_ratio <= 4.5 and r.rel_err < 0.3
    assert math.isnan(r.cond_norm) and math.isnan(r.creg_ratio)


def test_sweep_failure_isolation(monkeypatch):
    real = harness.solve_scattering

    def flaky(curve, incident, form, space, **kw):
        if incident.k == 20.0:
            raise np.linalg.LinAlgError("synthetic failure")
        return real(curve, incident, form, space, **kw)

    monkeypatch.setattr(harness, "solve_scattering", flaky)
    cfg = SweepConfig(k_values=[10.0, 20.0, 40.0], formulation="indirect", condition=False)
    recs = run_sweep(cfg)
    assert [r.ok for r in recs] == [True, False, True]
    assert "synthetic failure" in recs[1].error and math.isnan(recs[1].rel_err)
    checks = {c.name: c for c in sweep_checks(recs, cfg)}
    assert not checks["solves"].passed


def test_sweep_checks_flag_violations(small_records):
    cfg, recs = small_records
    strict = SweepConfig.from_dict({**SMALL, "tolerances": {"qo_max": 1.0}})
    assert not all(c.passed for c in sweep_checks(recs, strict) if c.asserted)


# ---------------------------------------------------------------------------
# output files
# ---------------------------------------------------------------------------
def test_csv_header_and_round_trip(small_records):
    _, recs = small_records
    text = records_csv(recs)
    assert text.splitlines()[0] == "k,h,N,rel_err,best_approx,qo_ratio,cond_norm,creg_ratio,ms"
    back = parse_records_csv(text)
    for r, row in zip(recs, back):
        assert [row[c] for c in CSV_COLUMNS] == r.row()
    with pytest.raises(ValueError):
        parse_records_csv("a,b\n1,2\n")


def test_emit_outputs(tmp_path, small_records):
    cfg, recs = small_records
    paths = emit_outputs(recs, str(tmp_path), cfg)
    names = sorted(os.path.basename(p) for p in paths)
    assert "circle_direct_hk_hk0.5.csv" in names and "circle_indirect_hk.dat" in names
    doc = json.loads((tmp_path / "sweep.json").read_text())
    assert doc["config"] == json.loads(json.dumps(cfg.to_dict()))
    assert SweepConfig.from_dict(doc["config"]) == cfg
    assert len(doc["records"]) == len(recs)
    csv_text = (tmp_path / "circle_direct_hk_hk0.5.csv").read_text()
    assert [row["k"] for row in parse_records_csv(csv_text)] == [10.0, 20.0]
    assert not [p for p in os.listdir(tmp_path) if p.startswith(".tmp-")]
    with pytest.raises(ValueError):
        emit_outputs([], str(tmp_path))


def test_emit_outputs_io_error_names_path(tmp_path, small_records):
    cfg, recs = small_records
    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.raises(OSError, match="file"):
        emit_outputs(recs, str(blocker / "sub"), cfg)


# ---------------------------------------------------------------------------
# verification suite
# ---------------------------------------------------------------------------
def test_verification_passes_on_defaults():
    report = run_verification(VerifyConfig())
    assert report.passed, report.to_text()
    assert len(report.checks) == 8


def test_verification_negative_control():
    report = run_verification(VerifyConfig(k_values=[5.0, 10.0], condition_k=[10.0], plateau_end=0.8))
    failed = [c.name for c in report.checks if not c.passed]
    assert failed == ["high-frequency bounds"]
    assert "keeps frequencies" in report.to_text()
    assert not report.passed


def test_verification_report_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run_verification(VerifyConfig(k_values=[5.0, 10.0], condition_k=[10.0], output=str(a)))
    run_verification(VerifyConfig(k_values=[5.0, 10.0], condition_k=[10.0], output=str(b)))
    for name in ("verify.txt", "verify.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


# ---------------------------------------------------------------------------
# command line
# ---------------------------------------------------------------------------
def test_cli_eigs_csv_and_json(capsys):
    assert cli.main(["eigs", "--k", "5", "--max-mode", "8"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "m,Re(lambda),Im(lambda),abs(lambda-1)*m/k" and len(lines) == 10
    lam = circle_symbols(5.0, 8).lam
    m, re, im, _ = lines[4].split(",")
    assert int(m) == 3 and complex(float(re), float(im)) == lam[3]
    assert cli.main(["eigs", "--k", "5", "--max-mode", "3", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert [r["m"] for r in rows] == [0, 1, 2, 3]


def test_cli_solve_writes_file(tmp_path, capsys):
    out = tmp_path / "dens.csv"
    assert cli.main(["solve", "--k", "5", "--curve", "ellipse:1.5:1", "--n-panels", "40", "--p", "1",
                     "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "panel,dof,Re,Im" and len(lines) == 81
    assert "N=80" in capsys.readouterr().err


def test_cli_field_marks_interior(capsys):
    assert cli.main(["field", "--k", "4", "--curve", "kite", "--n-panels", "48",
                     "--grid", "3:3:-3:3:-3:3", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 9
    centre = rows[4]
    assert centre["inside_flag"] == 1 and centre["ReU"] is None
    assert all(r["inside_flag"] == 0 and r["ReU"] is not None for r in rows if r is not centre)


def test_cli_sweep_exit_codes(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"k_values": [10, 20], "formulation": "direct", "condition": False}))
    out = tmp_path / "out"
    assert cli.main(["sweep", "--config", str(cfg), "--out", str(out), "--quiet"]) == 0
    assert (out / "circle_direct_hk_hk0.5.csv").exists()
    assert "overall: PASS" in capsys.readouterr().err
    cfg.write_text(json.dumps({"k_values": [10, 20], "formulation": "direct", "condition": False,
                               "tolerances": {"qo_max": 1.0}}))
    assert cli.main(["sweep", "--config", str(cfg), "--quiet"]) == 1
    captured = capsys.readouterr()
    assert captured.out.startswith(",".join(CSV_COLUMNS)) and "overall: FAIL" in captured.err


def test_cli_verify_exit_codes(capsys):
    assert cli.main(["verify", "--k", "5,10"]) == 0
    assert capsys.readouterr().out.rstrip().endswith("overall: PASS")
    assert cli.main(["verify", "--k", "5,10", "--plateau-end", "0.8", "--format", "json"]) == 1
    assert json.loads(capsys.readouterr().out)["passed"] is False


def test_cli_errors_exit_2(tmp_path, capsys):
    assert cli.main(["sweep", "--k", "1"]) == 2
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"nonsense": True}))
    assert cli.main(["sweep", "--config", str(cfg)]) == 2
    assert cli.main(["solve", "--k", "5", "--curve", "square"]) == 2
    assert cli.main(["sweep", "--config", str(tmp_path / "missing.json")]) == 2
    assert "error:" in capsys.readouterr().err
    with pytest.raises(SystemExit) as exc:
        cli.main(["field", "--k", "5", "--grid", "1:2:3"])
    assert exc.value.code == 2


def test_cli_specfun_table(capsys):
    assert cli.main(["specfun-table", "--x", "1.5", "--max-order", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "m,x,J,J',ReH,ImH" and len(lines) == 4
    from scipy.special import jv
    assert float(lines[2].split(",")[2]) == pytest.approx(jv(1, 1.5), rel=1e-14)


def test_cli_module_entry_point():
    import subprocess
    import sys
    res = subprocess.run([sys.executable, "-m", "helmbem", "eigs", "--k", "2", "--max-mode", "1"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.count("\n") == 3


def test_cli_numba_disabled_matches(capsys):
    """The pure-Python path of the compiled kernels gives the same table."""
    import os
    import subprocess
    import sys
    argv = ["specfun-table", "--x", "0.5,7,40", "--max-order", "30"]
    assert cli.main(argv) == 0
    ref = capsys.readouterr().out
    env = {**os.environ, "HELMBEM_DISABLE_NUMBA": "1"}
    res = subprocess.run([sys.executable, "-m", "helmbem", *argv], capture_output=True, text=True,
                         env=env, check=True)
    a = np.array([[float(v) for v in line.split(",")] for line in ref.splitlines()[1:]])
    b = np.array([[float(v) for v in line.split(",")] for line in res.stdout.splitlines()[1:]])
    assert a.shape == b.shape == (93, 6)
    assert np.allclose(a, b, rtol=1e-14, atol=0)
