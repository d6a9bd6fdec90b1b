import csv
import io

import numpy as np
import pytest

from xyzdm.cli import run
from xyzdm.model import ModelParams
from xyzdm.sweep import (
    CSV_HEADER,
    FIGURE_IDS,
    SweepSpec,
    emit_csv,
    eval_point,
    figure_preset,
    format_csv,
    run_sweep,
    self_test,
)

FIG1 = dict(jx=-1.0, jy=-0.5, dz=1.0)


def test_eval_point_trivial():
    row = eval_point(ModelParams(temp=1.0))
    assert row.lqfi == pytest.approx(0, abs=1e-12)
    assert row.lqu == pytest.approx(0, abs=1e-12)


def test_eval_point_low_temperature_plateau():
    assert eval_point(ModelParams(jz=0.2, temp=0.02, **FIG1)).lqfi == pytest.approx(1, abs=1e-6)


def test_eval_point_rows_consistent_with_closed_forms():
    rng = np.random.default_rng(5)
    for _ in range(50):
        jx, jy, jz = rng.uniform(-2, 2, 3)
        row = eval_point(ModelParams(jx=jx, jy=jy, jz=jz, dz=rng.uniform(0, 2), temp=rng.uniform(0.3, 5)))
        assert abs(row.lqfi - (1 - max(row.w11, row.w22, row.w33))) <= 1e-12
        assert abs(row.lqu - (1 - max(row.m11, row.m22, row.m33))) <= 1e-12


def test_sweep_spec_validation():
    base = ModelParams(**FIG1)
    with pytest.raises(ValueError):
        SweepSpec(base, "temp", 1.0, 1.0, 10)
    with pytest.raises(ValueError):
        SweepSpec(base, "temp", 0.1, 1.0, 1)
    with pytest.raises(ValueError):
        SweepSpec(base, "temp", 0.0, 1.0, 10)
    with pytest.raises(ValueError):
        SweepSpec(base, "jz", 0.0, 1.0, 10, curve_field="jz", curve_values=(1.0,))
    with pytest.raises(ValueError):
        SweepSpec(base, "jz", 0.0, 1.0, 10, curve_field="temp", curve_values=(1.0, -1.0))
    with pytest.raises(ValueError):
        SweepSpec(base, "bogus", 0.0, 1.0, 10)


def test_temperature_sweep_decays_after_maximum():
    rows = run_sweep(SweepSpec(ModelParams(jz=0.2, **FIG1), "temp", 0.1, 5.0, 50))
    assert len(rows) == 50
    lq = np.array([r.lqfi for r in rows])
    peak = int(np.argmax(lq))
    assert np.all(np.diff(lq[peak:]) <= 1e-12)


def test_dz_sweep_saturates():
    rows = run_sweep(SweepSpec(ModelParams(jx=-1, jy=-1, jz=0.2, temp=1.0), "dz", 0.0, 20.0, 30))
    assert rows[-1].lqfi > 0.99


def test_two_point_sweep_and_curve_grouping():
    spec = SweepSpec(ModelParams(**FIG1), "temp", 0.5, 1.0, 2, curve_field="jz", curve_values=(0.5, -1.0))
    rows = run_sweep(spec)
    assert [(r.jz, r.temp) for r in rows] == [(0.5, 0.5), (0.5, 1.0), (-1.0, 0.5), (-1.0, 1.0)]
    assert len(run_sweep(SweepSpec(ModelParams(**FIG1), "jz", 0, 1, 2))) == 2


def test_sweep_error_names_grid_point(monkeypatch):
    import xyzdm.sweep as sw

    def boom(p):
        raise ValueError("bad")

    monkeypatch.setattr(sw, "eval_point", boom)
    with pytest.raises(ValueError, match="temp=0.5"):
        sw.run_sweep(SweepSpec(ModelParams(**FIG1), "temp", 0.5, 1.0, 2))


def test_parallel_matches_serial():
    spec = SweepSpec(ModelParams(**FIG1), "temp", 0.05, 5.0, 40, curve_field="jz", curve_values=(0.2, 1.0))
    assert format_csv(run_sweep(spec)) == format_csv(run_sweep(spec, workers=3))


@pytest.mark.parametrize("fig_id", FIGURE_IDS)
def test_presets_well_formed(fig_id):
    spec = figure_preset(fig_id)
    assert spec.points == 200
    assert spec.headline == ("lqfi" if fig_id in ("fig1",) or fig_id.startswith("fig2") else "lqu")
    if fig_id in ("fig1", "fig3"):
        assert (spec.swept, spec.start, spec.stop) == ("temp", 0.05, 5.0)
        assert spec.curve_field == "jz"
    else:
        assert spec.curve_field == "temp"
        assert (spec.start, spec.stop) == ((0.0, 3.0) if spec.swept == "dz" else (-3.0, 3.0))


@pytest.mark.parametrize(
    "fig_id, fixed, swept",
    [
        ("fig1", dict(jx=-1, jy=-0.5, dz=1), "temp"),
        ("fig3", dict(jx=-1, jy=-0.5, dz=1), "temp"),
        ("fig2a", dict(jz=-1, jy=-0.5, dz=1), "jx"),
        ("fig2b", dict(jx=-1, jz=0.2, dz=1), "jy"),
        ("fig2c", dict(jx=-1, jy=-0.5, dz=1), "jz"),
        ("fig2d", dict(jx=-1, jy=-1, jz=0.2), "dz"),
        ("fig4a", dict(jz=-1, jy=-0.5, dz=1), "jx"),
        ("fig4b", dict(jx=-1, jz=0.2, dz=1), "jy"),
        ("fig4c", dict(jx=-1, jy=-0.5, dz=1), "jz"),
        ("fig4d", dict(jx=-1, jy=-1, jz=0.2), "dz"),
    ],
)
def test_preset_fidelity_to_captions(fig_id, fixed, swept):
    spec = figure_preset(fig_id)
    assert spec.swept == swept
    for name, value in fixed.items():
        assert getattr(spec.fixed, name) == value


def test_unknown_preset():
    with pytest.raises(ValueError):
        figure_preset("fig5")


def test_emit_csv_format_and_roundtrip():
    rows = [eval_point(ModelParams(jz=0.2, temp=t, **FIG1)) for t in (0.3, 1.7)]
    text = format_csv(rows[:1])
    assert text.count("\n") == 2 and text.startswith(CSV_HEADER + "\n")
    text = format_csv(rows)
    assert "\r" not in text and not any(line.endswith(",") for line in text.splitlines())
    parsed = list(csv.DictReader(io.StringIO(text)))
    for row, rec in zip(rows, parsed):
        for name in CSV_HEADER.split(","):
            assert abs(float(rec[name]) - getattr(row, name)) <= 1e-11


def test_emit_csv_rejects_empty_and_reports_stream_errors():
    with pytest.raises(ValueError):
        emit_csv([], io.StringIO())

    class Broken:
        name = "broken-sink"

        def write(self, _):
            raise OSError("disk full")

    with pytest.raises(OSError, match="broken-sink"):
        emit_csv([eval_point(ModelParams())], Broken())


def test_self_test_deterministic_and_validates():
    a = self_test(1, seed=3, resolution=1000)
    b = self_test(1, seed=3, resolution=1000)
    assert a.format() == b.format()
    assert a.passed
    with pytest.raises(ValueError):
        self_test(0, seed=3)


# CLI


def test_cli_eval(tmp_path, capsys):
    out = tmp_path / "pt.csv"
    assert run(["eval", "--jx", "-1", "--jy", "-0.5", "--jz", "0.2", "--dz", "1", "--temp", "1", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == CSV_HEADER and len(lines) == 2
    assert lines[1].startswith("-1,-0.5,0.2,1,1,0.685969217594,")


def test_cli_sweep_with_curve(tmp_path):
    out = tmp_path / "s.csv"
    code = run([
        "sweep", "--sweep", "temp", "--from", "0.1", "--to", "2", "--points", "5",
        "--curve", "jz=0.2,1", "--jx", "-1", "--jy", "-0.5", "--dz", "1", "--out", str(out),
    ])
    assert code == 0
    assert len(out.read_text().splitlines()) == 11


def test_cli_figure_first_rows(tmp_path):
    out = tmp_path / "f.csv"
    assert run(["figure", "fig1", "--points", "10", "--curve", "jz=0.2", "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    temps = [float(r["temp"]) for r in rows]
    assert temps[0] == 0.05 and temps == sorted(temps)


def test_cli_exit_codes(tmp_path, capsys, monkeypatch):
    assert run(["eval", "--temp", "0"]) == 1
    assert "temp" in capsys.readouterr().err
    assert run(["sweep", "--sweep", "temp", "--from", "2", "--to", "1", "--points", "3"]) == 1
    assert run(["sweep", "--sweep", "jz", "--from", "0", "--to", "1", "--points", "3", "--curve", "jq=1"]) == 1
    assert run(["figure", "fig1", "--curve", "temp=1,2"]) == 1
    assert run(["selftest", "--draws", "0"]) == 1
    with pytest.raises(SystemExit) as exc:
        run(["eval", "--jx", "abc"])
    assert exc.value.code == 1
    assert run(["eval", "--out", str(tmp_path / "missing" / "x.csv")]) == 1

    import xyzdm.linalg as la

    monkeypatch.setattr(la, "MAX_SWEEPS", 0)
    assert run(["eval", "--jx", "1", "--temp", "1"]) == 2


def test_cli_selftest_exit_status(monkeypatch, capsys):
    assert run(["selftest", "--draws", "1", "--seed", "1", "--resolution", "500"]) == 0
    assert "overall: PASS" in capsys.readouterr().out
    import xyzdm.sweep as sw

    monkeypatch.setattr(sw, "point_deviations", lambda p, r: {"oracle_fisher": 1.0})
    assert run(["selftest", "--draws", "1", "--seed", "1"]) == 3
