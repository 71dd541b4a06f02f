"""Renderer tests, including regeneration of all six preset figures."""

import subprocess

import numpy as np
import pytest

from figview import (
    MissingColumnError,
    PlotSpec,
    RaggedGridError,
    read_sweep,
    render_contour,
    render_lines,
    signed_log_levels,
)
from figview import cli

# preset name -> (kind, data columns, panel column)
PRESET_PLOTS = {
    "fig1": ("contour",
             ("delta_2", "delta_ratio_32", "delta_ratio_42",
              "lambda_2", "lambda_ratio_32", "lambda_ratio_42"), None),
    "fig2": ("lines", ("delta", "lambda"), "Omega_tau_e"),
    "fig3": ("contour", ("dxx_total",), "beta_Omega"),
    "fig4": ("lines", ("dxx", "dxp"), "Omega_tau_e"),
    "fig5": ("contour", ("dxp_total",), "beta_Omega"),
    "fig6": ("lines", ("dxx", "dxp"), "Omega_tau_e"),
}


@pytest.fixture(scope="session")
def preset_csvs(tmp_path_factory):
    root = tmp_path_factory.mktemp("presets")
    paths = {}
    for name in PRESET_PLOTS:
        out = root / f"{name}.csv"
        subprocess.run(["embath", "sweep", "--preset", name, "--out", str(out)],
                       check=True, capture_output=True)
        paths[name] = out
    return paths


def _small_csv(path, rows, header="omega0_tilde,Omega_tau_e,beta_Omega,q_2,q_3,q_4,error"):
    lines = ["# embath sweep schema_version=1", header]
    lines += [",".join(str(v) for v in r) + "," for r in rows]
    path.write_text("\n".join(lines) + "\n")
    return str(path)


def test_criterion_9_preset_figures(preset_csvs, tmp_path):
    ok = True
    detail = []
    for name, (kind, columns, panel) in PRESET_PLOTS.items():
        out = tmp_path / f"{name}.png"
        spec = PlotSpec(csv_path=str(preset_csvs[name]), columns=columns,
                        out_path=str(out), panel=panel)
        if kind == "contour":
            report = render_contour(spec)
            data = read_sweep(str(preset_csvs[name]))
            for p in report.panels:
                mask = (np.ones(len(data[spec.x]), dtype=bool) if p.panel_value is None
                        else data[panel] == p.panel_value)
                want = bool(np.any(data[p.column][mask] < 0.0))
                if p.has_negative_contours != want:
                    ok = False
                    detail.append(f"{name}:{p.column}@{p.panel_value}")
        else:
            report = render_lines(spec)
        ok = ok and out.exists() and out.stat().st_size > 0
    status = "PASS" if ok else "FAIL"
    print(f"criterion 9 [preset figure regeneration]: {status}"
          + (f" ({detail})" if detail else ""))
    assert ok


def test_missing_column(preset_csvs, tmp_path):
    spec = PlotSpec(csv_path=str(preset_csvs["fig1"]), columns=("nope",),
                    out_path=str(tmp_path / "x.png"))
    with pytest.raises(MissingColumnError):
        render_contour(spec)
    with pytest.raises(MissingColumnError):
        PlotSpec(csv_path="a.csv", columns=(), out_path="x.png")


def test_ragged_grid(tmp_path):
    rows = [(0.1, 0.01, 1.0, 1.0, 0.1, 0.01),
            (0.1, 0.10, 1.0, 2.0, 0.2, 0.02),
            (1.0, 0.01, 1.0, 3.0, 0.3, 0.03)]
    path = _small_csv(tmp_path / "ragged.csv", rows)
    spec = PlotSpec(csv_path=path, columns=("q_2",),
                    out_path=str(tmp_path / "x.png"))
    with pytest.raises(RaggedGridError):
        render_contour(spec)


def test_constant_column(tmp_path):
    rows = [(x, y, 1.0, 5.0, 5.0, 5.0)
            for x in (0.1, 1.0, 10.0) for y in (0.01, 0.1)]
    path = _small_csv(tmp_path / "const.csv", rows)
    out = tmp_path / "const.png"
    report = render_contour(PlotSpec(csv_path=path, columns=("q_2",),
                                     out_path=str(out)))
    assert out.exists()
    assert not report.panels[0].has_negative_contours


def test_sign_boundary_panel_report(tmp_path):
    # column crossing zero along x must produce dashed negative contours
    xs = np.geomspace(0.1, 10.0, 8)
    rows = [(x, y, 1.0, float(np.log(x)), 0.1, 0.01)
            for x in xs for y in (0.01, 0.1, 1.0)]
    path = _small_csv(tmp_path / "cross.csv", rows)
    report = render_contour(PlotSpec(csv_path=path, columns=("q_2",),
                                     out_path=str(tmp_path / "c.png")))
    assert report.panels[0].has_negative_contours


def test_single_row_lines(tmp_path):
    path = _small_csv(tmp_path / "one.csv", [(1.0, 0.1, 1.0, 0.5, 0.05, 0.005)])
    out = tmp_path / "one.png"
    render_lines(PlotSpec(csv_path=path, columns=("q",), out_path=str(out),
                          panel=None))
    assert out.exists()


def test_pixel_stability(preset_csvs, tmp_path):
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    for out in (a, b):
        render_lines(PlotSpec(csv_path=str(preset_csvs["fig4"]),
                              columns=("dxx", "dxp"), out_path=str(out),
                              panel="Omega_tau_e"))
    assert a.read_bytes() == b.read_bytes()


def test_signed_log_levels():
    neg, pos = signed_log_levels(np.array([-2.0, -0.5, 1e-9, 3.0, 300.0]), 5)
    assert len(pos) == 5 and pos[0] >= 300.0 * 1e-6 and pos[-1] == 300.0
    assert len(neg) == 5 and neg[-1] == 2.0
    neg, pos = signed_log_levels(np.array([4.0, 4.0]), 5)
    assert neg.size == 0 and list(pos) == [4.0]
    neg, pos = signed_log_levels(np.array([np.nan]), 5)
    assert neg.size == 0 and pos.size == 0


def test_cli_flags_and_spec(preset_csvs, tmp_path, capsys):
    out = tmp_path / "cli.png"
    code = cli.main(["--csv", str(preset_csvs["fig3"]), "--kind", "contour",
                     "--columns", "dxx_total", "--panel", "beta_Omega",
                     "--out", str(out)])
    assert code == 0
    assert out.exists()
    assert "wrote" in capsys.readouterr().out

    import json
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps({
        "kind": "lines",
        "csv_path": str(preset_csvs["fig6"]),
        "columns": ["dxx", "dxp"],
        "panel": "Omega_tau_e",
        "out_path": str(tmp_path / "spec.png"),
    }))
    assert cli.main(["--spec", str(spec_path)]) == 0
    capsys.readouterr()

    assert cli.main(["--csv", str(preset_csvs["fig3"]), "--columns", "nope",
                     "--out", str(tmp_path / "bad.png")]) == 2
    assert cli.main(["--csv", "missing.csv", "--columns", "dxx_total",
                     "--out", str(tmp_path / "bad.png")]) == 4
    capsys.readouterr()
