"""Regenerate the six preset figure datasets and, if figview is installed,
render them to PNG.

Writes CSVs to demos/output/ using the sweep presets, then feeds each CSV
to the renderer through the same external contract the tests use.
"""

import pathlib

from embath import cli as embath_cli

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

PLOTS = {
    "fig1": ("contour",
             ("delta_2", "delta_ratio_32", "delta_ratio_42",
              "lambda_2", "lambda_ratio_32", "lambda_ratio_42"), None),
    "fig2": ("lines", ("delta", "lambda"), "Omega_tau_e"),
    "fig3": ("contour", ("dxx_total",), "beta_Omega"),
    "fig4": ("lines", ("dxx", "dxp"), "Omega_tau_e"),
    "fig5": ("contour", ("dxp_total",), "beta_Omega"),
    "fig6": ("lines", ("dxx", "dxp"), "Omega_tau_e"),
}

for name in PLOTS:
    csv_path = OUT / f"{name}.csv"
    code = embath_cli.main(["sweep", "--preset", name, "--out", str(csv_path)])
    assert code == 0, name

try:
    from figview import PlotSpec, render_contour, render_lines
except ImportError:
    print("figview is not installed; CSVs written, skipping the rendering step")
else:
    for name, (kind, columns, panel) in PLOTS.items():
        spec = PlotSpec(csv_path=str(OUT / f"{name}.csv"), columns=columns,
                        out_path=str(OUT / f"{name}.png"), panel=panel)
        render = render_contour if kind == "contour" else render_lines
        report = render(spec)
        dashed = sum(1 for pn in report.panels if pn.has_negative_contours)
        print(f"{name}: {len(report.panels)} panels, "
              f"{dashed} with dashed negative contours -> {report.out_path}")
