"""Contour and line rendering for sweep CSV files.

The input contract is the sweep CSV: a leading comment line, a header row,
then one row per grid point with 17-significant-digit floats. Everything
here is a pure function of that file, so re-rendering the same CSV gives a
byte-identical image.
"""

import csv
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from figview.errors import MissingColumnError, RaggedGridError

# fixed style so output does not depend on user configuration
_RC = {
    "figure.dpi": 110,
    "savefig.dpi": 110,
    "font.size": 9,
    "axes.titlesize": 9,
    "svg.hashsalt": "figview",
}

_ORDER_STYLES = (("2", "solid"), ("3", "dashdot"), ("4", "dotted"))


@dataclass(frozen=True)
class PlotSpec:
    """What to read, which columns to draw, and where to write the image."""

    csv_path: str
    columns: tuple[str, ...]
    out_path: str
    x: str = "omega0_tilde"
    y: str = "Omega_tau_e"
    panel: str | None = None
    log_x: bool = True
    log_y: bool = True
    n_levels: int = 9
    dashed_negative: bool = True

    def __post_init__(self):
        if not self.columns:
            raise MissingColumnError("plot spec names no data columns")
        if self.n_levels < 1:
            raise ValueError("n_levels must be >= 1")


@dataclass(frozen=True)
class PanelReport:
    """Per-panel record of what was actually drawn."""

    column: str
    panel_value: float | None
    has_negative_contours: bool
    n_contour_levels: int


@dataclass(frozen=True)
class RenderReport:
    out_path: str
    panels: tuple[PanelReport, ...] = field(default_factory=tuple)


def read_sweep(path: str) -> dict[str, np.ndarray]:
    """Parse a sweep CSV into float columns, skipping comment lines."""
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    if not rows:
        raise RaggedGridError(f"{path}: no data rows")
    header, body = rows[0], rows[1:]
    out: dict[str, np.ndarray] = {}
    for j, name in enumerate(header):
        if name == "error":
            continue
        try:
            out[name] = np.array([float(r[j]) for r in body])
        except (ValueError, IndexError) as e:
            raise RaggedGridError(f"{path}: column {name!r} is not numeric") from e
    return out


def _require(data: dict[str, np.ndarray], names) -> None:
    missing = [n for n in names if n and n not in data]
    if missing:
        raise MissingColumnError(f"columns not in CSV header: {missing}")


def _panel_values(data, spec):
    if spec.panel is None:
        return [None]
    return [float(v) for v in np.unique(data[spec.panel])]


def _panel_mask(data, spec, pv):
    if pv is None:
        return np.ones(len(data[spec.x]), dtype=bool)
    return data[spec.panel] == pv


def _grid(data, spec, mask):
    """Reshape one panel's rows onto a rectangular (y, x) grid."""
    xv, yv = data[spec.x][mask], data[spec.y][mask]
    xs, ys = np.unique(xv), np.unique(yv)
    if len(xs) * len(ys) != mask.sum():
        raise RaggedGridError(
            f"{mask.sum()} rows do not fill a {len(ys)}x{len(xs)} grid"
        )
    ix = np.searchsorted(xs, xv)
    iy = np.searchsorted(ys, yv)
    return xs, ys, ix, iy


def signed_log_levels(values: np.ndarray, n: int):
    """Log-spaced contour levels for each sign of the data.

    Returns (negative_magnitudes, positive_levels); magnitudes span at most
    six decades below the extreme of each sign.
    """

    def one_sign(mags: np.ndarray) -> np.ndarray:
        if mags.size == 0:
            return np.array([])
        hi = float(mags.max())
        lo = max(float(mags.min()), hi * 1e-6)
        if hi <= 0.0:
            return np.array([])
        if lo >= hi:
            return np.array([hi])
        return np.geomspace(lo, hi, n)

    finite = values[np.isfinite(values)]
    return one_sign(-finite[finite < 0.0]), one_sign(finite[finite > 0.0])


def _layout(n_panels: int):
    ncols = min(n_panels, 3)
    nrows = -(-n_panels // ncols)
    return nrows, ncols


def render_contour(spec: PlotSpec) -> RenderReport:
    """Draw log-axis contour panels, dashing the negative-valued contours."""
    data = read_sweep(spec.csv_path)
    _require(data, (spec.x, spec.y, spec.panel, *spec.columns))
    panel_vals = _panel_values(data, spec)
    jobs = [(c, pv) for c in spec.columns for pv in panel_vals]
    nrows, ncols = _layout(len(jobs))
    with plt.rc_context(_RC):
        fig, axes = plt.subplots(
            nrows, ncols, figsize=(3.2 * ncols, 2.6 * nrows), squeeze=False
        )
        reports = []
        for k, (col, pv) in enumerate(jobs):
            ax = axes[k // ncols][k % ncols]
            mask = _panel_mask(data, spec, pv)
            xs, ys, ix, iy = _grid(data, spec, mask)
            z = np.full((len(ys), len(xs)), np.nan)
            z[iy, ix] = data[col][mask]
            neg, pos = signed_log_levels(z, spec.n_levels)
            drew_negative = False
            if pos.size > 1:
                ax.contour(xs, ys, z, levels=pos, colors="black",
                           linestyles="solid", linewidths=0.8)
            elif np.isfinite(z).any():
                # constant or single-signed flat data: filled single level
                ax.contourf(xs, ys, z, levels=1)
            if neg.size and spec.dashed_negative:
                ax.contour(xs, ys, z, levels=sorted(-neg), colors="black",
                           linestyles="dashed", linewidths=0.8)
                drew_negative = True
            if spec.log_x:
                ax.set_xscale("log")
            if spec.log_y:
                ax.set_yscale("log")
            ax.set_xlabel(spec.x)
            ax.set_ylabel(spec.y)
            title = col if pv is None else f"{col} @ {spec.panel}={pv:g}"
            ax.set_title(title)
            reports.append(PanelReport(col, pv, drew_negative,
                                       int(neg.size + pos.size)))
        for k in range(len(jobs), nrows * ncols):
            axes[k // ncols][k % ncols].set_axis_off()
        fig.tight_layout()
        fig.savefig(spec.out_path)
        plt.close(fig)
    return RenderReport(out_path=spec.out_path, panels=tuple(reports))


def render_lines(spec: PlotSpec) -> RenderReport:
    """Draw per-order magnitude curves: order 2 solid, 3 dash-dot, 4 dotted.

    spec.columns names base quantities; the CSV must carry the per-order
    columns quantity_2, quantity_3, quantity_4.
    """
    data = read_sweep(spec.csv_path)
    needed = [f"{q}_{o}" for q in spec.columns for o, _ in _ORDER_STYLES]
    _require(data, (spec.x, spec.panel, *needed))
    panel_vals = _panel_values(data, spec)
    jobs = [(q, pv) for q in spec.columns for pv in panel_vals]
    nrows, ncols = _layout(len(jobs))
    with plt.rc_context(_RC):
        fig, axes = plt.subplots(
            nrows, ncols, figsize=(3.2 * ncols, 2.6 * nrows), squeeze=False
        )
        reports = []
        for k, (q, pv) in enumerate(jobs):
            ax = axes[k // ncols][k % ncols]
            mask = _panel_mask(data, spec, pv)
            order = np.argsort(data[spec.x][mask])
            xv = data[spec.x][mask][order]
            any_negative = False
            for o, style in _ORDER_STYLES:
                yv = data[f"{q}_{o}"][mask][order]
                any_negative = any_negative or bool(np.any(yv < 0.0))
                marker = "o" if len(xv) == 1 else None
                ax.plot(xv, np.abs(yv), color="black", linestyle=style,
                        linewidth=1.0, marker=marker, label=f"order {o}")
            if spec.log_x:
                ax.set_xscale("log")
            if spec.log_y:
                ax.set_yscale("log")
            ax.set_xlabel(spec.x)
            ax.set_ylabel(f"|{q}|")
            title = q if pv is None else f"{q} @ {spec.panel}={pv:g}"
            ax.set_title(title)
            ax.legend(fontsize=7)
            reports.append(PanelReport(q, pv, any_negative, 0))
        for k in range(len(jobs), nrows * ncols):
            axes[k // ncols][k % ncols].set_axis_off()
        fig.tight_layout()
        fig.savefig(spec.out_path)
        plt.close(fig)
    return RenderReport(out_path=spec.out_path, panels=tuple(reports))
