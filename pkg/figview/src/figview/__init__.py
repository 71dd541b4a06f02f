"""figview: contour and line figures from embath sweep CSV files."""

from figview.errors import FigviewError, MissingColumnError, RaggedGridError
from figview.plots import (
    PanelReport,
    PlotSpec,
    RenderReport,
    read_sweep,
    render_contour,
    render_lines,
    signed_log_levels,
)

__version__ = "1.0.0"

__all__ = [
    "FigviewError",
    "MissingColumnError",
    "RaggedGridError",
    "PanelReport",
    "PlotSpec",
    "RenderReport",
    "read_sweep",
    "render_contour",
    "render_lines",
    "signed_log_levels",
    "__version__",
]
