"""Script entry point: render a sweep CSV from flags or a PlotSpec JSON."""

import argparse
import json
import sys

from figview.errors import FigviewError
from figview.plots import PlotSpec, render_contour, render_lines

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 4


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="figview",
        description="Render contour or line figures from sweep CSV files.",
    )
    ap.add_argument("--spec", default=None,
                    help="JSON file with PlotSpec fields plus a 'kind' key")
    ap.add_argument("--csv", default=None, help="input sweep CSV")
    ap.add_argument("--kind", choices=("contour", "lines"), default="contour")
    ap.add_argument("--columns", default=None,
                    help="comma-separated data columns (base quantities for lines)")
    ap.add_argument("--x", default="omega0_tilde")
    ap.add_argument("--y", default="Omega_tau_e")
    ap.add_argument("--panel", default=None,
                    help="column whose distinct values become panels")
    ap.add_argument("--levels", type=int, default=9)
    ap.add_argument("--no-dashed-negative", action="store_true")
    ap.add_argument("--out", default=None, help="output image path (png or svg)")
    return ap


def _spec_from_args(args) -> tuple[PlotSpec, str]:
    if args.spec is not None:
        with open(args.spec) as fh:
            doc = json.load(fh)
        kind = doc.pop("kind", "contour")
        doc["columns"] = tuple(doc["columns"])
        return PlotSpec(**doc), kind
    if args.csv is None or args.columns is None or args.out is None:
        raise FigviewError("need --spec, or --csv with --columns and --out")
    spec = PlotSpec(
        csv_path=args.csv,
        columns=tuple(c for c in args.columns.split(",") if c),
        out_path=args.out,
        x=args.x,
        y=args.y,
        panel=args.panel,
        n_levels=args.levels,
        dashed_negative=not args.no_dashed_negative,
    )
    return spec, args.kind


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec, kind = _spec_from_args(args)
        render = render_contour if kind == "contour" else render_lines
        report = render(spec)
    except FigviewError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except (TypeError, KeyError, ValueError, json.JSONDecodeError) as e:
        print(f"error: invalid spec: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    dashed = sum(1 for p in report.panels if p.has_negative_contours)
    print(f"wrote {report.out_path} ({len(report.panels)} panels, "
          f"{dashed} with dashed negatives)")
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
