"""Command line front end: ``nlos-sim-plot boxplot|heatmap``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import PlotKind, PlotRequest, render
from .io import SchemaError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlos-sim-plot",
        description="Render figures from simulator CSV exports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    box = sub.add_parser("boxplot", help="per-room SNR distribution boxes from a records CSV")
    heat = sub.add_parser("heatmap", help="candidate-position SNR map from a map CSV")
    for p in (box, heat):
        p.add_argument("--input", required=True, type=Path, help="CSV produced by the simulator")
        p.add_argument("--out", required=True, type=Path, help="figure file to write (png, pdf, ...)")
        p.add_argument("--title", default=None, help="figure title override")
        p.add_argument("--ylabel", default=None, help="y axis label override")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    kind = PlotKind.BOXPLOT if args.command == "boxplot" else PlotKind.HEATMAP
    request = PlotRequest(
        input_path=args.input,
        kind=kind,
        output_path=args.out,
        title=args.title,
        ylabel=args.ylabel,
    )
    try:
        render(request)
    except (SchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
