"""Command line: render predictive-band or trace figures from CSV outputs.

Exit codes: 0 success, 2 bad arguments or schema violations.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .figures import FigureSpec, plot_predictive, plot_trace
from .schemas import SchemaError

SPEC_KEYS = ("bands_path", "data_path", "trace_path", "output_image_path", "title")


def _spec_from_args(args) -> FigureSpec:
    if args.spec:
        try:
            raw = json.loads(Path(args.spec).read_text(encoding="utf-8"))
        except OSError as exc:
            raise SchemaError(f"cannot read spec file: {exc}") from None
        except json.JSONDecodeError as exc:
            raise SchemaError(f"spec file is not valid JSON: {exc}") from None
        unknown = set(raw) - set(SPEC_KEYS)
        if unknown:
            raise SchemaError(f"spec file has unknown key(s): {sorted(unknown)}")
        return FigureSpec(**raw)
    return FigureSpec(
        bands_path=getattr(args, "bands", None),
        data_path=getattr(args, "observed", None),
        trace_path=getattr(args, "trace", None),
        output_image_path=args.output,
        title=args.title,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plotkit",
        description="Figures for calibration outputs: predictive bands and trace diagnostics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("predictive", help="shaded predictive band with observed overlay")
    p.add_argument("--spec", help="JSON file with FigureSpec fields")
    p.add_argument("--bands", help="predictive_bands.csv from the engine")
    p.add_argument("--observed", help="optional observed-data CSV overlay")
    p.add_argument("--output", help="image file to write")
    p.add_argument("--title", default=None)

    p = sub.add_parser("trace", help="tolerance schedule and acceptance-rate diagnostics")
    p.add_argument("--spec", help="JSON file with FigureSpec fields")
    p.add_argument("--trace", help="trace.csv from the engine")
    p.add_argument("--output", help="image file to write")
    p.add_argument("--title", default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = _spec_from_args(args)
        if args.command == "predictive":
            if not spec.bands_path:
                print("error: --bands (or a spec file) is required", file=sys.stderr)
                return 2
            if not spec.output_image_path:
                print("error: --output (or a spec file) is required", file=sys.stderr)
                return 2
            rendered = plot_predictive(spec)
        else:
            if not spec.trace_path:
                print("error: --trace (or a spec file) is required", file=sys.stderr)
                return 2
            if not spec.output_image_path:
                print("error: --output (or a spec file) is required", file=sys.stderr)
                return 2
            rendered = plot_trace(spec)
        print(f"figure written to {spec.output_image_path}")
        return 0
    except (SchemaError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
