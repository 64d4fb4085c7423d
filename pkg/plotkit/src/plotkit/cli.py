"""esdplot: render a figure analog from esdlab CSV files."""

from __future__ import annotations

import argparse
import sys

from plotkit.csvdata import SchemaError
from plotkit.figures import FIGURE_IDS, FigureSpec, render


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="esdplot",
                                 description="Static figure renderers for esdlab CSVs")
    ap.add_argument("--figure", choices=FIGURE_IDS, required=True)
    ap.add_argument("--in", dest="inputs", nargs="+", required=True,
                    metavar="CSV", help="input CSV files, order per figure docs")
    ap.add_argument("--out", required=True, help="output image path")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = FigureSpec(figure_id=args.figure, input_paths=args.inputs,
                          out_path=args.out)
        result = render(spec)
    except (SchemaError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    print(f"wrote {result.out_path} ({result.n_series} series)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
