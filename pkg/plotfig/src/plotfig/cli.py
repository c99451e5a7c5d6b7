"""plotfig command line: render nessprobe figure CSV sets into images."""

from __future__ import annotations

import argparse
import sys

from .render import FIGURE_PANELS, PlotDataError, build_spec, render


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="plotfig", description=__doc__)
    parser.add_argument("figure_id", choices=sorted(FIGURE_PANELS))
    parser.add_argument("--in", dest="indir", default=".", help="directory holding the figure CSV files")
    parser.add_argument("--out", dest="outdir", default=".", help="directory for the rendered image")
    parser.add_argument("--format", choices=("png", "svg"), default="png")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        spec = build_spec(args.figure_id, args.indir, args.outdir, args.format)
        result = render(spec)
    except PlotDataError as exc:
        print(f"plotfig error: {exc}", file=sys.stderr)
        return 1
    print(result.path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
