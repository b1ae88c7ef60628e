"""Command-line entry point: render --spec fig2 --in DIR --out DIR."""

import argparse
import pathlib
import sys

from .render import FIGURES, FigureSpec, RenderError, render


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="render", description="regenerate summary figures from run CSVs")
    parser.add_argument("--spec", required=True, choices=sorted(FIGURES),
                        help="figure to render")
    parser.add_argument("--in", dest="in_dir", required=True,
                        help="directory of simulation CSV outputs")
    parser.add_argument("--out", required=True, help="output image directory")
    parser.add_argument("--dpi", type=int, default=150)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    spec = FigureSpec(figure=args.spec, in_dir=pathlib.Path(args.in_dir),
                      out_dir=pathlib.Path(args.out), style={"dpi": args.dpi})
    try:
        out = render(spec)
    except RenderError as exc:
        print(f"render: error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
