"""Command-line interface.

    render --kind <kind> --in <csv...> --out <image>

Exit codes: 0 figure written, 2 bad arguments, unreadable input or a CSV
that does not carry the columns the kind needs.
"""

import argparse
import sys

from ._version import __version__
from .figures import KINDS, FigureSpec, SchemaError, render


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lognls-plots",
        description="Render figures from lognls CSV run outputs",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    render_p = sub.add_parser("render", help="draw one figure from CSV inputs")
    render_p.add_argument("--kind", required=True, choices=KINDS)
    render_p.add_argument(
        "--in",
        dest="inputs",
        nargs="+",
        required=True,
        metavar="CSV",
        help="input csv paths",
    )
    render_p.add_argument("--out", required=True, help="output image (.png or .svg)")
    render_p.add_argument("--title", help="figure title (defaults per kind)")
    render_p.add_argument("--xlabel", help="x axis label (defaults per kind)")
    render_p.add_argument("--ylabel", help="y axis label (defaults per kind)")
    render_p.add_argument("--dpi", type=int, default=110, help="raster resolution")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        spec = FigureSpec(
            kind=args.kind,
            inputs=tuple(args.inputs),
            out=args.out,
            title=args.title,
            xlabel=args.xlabel,
            ylabel=args.ylabel,
            dpi=args.dpi,
        )
        notes = render(spec)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {args.out}")
    for key, value in notes.items():
        if isinstance(value, float):
            print(f"  {key} = {value:.6g}")
        else:
            print(f"  {key} = {value}")
    return 0


def entry():
    raise SystemExit(main())
