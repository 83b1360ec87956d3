"""Command-line renderer: `figures render-cloud ...`, `figures render-atoms ...`."""

import argparse
import sys

from .render import FigureSpec, render_atoms, render_cloud


def build_parser():
    p = argparse.ArgumentParser(prog="figures",
                                description="Render magic-simplex exports")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("render-cloud", help="3D scatter from a point-cloud CSV")
    sp.add_argument("--in", dest="input_path", required=True)
    sp.add_argument("--out", dest="output_path", required=True)
    sp.add_argument("--color-by", default="label")
    sp.add_argument("--axes", default="Q1,Q2,Q3")
    sp.add_argument("--title", default=None)
    sp.add_argument("--point-size", type=float, default=2.0)
    sp.set_defaults(kind="cloud")

    sp = sub.add_parser("render-atoms", help="atom bar chart from a report JSON")
    sp.add_argument("--in", dest="input_path", required=True)
    sp.add_argument("--out", dest="output_path", required=True)
    sp.add_argument("--title", default=None)
    sp.add_argument("--log", action="store_true", help="log-scale probabilities")
    sp.set_defaults(kind="atoms")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.kind == "cloud":
            spec = FigureSpec(input_path=args.input_path,
                              output_path=args.output_path,
                              color_by=args.color_by,
                              axes=tuple(args.axes.split(",")),
                              title=args.title, point_size=args.point_size)
            render_cloud(spec)
        else:
            spec = FigureSpec(input_path=args.input_path,
                              output_path=args.output_path,
                              title=args.title, log_scale=args.log)
            render_atoms(spec)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
