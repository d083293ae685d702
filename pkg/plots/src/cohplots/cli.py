"""cohplots: render cohkit CSV outputs as figure panels."""

from __future__ import annotations

import argparse
import sys

from .render import PanelSpec, RenderError, render_panel


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cohplots", description="panel renderer")
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("render", help="render one panel from a CSV")
    r.add_argument("--panel", choices=["a", "b", "c", "d"], required=True)
    r.add_argument("--csv", required=True)
    r.add_argument("--out", required=True)
    r.add_argument("--x-label")
    r.add_argument("--y-label")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    spec = PanelSpec(panel=args.panel, csv_path=args.csv, out_path=args.out,
                     x_label=args.x_label, y_label=args.y_label)
    try:
        fig = render_panel(spec)
    except RenderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    import matplotlib.pyplot as plt

    plt.close(fig)
    print(f"wrote {args.out}")
    return 0


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
