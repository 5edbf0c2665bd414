"""isac-figures: render benchmark CSV outputs to image files.

    isac-figures list
    isac-figures <family> --data results --out figures_out
    isac-figures all --data results --out figures_out

`all` renders every family whose input CSVs exist and reports the ones it
skipped.  Exit codes: 0 success, 1 rendering/input error, 2 unknown family.
"""
from __future__ import annotations

import argparse
import sys

from .families import FAMILIES
from .render import render_all
from .specs import EmptyCsvError, MissingColumnError


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="isac-figures")
    parser.add_argument("family", help="figure family, 'all', or 'list'")
    parser.add_argument("--data", default="results",
                        help="directory holding the benchmark CSVs")
    parser.add_argument("--out", default="figures_out")
    args = parser.parse_args(argv)

    if args.family == "list":
        for name in sorted(FAMILIES):
            print(name)
        return 0

    if args.family == "all":
        failures = 0
        for name in sorted(FAMILIES):
            try:
                written = render_all(FAMILIES[name](args.data, args.out))
            except FileNotFoundError as exc:
                print(f"skip {name}: {exc}", file=sys.stderr)
                continue
            except (MissingColumnError, EmptyCsvError) as exc:
                print(f"error in {name}: {exc}", file=sys.stderr)
                failures += 1
                continue
            for path in written:
                print(path)
        return 1 if failures else 0

    if args.family not in FAMILIES:
        print(f"error: unknown family {args.family!r}", file=sys.stderr)
        return 2
    try:
        written = render_all(FAMILIES[args.family](args.data, args.out))
    except (FileNotFoundError, MissingColumnError, EmptyCsvError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
