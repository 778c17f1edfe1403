#!/usr/bin/env python3
"""Fiber survey: per-fiber exact counts against the ternary-form box bound,
with the worst count/bound ratios listed at the end."""

import argparse
import sys

from delpezzo4 import quadrics


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-height", type=int, default=2000)
    ap.add_argument("--rmax", type=int, default=20, help="fiber key cap max(|r|,|s|)")
    ap.add_argument("--out", default=None, help="CSV path (default stdout)")
    ap.add_argument("--worst", type=int, default=5, help="how many worst ratios to report")
    args = ap.parse_args()

    rep = quadrics.hb_ratio_survey(args.max_height, args.rmax)
    lines = ["r,s,count,hb_bound,ratio"]
    for r, s, count, bound, ratio in rep.rows:
        lines.append(f"{r},{s},{count},{bound:.6f},{ratio:.6f}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    print(f"{len(rep.rows)} fibers, max ratio {rep.max_ratio:.4f}, "
          f"mean {rep.mean_ratio:.4f}, halves {rep.first_half_max:.4f} / "
          f"{rep.second_half_max:.4f}, ok = {rep.ok}", file=sys.stderr)
    worst = sorted(rep.rows, key=lambda row: -row[4])[:args.worst]
    for r, s, count, bound, ratio in worst:
        print(f"  ({r},{s}): {count} / {bound:.2f} = {ratio:.4f}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
