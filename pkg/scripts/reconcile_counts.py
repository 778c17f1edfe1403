#!/usr/bin/env python3
"""Cross-check the two exact counters over a range of height bounds and
report per-bound timings."""

import argparse
import sys

from delpezzo4 import counting
from delpezzo4.errors import MismatchError


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-height", type=int, default=100)
    ap.add_argument("--spots", type=int, nargs="*", default=[],
                    help="extra bounds to check beyond the 1..max range")
    args = ap.parse_args()

    bounds = list(range(1, args.max_height + 1)) + sorted(args.spots)
    try:
        rep = counting.reconcile(bounds)
    except MismatchError as err:
        print(f"MISMATCH at B = {err.B}: brute-only {err.brute_only[:5]}, "
              f"fiber-only {err.fiber_only[:5]}", file=sys.stderr)
        return 2
    print("B,count,brute_seconds,fiber_seconds")
    for b, n, tb, tf in rep.rows:
        print(f"{b},{n},{tb:.3f},{tf:.3f}")
    total_b = sum(row[2] for row in rep.rows)
    total_f = sum(row[3] for row in rep.rows)
    print(f"{len(rep.rows)} bounds agree; brute {total_b:.1f}s, "
          f"fiber {total_f:.1f}s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
