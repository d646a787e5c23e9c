#!/usr/bin/env python3
"""Exhaustive determinacy sweep over a range of moduli.

For each n, enumerate all subsets of Z/nZ up to rotation, group them by
exact k-deck, and report the ambiguous classes (distinct rotation orbits
sharing a deck).

Usage: python3 scripts/run_sweep.py [--k 3] [--n-min 2] [--n-max 18] [--out FILE]
"""

import argparse
import json
import sys
import time

import trideck as td


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--n-min", type=int, default=2)
    ap.add_argument("--n-max", type=int, default=18)
    ap.add_argument("--budget", type=int, default=10**9)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    rows = []
    for n in range(args.n_min, args.n_max + 1):
        t0 = time.monotonic()
        try:
            rep = td.exhaustive_determinacy(n, args.k, budget=args.budget)
        except td.BudgetError as exc:
            print(f"n={n:3d}  skipped ({exc})")
            continue
        dt = time.monotonic() - t0
        rows.append(rep.to_json_dict())
        tag = ("all sets determined up to translation"
               if not rep.ambiguous_classes
               else f"{len(rep.ambiguous_classes)} ambiguous classes")
        print(f"n={n:3d}  k={args.k}  {rep.total_sets:8d} sets  "
              f"{tag}  ({dt:.2f}s)")
        for cls in rep.ambiguous_classes:
            print(f"         class: {[list(s) for s in cls]}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(rows, fh, indent=2, sort_keys=True)
        print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
