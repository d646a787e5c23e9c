#!/usr/bin/env python3
"""Survey the proportion of subsets of Z/nZ with a vanishing spectrum value.

Exact enumeration when 2^n is small, seeded sampling with a Wilson 95%
confidence interval otherwise.

Usage: python3 scripts/run_survey.py [--n-list 5,6,7,11,13,26] [--samples 50000]
"""

import argparse
import sys

import trideck as td


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-list", default="5,6,7,10,11,13,26,35")
    ap.add_argument("--samples", type=int, default=50000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    for n in (int(s) for s in args.n_list.split(",")):
        res = td.survey_zero_proportion(n, samples=args.samples,
                                        seed=args.seed)
        if res.mode == "exhaustive":
            print(f"n={n:3d}  exact     {str(res.exact):>12}  "
                  f"= {res.proportion:.6f}")
        else:
            print(f"n={n:3d}  sampled   {res.hits}/{res.samples}  "
                  f"= {res.proportion:.6f}  "
                  f"CI95 [{res.ci_low:.6f}, {res.ci_high:.6f}]")
    return 0


if __name__ == "__main__":
    sys.exit(main())
