#!/usr/bin/env python3
"""Build a pair of subsets of Z/nZ (n = pqr even) with equal 3-decks that
are not translates of each other, then locate the first k at which their
k-decks differ.

Usage: python3 scripts/counterexample_demo.py [--p 2] [--q 3] [--r 3]
"""

import argparse
import sys

import trideck as td


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--q", type=int, default=3)
    ap.add_argument("--r", type=int, default=3)
    ap.add_argument("--kmax", type=int, default=6)
    args = ap.parse_args()

    pair = td.gm_counterexample(args.p, args.q, args.r)
    print(f"n = {pair.n}")
    print(f"E = {sorted(pair.E)}")
    print(f"F = {sorted(pair.F)}")
    print(f"construction: {pair.provenance}")

    f = td.CyclicFunction.indicator(pair.n, pair.E)
    g = td.CyclicFunction.indicator(pair.n, pair.F)
    assert td.deck_equal(td.k_deck(f, 3), td.k_deck(g, 3))
    assert td.equal_up_to_translation(f, g) is None
    print("3-decks: exactly equal; sets are not translates")

    verdict = td.verify_all_k_uniqueness(f, g, args.kmax)
    if verdict.first_differing_k is None:
        print(f"k-decks agree for all k <= {args.kmax}")
    else:
        print(f"first differing deck order: k = {verdict.first_differing_k}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
