#!/usr/bin/env python3
"""Sample random pure elliptic models and tabulate how rho splits between
its two admissible values chi_H and -chi_V.

Usage: python3 scripts/random_survey.py [COUNT] [SEED]
"""
import random
import sys
from collections import Counter

from elliptica import invariants, randmodels


def main(argv) -> int:
    count = int(argv[1]) if len(argv) > 1 else 50
    seed = int(argv[2]) if len(argv) > 2 else 2026
    rng = random.Random(seed)
    split = Counter()
    rho_hist = Counter()
    for i in range(count):
        m = randmodels.random_pure_model(rng, name=f"survey{i}")
        a = invariants.SullivanAnalysis(m)
        r = a.rho()
        rho_hist[r] += 1
        if a.chi_h > 0:
            split["rho = chi_H (chi_V = 0)"] += 1
        else:
            split["rho = -chi_V (chi_H = 0)"] += 1
        assert r == a.chi_h - a.chi_v
    print(f"{count} random pure elliptic models (seed {seed})")
    for k, v in sorted(split.items()):
        print(f"  {k}: {v}")
    print("  rho histogram:", dict(sorted(rho_hist.items())))
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
