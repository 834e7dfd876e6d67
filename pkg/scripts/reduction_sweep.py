"""Sweep (a, b, c, m, n) over a small rational grid and tally reduction branches.

Shows that every branch found by exact elimination has mu = n/m (so d = 1),
apart from the a n = b m continuum, which is reported separately.
"""

import argparse
import itertools
from collections import Counter
from fractions import Fraction

from fxf.xform import IndeterminateSystem, NoSolution, reduce_to_hypergeometric


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--span", type=int, default=1, help="integers in [-span, span], halves included")
    args = ap.parse_args()

    grid = sorted({Fraction(k, 2) for k in range(-2 * args.span, 2 * args.span + 1)})
    tally = Counter()
    mu_is_n_over_m = 0
    for a, b, c, m, n in itertools.product(grid, grid, grid[:: max(1, len(grid) // 5)], grid, grid[:: max(1, len(grid) // 5)]):
        if m == 0:
            continue
        try:
            sols = reduce_to_hypergeometric(a, b, c, m, n)
        except IndeterminateSystem:
            tally["continuum (a n = b m)"] += 1
            continue
        except NoSolution:
            tally["no solution"] += 1
            continue
        for s in sols:
            tally[s.branch] += 1
            mu_is_n_over_m += s.mu == n / m
            for flag in s.degeneracies:
                tally["flag:" + flag] += 1
    for key, val in sorted(tally.items()):
        print(f"{key:40s} {val}")
    total = tally["closed_form_branch"] + tally["alternate_branch"]
    print(f"{'branches with mu = n/m':40s} {mu_is_n_over_m} of {total}")


if __name__ == "__main__":
    main()
