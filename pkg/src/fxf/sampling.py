"""Random exact parameter sets for property sweeps."""

from __future__ import annotations

import random
from fractions import Fraction

from .ode import HeunParams, HGParams


def random_rat(rng: random.Random, bound: int = 6, max_den: int = 6, nonzero: bool = False) -> Fraction:
    while True:
        v = Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))
        if v or not nonzero:
            return v


def random_rat_in(rng: random.Random, lo: Fraction, hi: Fraction, max_den: int = 12) -> Fraction:
    """Uniform-ish rational strictly inside (lo, hi)."""
    while True:
        q = rng.randint(1, max_den)
        v = Fraction(rng.randint(int(lo * q) - 1, int(hi * q) + 1), q)
        if lo < v < hi:
            return v


def random_hg(rng: random.Random, bound: int = 6, max_den: int = 6, nondegenerate: bool = True) -> HGParams:
    """(a, b, c); with ``nondegenerate`` ab != 0 and c not in {0, 1}."""
    while True:
        a, b, c = (random_rat(rng, bound, max_den) for _ in range(3))
        if not nondegenerate or (a * b != 0 and c not in (0, 1)):
            return HGParams(a, b, c)


def random_hg_box(rng: random.Random, lo=Fraction(-2), hi=Fraction(2)) -> HGParams:
    while True:
        a, b, c = (random_rat_in(rng, lo, hi) for _ in range(3))
        if a * b != 0 and c not in (0, 1):
            return HGParams(a, b, c)


def random_heun(rng: random.Random, case: str = "any", bound: int = 4, max_den: int = 5) -> HeunParams:
    """Valid Heun parameters.

    ``case`` selects q relative to alpha*beta: "generic" keeps q/(alpha beta)
    off {0, 1, d}; "zero", "one", "d" force the coalescence; "any" draws q freely.
    """
    while True:
        gamma, delta, epsilon = (random_rat(rng, bound, max_den) for _ in range(3))
        d = random_rat(rng, bound, max_den)
        if d in (0, 1):
            continue
        ab = random_rat(rng, bound, max_den, nonzero=True)
        if case == "zero":
            q = Fraction(0)
        elif case == "one":
            q = ab
        elif case == "d":
            q = ab * d
        else:
            q = random_rat(rng, bound, max_den)
            if case == "generic" and q / ab in (0, 1, d):
                continue
        return HeunParams(ab, gamma + delta + epsilon - 1, gamma, delta, epsilon, d, q)


def random_inner_spec(rng: random.Random, bound: int = 3, max_den: int = 4) -> dict:
    """Constants for the inner Heun construction, avoiding the n = m mu collapse."""
    while True:
        vals = {k: random_rat(rng, bound, max_den) for k in ("a", "b", "c", "mu")}
        vals["m"] = random_rat(rng, bound, max_den, nonzero=True)
        vals["n"] = random_rat(rng, bound, max_den)
        vals["c1"] = random_rat(rng, bound, max_den, nonzero=True)
        vals["D"] = random_rat(rng, bound, max_den, nonzero=True)
        vals["lam"] = random_rat(rng, bound, max_den, nonzero=True)
        E = vals["m"] * vals["c1"] - vals["m"] * vals["mu"] + vals["n"]
        if E == 0 or vals["n"] == vals["m"] * vals["mu"]:
            continue
        return vals
