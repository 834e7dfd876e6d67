"""Run the numerical identity checks over random parameters and summarise."""

import argparse
import random
import time

from fxf.ode import from_heun, from_hypergeometric
from fxf.sampling import random_heun, random_hg_box, random_inner_spec
from fxf.solve import hg_derivative_check, verify_chain_identity, verify_product_identity
from fxf.xform import build_inner_heun, build_outer_equation, companion_of, solve_eta


def product_hg(rng):
    return verify_product_identity(companion_of(from_hypergeometric(random_hg_box(rng))))


def product_heun(rng):
    return verify_product_identity(companion_of(from_heun(random_heun(rng, "generic"))))


def derivative(rng):
    p = random_hg_box(rng)
    while p.c.denominator == 1 and p.c <= 0:
        p = random_hg_box(rng)
    return hg_derivative_check(p.a, p.b, p.c)


def chain(rng):
    v = random_inner_spec(rng)
    spec = build_inner_heun(**v)
    vc = solve_eta(v["D"], v["lam"], v["mu"], v["c1"])
    return verify_chain_identity(spec, vc, build_outer_equation(spec, vc))


CHECKS = {"product-hg": product_hg, "product-heun": product_heun, "derivative": derivative, "chain": chain}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--only", choices=sorted(CHECKS))
    args = ap.parse_args()

    for name, fn in CHECKS.items():
        if args.only and name != args.only:
            continue
        rng = random.Random(args.seed)
        t0 = time.perf_counter()
        reports = [fn(rng) for _ in range(args.count)]
        worst = max(float(r.max_residual) for r in reports)
        passed = sum(r.passed for r in reports)
        skipped = sum(len(r.skipped_points) for r in reports)
        print(
            f"{name:14s} pass {passed:3d}/{len(reports)}  worst residual {worst:.2e}  "
            f"skipped points {skipped}  {time.perf_counter() - t0:.2f}s"
        )


if __name__ == "__main__":
    main()
