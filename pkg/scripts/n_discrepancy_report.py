"""Compare the recomputed outer-equation numerator N(x) with the printed one.

Prints a JSON report: for each random inner spec, the coefficient-wise
difference printed - recomputed and whether it equals (c-1) m mu / c1 in x^1.
"""

import argparse
import json
import random

from fxf.algebra import rat_str
from fxf.sampling import random_inner_spec
from fxf.xform import build_inner_heun, build_outer_equation, solve_eta


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=25)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    rows = []
    for _ in range(args.count):
        v = random_inner_spec(rng)
        spec = build_inner_heun(**v)
        outer = build_outer_equation(spec, solve_eta(v["D"], v["lam"], v["mu"], v["c1"]))
        expected = (v["c"] - 1) * v["m"] * v["mu"] / v["c1"]
        rows.append(
            {
                "spec": {k: rat_str(x) for k, x in v.items()},
                "N_recomputed": outer.N_recomputed.to_json(),
                "N_printed": outer.N_printed.to_json(),
                "diff": {k: rat_str(x) for k, x in outer.N_diff.items()},
                "matches_x_term": outer.N_diff == ({"x^1": expected} if expected else {}),
            }
        )
    summary = {
        "count": len(rows),
        "matches_x_term": sum(r["matches_x_term"] for r in rows),
        "nonzero_diff": sum(bool(r["diff"]) for r in rows),
        "rows": rows,
    }
    print(json.dumps(summary, indent=2))


if __name__ == "__main__":
    main()
