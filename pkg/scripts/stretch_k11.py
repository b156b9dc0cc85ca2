"""Search for an almost 11-cover of Q^6 by 27 weight-1 planes.

ceil(11 H_6) = 27 and the slack 27 - 11 H_6 = 1/20 is below 1/6, so any cover
of that size uses weight-1 planes only.  No such cover should exist, which
would give f(6, 11) = 28.  The search stops at the budget and reports what it
proved.
"""
import argparse
import json
import time

from cubecover.catalog import WEIGHT1, get_catalog
from cubecover.solver import Budget, build_instance, feasibility_at_size, verify_cover


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=11)
    ap.add_argument("--size", type=int, default=27)
    ap.add_argument("--budget-seconds", type=float, default=3600)
    ap.add_argument("--budget-nodes", type=int, default=10_000_000)
    args = ap.parse_args()

    inst = build_instance(6, args.k, get_catalog(6, WEIGHT1))
    t = time.monotonic()
    res = feasibility_at_size(inst, args.size, Budget(args.budget_nodes, args.budget_seconds))
    out = {
        "n": 6, "k": args.k, "size": args.size, "status": res.status,
        "nodes": res.stats.nodes, "lp_pivots": res.stats.lp_pivots,
        "open_bound": res.lower_bound, "seconds": round(time.monotonic() - t, 1),
    }
    if res.solution is not None:
        out["verified"] = verify_cover(6, args.k, res.solution).passed
    print(json.dumps(out, sort_keys=True))


if __name__ == "__main__":
    main()
