"""Exact f(n, k) over the maximal-plane catalog for a small grid, with certificates."""
import argparse
import json

from cubecover.catalog import MAXIMAL
from cubecover.solver import Budget, compute_f


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--k", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--budget-seconds", type=float, default=600)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    for n in args.n:
        for k in args.k:
            res = compute_f(n, k, MAXIMAL, Budget(max_seconds=args.budget_seconds))
            if args.json:
                print(json.dumps(res.record(), sort_keys=True))
            else:
                print(f"n={n} k={k} status={res.status} f={res.value} lower={res.lower} "
                      f"nodes={res.stats.nodes} time={res.stats.wall_time:.1f}s")


if __name__ == "__main__":
    main()
