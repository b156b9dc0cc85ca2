"""Status of f(6, k) for a range of k: lower bound, composed upper bound, and whether they meet.

Upper bounds come from concatenating bundled covers (only the 49-plane
almost 20-cover ships with the package), so k not divisible by 20 stays open
unless more covers are supplied with --cover K=PATH.
"""
import argparse

from cubecover.bounds import NoBound, combine_upper, weight1_forced
from cubecover.solver import known_covers, load_cover, lower_certificate, verify_cover


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-max", type=int, default=80)
    ap.add_argument("--cover", action="append", default=[], metavar="K=PATH",
                    help="extra verified almost K-cover of Q^6")
    args = ap.parse_args()

    sizes = {k: sum(m for _, m in c) for (n, k), c in known_covers().items() if n == 6}
    for entry in args.cover:
        k, path = entry.split("=", 1)
        cover = load_cover(path, 6)
        if not verify_cover(6, int(k), cover).passed:
            raise SystemExit(f"{path} is not an almost {k}-cover")
        sizes[int(k)] = min(sizes.get(int(k), 10**9), sum(m for _, m in cover))

    print(f"{'k':>3} {'lower':>5} {'upper':>5} {'forced':>6}  status")
    solved = 0
    for k in range(1, args.k_max + 1):
        lower = lower_certificate(6, k)["final_lower"]
        try:
            upper = combine_upper(sizes, k)
        except NoBound:
            upper = None
        status = f"f(6,{k})={upper}" if upper == lower else "open"
        solved += upper == lower
        print(f"{k:>3} {lower:>5} {upper if upper is not None else '-':>5} "
              f"{str(weight1_forced(6, k)).lower():>6}  {status}")
    print(f"settled {solved} of {args.k_max}")


if __name__ == "__main__":
    main()
