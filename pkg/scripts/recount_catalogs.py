"""Recount weight-1 and maximal planes for small n and compare with the known counts."""
import argparse
import time
from math import comb

from cubecover.catalog import enumerate_maximal, enumerate_weight1

KNOWN_MAXIMAL = {1: 1, 2: 3, 3: 11, 4: 95, 5: 2629}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-weight1", type=int, default=6)
    ap.add_argument("--max-maximal", type=int, default=5)
    args = ap.parse_args()

    print(f"{'n':>2} {'weight-1':>9} {'C(2n-1,n)':>10} {'maximal':>8} {'known':>6} {'time_s':>7}")
    ok = True
    for n in range(1, max(args.max_weight1, args.max_maximal) + 1):
        t = time.monotonic()
        w1 = len(enumerate_weight1(n)) if n <= args.max_weight1 else None
        mx = len(enumerate_maximal(n)) if n <= args.max_maximal else None
        dt = time.monotonic() - t
        known = KNOWN_MAXIMAL.get(n)
        ok &= w1 is None or w1 == comb(2 * n - 1, n)
        ok &= mx is None or known is None or mx == known
        print(f"{n:>2} {w1 if w1 is not None else '-':>9} {comb(2 * n - 1, n):>10} "
              f"{mx if mx is not None else '-':>8} {known if known is not None else '??':>6} {dt:>7.1f}")
    print("all rows match" if ok else "MISMATCH")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
