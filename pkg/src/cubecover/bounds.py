"""Lower and upper bound arithmetic for f(n, k), all in exact rationals."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, comb
from typing import Mapping


class NoBound(ValueError):
    """The target multiplicity cannot be composed from the known covers."""


@dataclass(frozen=True)
class HarmonicFraction:
    n: int
    value: Fraction

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator


@lru_cache(maxsize=None)
def harmonic(n: int) -> HarmonicFraction:
    if n < 1:
        raise ValueError(f"harmonic number needs n >= 1, got {n}")
    return HarmonicFraction(n, sum((Fraction(1, s) for s in range(1, n + 1)), Fraction(0)))


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def lp_lower_bound(n: int, k: int) -> int:
    if n < 1 or k < 1:
        raise ValueError("need n, k >= 1")
    return _ceil(k * harmonic(n).value)


def deficit(n: int, k: int) -> Fraction:
    """``ceil(k H_n) - k H_n``."""
    kh = k * harmonic(n).value
    return _ceil(kh) - kh


def improvement_threshold(n: int) -> Fraction:
    """Smallest positive term in the cover accounting identity: 1/(n C(n-1, n//2))."""
    return Fraction(1, n * comb(n - 1, n // 2))


@dataclass(frozen=True)
class BoundReport:
    n: int
    k: int
    lp_bound: int
    improved: bool
    final_lower: int
    weight1_forced: bool
    threshold: Fraction
    deficit: Fraction


def improved_lower_bound(n: int, k: int) -> BoundReport:
    if k < 2:
        raise ValueError(f"improved bound needs k >= 2, got {k}")
    lp = lp_lower_bound(n, k)
    gap = deficit(n, k)
    thr = improvement_threshold(n)
    improved = 0 < gap < thr
    return BoundReport(n, k, lp, improved, lp + improved, weight1_forced(n, k), thr, gap)


def weight1_forced(n: int, k: int) -> bool:
    """True when a cover of size ceil(k H_n) could only use weight-1 planes.

    Any other plane loses at least 1/n of weight, more than the available
    slack.  A zero deficit counts as forced.
    """
    return deficit(n, k) < Fraction(1, n)


def plusone_residues(n: int) -> list[int]:
    """Residues k0 mod d_n on which the improved bound fires for every k >= 2."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    h = harmonic(n)
    c, d = h.numerator, h.denominator
    limit = Fraction(d) / (n * comb(n - 1, n // 2))
    inv = pow(c, -1, d) if d > 1 else 0
    out = {(-r * inv) % d for r in range(1, ceil(limit)) if r < limit}
    return sorted(out)


def combine_upper(known: Mapping[int, int], target_k: int) -> int:
    """Fewest planes over exact compositions ``sum(m_k * k) == target_k`` of known covers.

    Concatenating an almost a-cover and an almost b-cover gives an almost
    (a+b)-cover, so this is an unbounded knapsack over ``known``.
    """
    if not known:
        raise NoBound("no known covers")
    if target_k < 1:
        raise ValueError("target must be positive")
    INF = None
    best: list = [0] + [INF] * target_k
    for t in range(1, target_k + 1):
        for k, u in known.items():
            if k <= t and best[t - k] is not INF:
                cand = best[t - k] + u
                if best[t] is INF or cand < best[t]:
                    best[t] = cand
    if best[target_k] is INF:
        raise NoBound(f"{target_k} is not a sum of {sorted(known)}")
    return best[target_k]


def combine_plan(known: Mapping[int, int], target_k: int) -> dict[int, int]:
    """Multiplicities of each known k realising :func:`combine_upper`."""
    value = combine_upper(known, target_k)
    plan: dict[int, int] = {}
    t, left = target_k, value
    while t:
        for k in sorted(known):
            u = known[k]
            if k <= t and u <= left:
                try:
                    rest = combine_upper(known, t - k) if t > k else 0
                except NoBound:
                    continue
                if rest == left - u:
                    plan[k] = plan.get(k, 0) + 1
                    t, left = t - k, left - u
                    break
        else:
            raise AssertionError("knapsack reconstruction failed")
    return plan
