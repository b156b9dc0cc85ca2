"""Plane weight recomputed by classifying permutations as good, bad or redundant.

A permutation yields the set S when S is an initial segment of it, every proper
prefix sum of coefficients is below 1 and the sum over S is exactly 1.  The
good permutations are the canonical unfoldings of cyclic arrangements (start at
the largest valid element), so ``|good| / n!`` is the plane weight, computed
here without ever enumerating subsets of the cube.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Iterable, Optional, Sequence

from cubecover.core import CapExceeded, Hyperplane, InvalidInput

MAX_ORACLE_N = 10
# below this size canonical starts are recomputed per call
CACHE_FROM_N = 8

GOOD = "Good"
BAD = "Bad"
REDUNDANT = "Redundant"


class NotOnPlane(InvalidInput):
    pass


def check_permutation(n: int, perm: Sequence[int]) -> tuple[int, ...]:
    p = tuple(perm)
    if sorted(p) != list(range(1, n + 1)):
        raise InvalidInput(f"{p} is not a permutation of 1..{n}")
    return p


@dataclass(frozen=True)
class CyclicArrangement:
    """A cyclic order of a set, stored as the rotation beginning with its minimum."""

    order: tuple[int, ...]

    def __init__(self, seq: Iterable[int]):
        s = tuple(seq)
        if not s or len(set(s)) != len(s):
            raise InvalidInput(f"bad cyclic arrangement {s}")
        j = s.index(min(s))
        object.__setattr__(self, "order", s[j:] + s[:j])

    @property
    def elements(self) -> frozenset[int]:
        return frozenset(self.order)

    def unfold(self, start: int) -> tuple[int, ...]:
        j = self.order.index(start)
        return self.order[j:] + self.order[:j]


@dataclass(frozen=True)
class YieldOutcome:
    tag: str
    yielded_set: Optional[frozenset[int]] = None

    def __post_init__(self):
        if (self.tag == BAD) != (self.yielded_set is None):
            raise ValueError("Bad outcomes carry no set and only Bad outcomes lack one")


@dataclass(frozen=True)
class GbrCounts:
    good: int
    bad: int
    redundant: int

    @property
    def total(self) -> int:
        return self.good + self.bad + self.redundant


def _prefix_yields(a: Sequence[int], d: int, seq: Sequence[int]) -> int:
    """Length of the yielded prefix of ``seq``, or 0 if it yields nothing."""
    s = 0
    for ell, i in enumerate(seq, 1):
        s += a[i - 1]
        if s == d:
            return ell
        if s > d:
            return 0
    return 0


def yields(h: Hyperplane, perm: Sequence[int]) -> Optional[frozenset[int]]:
    p = check_permutation(h.n, perm)
    a, d = h.scaled
    t = _prefix_yields(a, d, p)
    return frozenset(p[:t]) if t else None


def _valid_starts(a: Sequence[int], d: int, order: tuple[int, ...]) -> list[int]:
    t = len(order)
    out = []
    for j in range(t):
        if _prefix_yields(a, d, order[j:] + order[:j]) == t:
            out.append(order[j])
    return sorted(out)


def valid_starts(h: Hyperplane, sigma: CyclicArrangement) -> list[int]:
    a, d = h.scaled
    if max(sigma.order) > h.n:
        raise InvalidInput(f"{sigma} not inside 1..{h.n}")
    if sum(a[i - 1] for i in sigma.order) != d:
        raise NotOnPlane(f"{sorted(sigma.order)} is not covered by the plane")
    starts = _valid_starts(a, d, sigma.order)
    # every covered set has at least one valid unfolding of each cyclic order
    assert starts, f"no valid start for {sigma.order} on {h}"
    return starts


def canonical_start(h: Hyperplane, sigma: CyclicArrangement) -> int:
    return max(valid_starts(h, sigma))


def is_switchable(h: Hyperplane, sigma: CyclicArrangement) -> bool:
    return len(valid_starts(h, sigma)) >= 2


def _outcome(a, d, prefix: tuple[int, ...], cache: Optional[dict]) -> str:
    sigma = CyclicArrangement(prefix)
    if cache is None:
        start = max(_valid_starts(a, d, sigma.order))
    else:
        start = cache.get(sigma.order)
        if start is None:
            start = cache[sigma.order] = max(_valid_starts(a, d, sigma.order))
    return GOOD if prefix[0] == start else REDUNDANT


def classify(h: Hyperplane, perm: Sequence[int], cache: Optional[dict] = None) -> YieldOutcome:
    p = check_permutation(h.n, perm)
    a, d = h.scaled
    t = _prefix_yields(a, d, p)
    if not t:
        return YieldOutcome(BAD)
    if cache is None and h.n >= CACHE_FROM_N:
        raise InvalidInput(f"classify at n={h.n} requires a canonical-start cache")
    return YieldOutcome(_outcome(a, d, p[:t], cache), frozenset(p[:t]))


def _check_cap(h: Hyperplane):
    if h.n > MAX_ORACLE_N:
        raise CapExceeded(f"permutation oracle is capped at n={MAX_ORACLE_N}, got {h.n}")


def gbr_counts_bruteforce(h: Hyperplane) -> GbrCounts:
    """Classify every one of the n! permutations individually."""
    _check_cap(h)
    cache = {} if h.n >= CACHE_FROM_N else None
    tally = {GOOD: 0, BAD: 0, REDUNDANT: 0}
    for p in permutations(range(1, h.n + 1)):
        tally[classify(h, p, cache).tag] += 1
    return GbrCounts(tally[GOOD], tally[BAD], tally[REDUNDANT])


def gbr_counts(h: Hyperplane) -> GbrCounts:
    """Counts of good, bad and redundant permutations of [n].

    Permutations are walked as a prefix tree: once a prefix yields a set or
    overshoots 1, all ``(n - t)!`` completions share its outcome.
    """
    _check_cap(h)
    n = h.n
    a, d = h.scaled
    fact = [factorial(i) for i in range(n + 1)]
    cache = {} if n >= CACHE_FROM_N else None
    good = bad = redundant = 0
    prefix: list[int] = []
    used = [False] * (n + 1)

    def walk(s: int):
        nonlocal good, bad, redundant
        t = len(prefix)
        if t == n:
            bad += 1
            return
        rest = fact[n - t - 1]
        for i in range(1, n + 1):
            if used[i]:
                continue
            s2 = s + a[i - 1]
            if s2 > d:
                bad += rest
            elif s2 == d:
                prefix.append(i)
                if _outcome(a, d, tuple(prefix), cache) == GOOD:
                    good += rest
                else:
                    redundant += rest
                prefix.pop()
            else:
                used[i] = True
                prefix.append(i)
                walk(s2)
                prefix.pop()
                used[i] = False

    walk(0)
    counts = GbrCounts(good, bad, redundant)
    assert counts.total == fact[n]
    return counts


def weight_via_permutations(h: Hyperplane) -> Fraction:
    return Fraction(gbr_counts(h).good, factorial(h.n))
