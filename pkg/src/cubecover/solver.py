"""Cover instances, cover verification, exact LP relaxation and branch and bound.

An almost k-cover is a multiset of origin-avoiding planes covering every
nonzero vertex of Q^n at least k times.  Over a fixed plane catalog this is
the integer program ``min sum(x)`` subject to ``sum(x_h : h covers S) >= k``.
"""
from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import floor
from typing import Iterable, Mapping, Optional, Sequence

from cubecover.bounds import (
    combine_plan,
    combine_upper,
    harmonic,
    improved_lower_bound,
    lp_lower_bound,
    NoBound,
    weight1_forced,
)
from cubecover.catalog import MAXIMAL, WEIGHT1, PlaneCatalog, get_catalog
from cubecover.core import (
    Hyperplane,
    InvalidInput,
    ParseError,
    canonical_masks,
    covered_masks,
    mask_weight,
    parse_rational,
    plane_weight,
)
from cubecover.simplex import DANTZIG, GE, LE, OPTIMAL, solve_lp

INFEASIBLE = "Infeasible"
FEASIBLE = "Feasible"
BUDGET_EXCEEDED = "BudgetExceeded"

Cover = list[tuple[Hyperplane, int]]


# ---------- instances and solutions ----------

@dataclass(frozen=True)
class CoverInstance:
    n: int
    k: int
    catalog: PlaneCatalog
    points: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]

    @property
    def num_vars(self) -> int:
        return len(self.catalog)


def build_instance(n: int, k: int, catalog: PlaneCatalog) -> CoverInstance:
    if catalog.n != n:
        raise InvalidInput(f"catalog has dimension {catalog.n}, expected {n}")
    if k < 0:
        raise InvalidInput("k must be nonnegative")
    points = canonical_masks(n)
    where = {m: [] for m in points}
    for j, pts in enumerate(catalog.covered):
        for m in pts:
            where[m].append(j)
    return CoverInstance(n, k, catalog, points, tuple(tuple(where[m]) for m in points))


@dataclass(frozen=True)
class CoverSolution:
    x: tuple[int, ...]
    planes: tuple[Hyperplane, ...]

    @property
    def total(self) -> int:
        return sum(self.x)

    def as_cover(self) -> Cover:
        return [(h, m) for h, m in zip(self.planes, self.x) if m]


@dataclass(frozen=True)
class CoverVerdict:
    passed: bool
    n: int
    k: int
    total: int
    coverage: dict
    min_coverage: int
    max_coverage: int

    @property
    def uncovered(self) -> list[int]:
        return [m for m, c in self.coverage.items() if c < self.k]

    def histogram(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.coverage.values():
            out[c] = out.get(c, 0) + 1
        return dict(sorted(out.items()))


def coverage_counts(n: int, cover: Iterable[tuple[Hyperplane, int]]) -> dict[int, int]:
    cov = {m: 0 for m in canonical_masks(n)}
    for h, mult in cover:
        if h.n != n:
            raise InvalidInput(f"plane {h} has dimension {h.n}, expected {n}")
        for m in covered_masks(h):
            cov[m] += mult
    return cov


def verify_cover(n: int, k: int, cover) -> CoverVerdict:
    """Check that every nonzero vertex is covered at least k times.

    ``cover`` is a list of ``(plane, multiplicity)`` pairs or a CoverSolution.
    Planes never contain the origin, since every plane has right-hand side 1.
    """
    if isinstance(cover, CoverSolution):
        cover = cover.as_cover()
    cover = list(cover)
    if any(mult < 0 for _, mult in cover):
        raise InvalidInput("negative multiplicity")
    cov = coverage_counts(n, cover)
    lo, hi = min(cov.values()), max(cov.values())
    return CoverVerdict(lo >= k, n, k, sum(m for _, m in cover), cov, lo, hi)


@dataclass(frozen=True)
class Accounting:
    """Both sides of ``|H| - k H_n = sum_S (cov(S) - k) w(S) + sum_h (1 - w(h)) x_h``."""

    size_slack: Fraction
    coverage_term: Fraction
    plane_term: Fraction

    @property
    def balanced(self) -> bool:
        return self.size_slack == self.coverage_term + self.plane_term


def accounting(n: int, k: int, cover) -> Accounting:
    if isinstance(cover, CoverSolution):
        cover = cover.as_cover()
    cover = list(cover)
    cov = coverage_counts(n, cover)
    total = sum(m for _, m in cover)
    lhs = total - k * harmonic(n).value
    cterm = sum(((c - k) * mask_weight(n, m) for m, c in cov.items()), Fraction(0))
    pterm = sum(((1 - plane_weight(h)) * mult for h, mult in cover), Fraction(0))
    return Accounting(lhs, cterm, pterm)


# ---------- cover files ----------

def parse_cover(text: str, n: Optional[int] = None) -> Cover:
    """Parse a cover file: one plane per line, optional ``x <m>`` multiplicity suffix."""
    cover: Cover = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        mult = 1
        if len(toks) >= 2 and toks[-2] == "x":
            try:
                mult = int(toks[-1])
            except ValueError:
                raise ParseError(f"bad multiplicity {toks[-1]!r}", lineno) from None
            if mult < 0:
                raise ParseError("negative multiplicity", lineno)
            toks = toks[:-2]
        if n is None:
            n = len(toks)
        if len(toks) != n:
            raise ParseError(f"expected {n} coefficients, got {len(toks)}", lineno)
        try:
            cover.append((Hyperplane(parse_rational(t) for t in toks), mult))
        except InvalidInput as e:
            raise ParseError(str(e), lineno) from None
    return cover


def format_cover(cover: Iterable[tuple[Hyperplane, int]], header: str = "") -> str:
    lines = [f"# {h}" for h in header.splitlines()] if header else []
    for h, mult in cover:
        lines.append(str(h) if mult == 1 else f"{h} x {mult}")
    return "\n".join(lines) + "\n"


def load_cover(path, n: Optional[int] = None) -> Cover:
    with open(path, encoding="utf-8") as f:
        return parse_cover(f.read(), n)


def bundled_q6_cover() -> Cover:
    """The bundled 49-plane almost 20-cover of Q^6."""
    text = resources.files("cubecover").joinpath("data/q6_k20_cover.txt").read_text("utf-8")
    return parse_cover(text, 6)


# (n, k) -> bundled cover realising the best known size
def known_covers() -> dict[tuple[int, int], Cover]:
    return {(6, 20): bundled_q6_cover()}


# ---------- LP relaxation ----------

@dataclass(frozen=True)
class LpSolution:
    status: str
    objective: Optional[Fraction]
    x: Optional[tuple[Fraction, ...]]
    pivots: int = 0


def _node_lp(inst: CoverInstance, lo: Sequence[int], hi: Sequence[Optional[int]],
             size_cap: Optional[int], rule: str) -> LpSolution:
    """LP over ``y = x - lo`` with the node's bounds; returns values of x."""
    nv = inst.num_vars
    if nv == 0:
        ok = inst.k <= 0 and (size_cap is None or size_cap >= 0)
        return LpSolution(OPTIMAL if ok else INFEASIBLE, Fraction(0) if ok else None, () if ok else None)
    base = sum(lo)
    rows = []
    for r in inst.rows:
        need = inst.k - sum(lo[j] for j in r)
        if need <= 0:
            continue
        if not r:
            return LpSolution(INFEASIBLE, None, None)
        a = [0] * nv
        for j in r:
            a[j] = 1
        rows.append((a, GE, need))
    for j in range(nv):
        if hi[j] is not None:
            if hi[j] < lo[j]:
                return LpSolution(INFEASIBLE, None, None)
            a = [0] * nv
            a[j] = 1
            rows.append((a, LE, hi[j] - lo[j]))
    if size_cap is not None:
        if size_cap < base:
            return LpSolution(INFEASIBLE, None, None)
        rows.append(([1] * nv, LE, size_cap - base))
    if not rows:
        return LpSolution(OPTIMAL, Fraction(base), tuple(Fraction(v) for v in lo))
    res = solve_lp([1] * nv, rows, rule=rule)
    if res.status != OPTIMAL:
        return LpSolution(INFEASIBLE, None, None, res.pivots)
    x = tuple(Fraction(l) + y for l, y in zip(lo, res.x))
    return LpSolution(OPTIMAL, res.objective + base, x, res.pivots)


def lp_relax(inst: CoverInstance, rule: str = DANTZIG) -> LpSolution:
    """Exact optimum of ``min sum(x)`` s.t. coverage >= k, x >= 0."""
    nv = inst.num_vars
    return _node_lp(inst, [0] * nv, [None] * nv, None, rule)


# ---------- branch and bound ----------

@dataclass
class SearchStats:
    nodes: int = 0
    lp_pivots: int = 0
    wall_time: float = 0.0


@dataclass(frozen=True)
class Budget:
    max_nodes: Optional[int] = None
    max_seconds: Optional[float] = None


@dataclass
class IlpResult:
    status: str
    solution: Optional[CoverSolution]
    lower_bound: Optional[int]
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def total(self) -> Optional[int]:
        return None if self.solution is None else self.solution.total


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def _branch_var(x: Sequence[Fraction]) -> Optional[int]:
    best, key = None, None
    half = Fraction(1, 2)
    for j, v in enumerate(x):
        f = v - floor(v)
        if f:
            d = abs(f - half)
            if key is None or d < key:
                best, key = j, d
    return best


def _branch_and_bound(inst: CoverInstance, budget: Budget, size_cap: Optional[int],
                      start: Optional[Sequence[int]], rule: str) -> IlpResult:
    """Best-first search; ties go to the deeper node, then the earlier one.

    With ``size_cap`` the search stops at the first cover of at most that
    many planes (padded up to exactly ``size_cap``); otherwise it proves
    optimality by exhausting the tree.
    """
    t0 = time.monotonic()
    stats = SearchStats()
    nv = inst.num_vars
    planes = inst.catalog.planes
    # we look for covers strictly smaller than `cutoff`
    cutoff = size_cap + 1 if size_cap is not None else None
    best: Optional[tuple[int, ...]] = None

    def finish(status, bound):
        stats.wall_time = time.monotonic() - t0
        sol = None
        if best is not None:
            x = list(best)
            if size_cap is not None and sum(x) < size_cap:
                x[0] += size_cap - sum(x)
            sol = CoverSolution(tuple(x), planes)
        return IlpResult(status, sol, bound, stats)

    def offer(x: Sequence[int]) -> bool:
        nonlocal best, cutoff
        tot = sum(x)
        if cutoff is None or tot < cutoff:
            best = tuple(x)
            if size_cap is None:
                cutoff = tot
            return True
        return False

    if start is not None:
        sx = tuple(int(v) for v in start)
        if len(sx) != nv:
            raise InvalidInput("start solution has the wrong length")
        if verify_cover(inst.n, inst.k, CoverSolution(sx, planes)).passed:
            offer(sx)
            if size_cap is not None:
                return finish(FEASIBLE, None)

    def solve(lo, hi):
        res = _node_lp(inst, lo, hi, size_cap, rule)
        stats.nodes += 1
        stats.lp_pivots += res.pivots
        return res

    def out_of_budget() -> bool:
        if budget.max_nodes is not None and stats.nodes >= budget.max_nodes:
            return True
        return budget.max_seconds is not None and time.monotonic() - t0 >= budget.max_seconds

    heap: list = []
    seq = 0

    def consider(lo, hi, depth) -> bool:
        """Solve a node; push it or record a cover.  True when a size-capped search is done."""
        nonlocal seq
        res = solve(lo, hi)
        if res.status != OPTIMAL:
            return False
        bound = _ceil(res.objective)
        if cutoff is not None and bound >= cutoff:
            return False
        rounded = [_ceil(v) for v in res.x]
        if _branch_var(res.x) is None:
            offer(rounded)
            return size_cap is not None
        if offer(rounded) and size_cap is not None:
            return True
        if cutoff is not None and bound >= cutoff:
            return False
        heapq.heappush(heap, (res.objective, -depth, seq, lo, hi, res.x))
        seq += 1
        return False

    if out_of_budget():
        return finish(BUDGET_EXCEEDED, None)
    if consider([0] * nv, [None] * nv, 0):
        return finish(FEASIBLE, None)
    if not heap and best is None:
        return finish(INFEASIBLE, None)

    while heap:
        obj, negdepth, _, lo, hi, x = heapq.heappop(heap)
        if cutoff is not None and _ceil(obj) >= cutoff:
            continue
        if out_of_budget():
            heapq.heappush(heap, (obj, negdepth, -1, lo, hi, x))
            bound = min(_ceil(item[0]) for item in heap)
            if cutoff is not None:
                bound = min(bound, cutoff)
            return finish(BUDGET_EXCEEDED, bound)
        j = _branch_var(x)
        v = x[j]
        up_lo = list(lo)
        up_lo[j] = _ceil(v)
        down_hi = list(hi)
        down_hi[j] = floor(v)
        depth = 1 - negdepth
        if consider(up_lo, hi, depth):
            return finish(FEASIBLE, None)
        if consider(lo, down_hi, depth):
            return finish(FEASIBLE, None)

    if size_cap is not None:
        return finish(INFEASIBLE, None)
    if best is None:
        return finish(INFEASIBLE, None)
    return finish(OPTIMAL, sum(best))


def ilp_solve(inst: CoverInstance, budget: Budget = Budget(),
              start: Optional[Sequence[int]] = None, rule: str = DANTZIG) -> IlpResult:
    """Minimum-size cover over the instance's catalog, proven by an exhausted tree."""
    return _branch_and_bound(inst, budget, None, start, rule)


def feasibility_at_size(inst: CoverInstance, m: int, budget: Budget = Budget(),
                        start: Optional[Sequence[int]] = None, rule: str = DANTZIG) -> IlpResult:
    """Decide whether a cover with exactly ``m`` planes exists.

    The LP at every node carries the extra row ``sum(x) <= m``; a smaller
    cover found on the way is padded with copies of one plane.
    """
    if m < 0:
        raise InvalidInput("size must be nonnegative")
    return _branch_and_bound(inst, budget, m, start, rule)


# ---------- f(n, k) ----------

@dataclass
class FResult:
    n: int
    k: int
    space: str
    status: str
    value: Optional[int]
    exact: bool
    lower: int
    witness: Optional[Cover]
    method: str
    certificate: dict
    stats: SearchStats = field(default_factory=SearchStats)

    def record(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "space": self.space,
            "objective": self.value,
            "status": self.status,
            "nodes": self.stats.nodes,
            "time_ms": round(self.stats.wall_time * 1000),
            "certificate": self.certificate,
        }


def lower_certificate(n: int, k: int) -> dict:
    lp = lp_lower_bound(n, k)
    cert = {"lp_bound": lp, "final_lower": lp, "improved": False,
            "weight1_forced": weight1_forced(n, k)}
    if k >= 2:
        rep = improved_lower_bound(n, k)
        cert["improved"] = rep.improved
        cert["final_lower"] = rep.final_lower
    return cert


def compose_known(n: int, k: int, known: Mapping[tuple[int, int], Cover]) -> Optional[Cover]:
    """Concatenate bundled covers of dimension n into an almost k-cover, fewest planes."""
    sizes = {kk: sum(m for _, m in c) for (nn, kk), c in known.items() if nn == n}
    if not sizes:
        return None
    try:
        plan = combine_plan(sizes, k)
    except NoBound:
        return None
    cover: Cover = []
    for kk, times in sorted(plan.items()):
        for h, m in known[(n, kk)]:
            cover.append((h, m * times))
    return cover


def compute_f(n: int, k: int, space: str = MAXIMAL, budget: Budget = Budget(),
              known: Optional[Mapping[tuple[int, int], Cover]] = None,
              catalog: Optional[PlaneCatalog] = None) -> FResult:
    """Minimum cover size over the chosen plane space, with its lower-bound certificate.

    The maximal-plane space always contains an optimal cover, so its optimum
    is f(n, k).  The weight-1 space only gives an upper bound on f(n, k),
    which is exact when it meets the lower bound.  When ``known`` covers
    compose to a cover meeting the lower bound no search is run.
    """
    if space not in (MAXIMAL, WEIGHT1):
        raise InvalidInput(f"unknown space {space!r}")
    cert = lower_certificate(n, k)
    lower = cert["final_lower"]
    if known:
        comp = compose_known(n, k, known)
        if comp is not None:
            size = sum(m for _, m in comp)
            planes_ok = space == MAXIMAL or all(plane_weight(h) == 1 for h, _ in comp)
            if size <= lower and planes_ok and verify_cover(n, k, comp).passed:
                cert = dict(cert, upper=size, upper_source="composition")
                return FResult(n, k, space, OPTIMAL, size, True, lower, comp, "composition", cert)
    cat = catalog if catalog is not None else get_catalog(n, space)
    inst = build_instance(n, k, cat)
    res = ilp_solve(inst, budget)
    cert = dict(cert, upper=res.total, upper_source="ilp", ilp_lower=res.lower_bound)
    witness = res.solution.as_cover() if res.solution is not None else None
    if res.status == OPTIMAL:
        exact = space == MAXIMAL or res.total <= lower
        return FResult(n, k, space, OPTIMAL, res.total, exact, lower, witness, "ilp", cert, res.stats)
    return FResult(n, k, space, res.status, res.total, False, lower, witness, "ilp", cert, res.stats)
