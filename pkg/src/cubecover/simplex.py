"""Two-phase primal simplex over the rationals.

Each tableau row is kept as integer numerators over a positive row
denominator, reduced by their gcd after every update.  Rows with a zero in the
pivot column are left untouched, which matters for the 0/1 cover matrices.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

OPTIMAL = "Optimal"
INFEASIBLE = "Infeasible"
UNBOUNDED = "Unbounded"

GE, LE, EQ = ">=", "<=", "="

BLAND = "bland"
DANTZIG = "dantzig"
DEFAULT_PIVOT_CAP = 200_000
# degenerate pivots in a row before switching to Bland's rule
DEGENERATE_RUN = 1000


class PivotCapExceeded(RuntimeError):
    pass


@dataclass
class LpResult:
    status: str
    objective: Fraction | None
    x: list[Fraction] | None
    pivots: int


def _as_int_row(coeffs: Sequence, rhs) -> tuple[list[int], int]:
    vals = [Fraction(c) for c in coeffs] + [Fraction(rhs)]
    den = lcm(*(v.denominator for v in vals))
    ints = [int(v * den) for v in vals]
    return ints[:-1], ints[-1]


def _normalize(row: list[int], den: int) -> tuple[list[int], int]:
    g = gcd(den, *row)
    if g > 1:
        row = [v // g for v in row]
        den //= g
    return row, den


class _Tableau:
    def __init__(self, rows, dens, basis, n_total):
        self.rows = rows      # 0: phase-2 costs, 1: phase-1 costs, 2..: constraints
        self.dens = dens
        self.basis = basis    # basis[i] is the basic column of constraint row i + 2
        self.n_total = n_total
        self.pivots = 0

    def pivot(self, r: int, s: int) -> None:
        rows, dens = self.rows, self.dens
        R = rows[r]
        p = R[s]
        if p < 0:
            R = [-v for v in R]
            p = -p
        R, P = _normalize(R, p)
        rows[r], dens[r] = R, P
        for i in range(len(rows)):
            if i == r:
                continue
            Ti = rows[i]
            a = Ti[s]
            if a == 0:
                continue
            new = [P * u - a * v for u, v in zip(Ti, R)]
            rows[i], dens[i] = _normalize(new, dens[i] * P)
        self.basis[r - 2] = s
        self.pivots += 1

    def run(self, obj: int, allowed: int, cap: int, rule: str) -> str:
        """Primal simplex on objective row ``obj`` using columns ``< allowed``.

        ``rule="bland"`` always enters the lowest-index improving column.
        ``rule="dantzig"`` enters the most negative reduced cost but falls back
        to Bland's rule after a run of degenerate pivots, so it cannot cycle.
        """
        rows = self.rows
        rhs = self.n_total
        m = len(rows)
        degenerate = 0
        while True:
            if self.pivots > cap:
                raise PivotCapExceeded(f"more than {cap} pivots")
            cost = rows[obj]
            if rule == BLAND or degenerate >= DEGENERATE_RUN:
                s = next((j for j in range(allowed) if cost[j] < 0), None)
            else:
                s, low = None, 0
                for j in range(allowed):
                    if cost[j] < low:
                        s, low = j, cost[j]
            if s is None:
                return OPTIMAL
            best = None
            for i in range(2, m):
                a = rows[i][s]
                if a <= 0:
                    continue
                b = rows[i][rhs]
                if best is None:
                    best, bb, ba = i, b, a
                    continue
                lhs, rhs_ = b * ba, bb * a
                if lhs < rhs_ or (lhs == rhs_ and self.basis[i - 2] < self.basis[best - 2]):
                    best, bb, ba = i, b, a
            if best is None:
                return UNBOUNDED
            degenerate = degenerate + 1 if bb == 0 else 0
            self.pivot(best, s)


def solve_lp(c: Sequence, constraints: Sequence[tuple[Sequence, str, object]],
             pivot_cap: int = DEFAULT_PIVOT_CAP, rule: str = DANTZIG) -> LpResult:
    """Minimise ``c . x`` subject to ``a . x (>=|<=|=) b`` rows and ``x >= 0``."""
    nv = len(c)
    prepared = []
    for coeffs, sense, b in constraints:
        if len(coeffs) != nv:
            raise ValueError("constraint width does not match objective")
        a, bi = _as_int_row(coeffs, b)
        if bi < 0:
            a, bi = [-v for v in a], -bi
            sense = {GE: LE, LE: GE, EQ: EQ}[sense]
        prepared.append((a, sense, bi))
    n_slack = sum(1 for _, s, _ in prepared if s != EQ)
    art_rows = [i for i, (_, s, _) in enumerate(prepared) if s != LE]
    n_art = len(art_rows)
    width = nv + n_slack + n_art
    rows, basis = [], []
    slack_at = nv
    art_at = nv + n_slack
    art_of = {}
    for i, (a, sense, bi) in enumerate(prepared):
        row = a + [0] * (n_slack + n_art) + [bi]
        if sense == LE:
            row[slack_at] = 1
            basis.append(slack_at)
            slack_at += 1
        else:
            if sense == GE:
                row[slack_at] = -1
                slack_at += 1
            row[art_at] = 1
            basis.append(art_at)
            art_of[i] = art_at
            art_at += 1
        rows.append(row)
    cint, _ = _as_int_row(c, 0)
    cost2 = cint + [0] * (n_slack + n_art) + [0]
    cost1 = [0] * (width + 1)
    for i in art_rows:
        for j, v in enumerate(rows[i]):
            cost1[j] -= v
    for j in range(art_at - n_art, art_at):
        cost1[j] = 0
    t = _Tableau([cost2, cost1] + rows, [1] * (len(rows) + 2), basis, width)
    if n_art:
        t.run(obj=1, allowed=width, cap=pivot_cap, rule=rule)
        if t.rows[1][width] != 0:
            return LpResult(INFEASIBLE, None, None, t.pivots)
        first_art = nv + n_slack
        for r in range(2, len(t.rows)):
            if t.basis[r - 2] >= first_art:
                row = t.rows[r]
                s = next((j for j in range(first_art) if row[j] != 0), None)
                if s is not None:
                    t.pivot(r, s)
        allowed = first_art
    else:
        allowed = width
    status = t.run(obj=0, allowed=allowed, cap=pivot_cap, rule=rule)
    if status == UNBOUNDED:
        return LpResult(UNBOUNDED, None, None, t.pivots)
    x = [Fraction(0)] * nv
    for r in range(2, len(t.rows)):
        j = t.basis[r - 2]
        if j < nv:
            x[j] = Fraction(t.rows[r][width], t.dens[r])
    obj = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
    return LpResult(OPTIMAL, obj, x, t.pivots)

