"""Plane catalogs: weight-1 planes via ballot sequences and maximally
intersecting planes via exact linear solves, plus their on-disk format."""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

from cubecover.core import (
    CapExceeded,
    Hyperplane,
    InvalidInput,
    ParseError,
    canonical_masks,
    classify_weight1,
    covered_masks,
    format_rational,
    parse_rational,
)

log = logging.getLogger(__name__)

WEIGHT1 = "weight1"
MAXIMAL = "maximal"
KINDS = (WEIGHT1, MAXIMAL)

MAX_WEIGHT1_N = 12
MAX_MAXIMAL_N = 5
HEADER = "# cube-cover catalog v1 n={n} kind={kind}"
CACHE_ENV = "CUBE_COVER_CACHE_DIR"


class InvalidSequence(InvalidInput):
    pass


class NotWeight1Integer(InvalidInput):
    pass


class CorruptCatalog(ValueError):
    pass


# ---------- ballot sequences ----------

def check_ballot(b: Sequence[int]) -> tuple[int, ...]:
    b = tuple(b)
    if len(b) % 2 == 0 or any(x not in (-1, 1) for x in b):
        raise InvalidSequence(f"expected an odd-length +-1 sequence, got {b}")
    n = (len(b) + 1) // 2
    if b.count(1) != n:
        raise InvalidSequence(f"need exactly {n} positive entries, got {b.count(1)}")
    return b


def phi(b: Sequence[int]) -> Hyperplane:
    """Block sums of ``b``, each block ending at a +1; trailing -1s are dropped."""
    b = check_ballot(b)
    coeffs, block = [], 0
    for x in b:
        block += x
        if x == 1:
            coeffs.append(block)
            block = 0
    return Hyperplane(coeffs)


def phi_inverse(h: Hyperplane | Sequence) -> tuple[int, ...]:
    """Each c becomes ``1 - c`` copies of -1 then a +1; pad with ``sum(c) - 1`` trailing -1s."""
    if not isinstance(h, Hyperplane):
        h = Hyperplane(h)
    if not classify_weight1(h).is_weight1:
        raise NotWeight1Integer(f"{h} is not a weight-1 integer plane")
    out: list[int] = []
    for c in h.coeffs:
        out.extend([-1] * int(1 - c))
        out.append(1)
    out.extend([-1] * int(sum(h.coeffs) - 1))
    return tuple(out)


# ---------- catalogs ----------

@dataclass(frozen=True)
class PlaneCatalog:
    n: int
    kind: str
    planes: tuple[Hyperplane, ...]
    covered: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, n: int, kind: str, planes: Iterable[Hyperplane]) -> "PlaneCatalog":
        ps = tuple(sorted(planes, key=lambda h: h.coeffs))
        return cls(n, kind, ps, tuple(tuple(covered_masks(h)) for h in ps))

    def __len__(self) -> int:
        return len(self.planes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlaneCatalog):
            return NotImplemented
        return (self.n, self.kind, self.planes) == (other.n, other.kind, other.planes)

    def __hash__(self):
        return hash((self.n, self.kind, self.planes))

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise CorruptCatalog(f"unknown kind {self.kind!r}")
        seen = set()
        for h in self.planes:
            if h.n != self.n:
                raise CorruptCatalog(f"plane {h} has dimension {h.n}, expected {self.n}")
            if h.coeffs in seen:
                raise CorruptCatalog(f"duplicate plane {h}")
            seen.add(h.coeffs)
        if self.kind == WEIGHT1:
            for h in self.planes:
                if not classify_weight1(h).is_weight1:
                    raise CorruptCatalog(f"plane {h} is not weight-1")
        else:
            bad = strictly_dominated(self.n, self.covered)
            if bad:
                raise CorruptCatalog(f"plane {self.planes[bad[0]]} is not maximal")


def strictly_dominated(n: int, covered: Sequence[Sequence[int]]) -> list[int]:
    """Indices of planes whose covered set is a strict subset of another's."""
    by_point = {m: 0 for m in canonical_masks(n)}
    for j, pts in enumerate(covered):
        for m in pts:
            by_point[m] |= 1 << j
    everyone = (1 << len(covered)) - 1
    out = []
    for j, pts in enumerate(covered):
        sup = everyone
        for m in pts:
            sup &= by_point[m]
        sup &= ~(1 << j)
        # sup = planes containing all of covered[j]; strict unless sets are equal
        while sup:
            low = sup & -sup
            i = low.bit_length() - 1
            if len(covered[i]) > len(pts):
                out.append(j)
                break
            sup ^= low
    return out


def enumerate_weight1(n: int) -> PlaneCatalog:
    if not 1 <= n <= MAX_WEIGHT1_N:
        raise CapExceeded(f"weight-1 enumeration needs 1 <= n <= {MAX_WEIGHT1_N}, got {n}")
    L = 2 * n - 1
    planes = []
    for pos in combinations(range(L), n):
        b = [-1] * L
        for i in pos:
            b[i] = 1
        planes.append(phi(b))
    cat = PlaneCatalog.build(n, WEIGHT1, planes)
    assert len(cat) == comb(2 * n - 1, n)
    return cat


def weight1_box_filter(n: int) -> set[tuple[int, ...]]:
    """Independent check: integer vectors in [-(n-1), 1]^n meeting the weight-1 conditions.

    The box suffices: c_i <= 1 for all i and sum(c) >= 1 force
    c_i >= 1 - (n - 1) for every i.
    """
    return {
        c for c in product(range(-(n - 1), 2), repeat=n)
        if sum(c) >= 1
    }


def _point_vector(n: int, mask: int) -> list[Fraction]:
    return [Fraction((mask >> i) & 1) for i in range(n)]


def maximal_planes_raw(
    n: int, progress: Optional[Callable[[int], None]] = None
) -> set[tuple[Fraction, ...]]:
    """Coefficient vectors of every plane through n linearly independent nonzero vertices.

    Points are chosen depth first while an augmented RREF of ``[p | 1]`` is kept,
    so any prefix that is already dependent is pruned with all its extensions.
    """
    points = [_point_vector(n, m) for m in range(1, 1 << n)]
    found: set[tuple[Fraction, ...]] = set()
    leaves = 0

    def add_row(rows, pivots, p):
        v = p + [Fraction(1)]
        for r, pc in zip(rows, pivots):
            if v[pc]:
                f = v[pc]
                v = [x - f * y for x, y in zip(v, r)]
        pc = next((i for i in range(n) if v[i]), None)
        if pc is None:
            return None
        f = v[pc]
        v = [x / f for x in v]
        new_rows = []
        for r in rows:
            if r[pc]:
                g = r[pc]
                r = [x - g * y for x, y in zip(r, v)]
            new_rows.append(r)
        new_rows.append(v)
        return new_rows, pivots + [pc]

    def walk(start, rows, pivots):
        nonlocal leaves
        if len(rows) == n:
            c = [Fraction(0)] * n
            for r, pc in zip(rows, pivots):
                c[pc] = r[n]
            found.add(tuple(c))
            leaves += 1
            if progress is not None and leaves % 100000 == 0:
                progress(leaves)
            return
        need = n - len(rows)
        for j in range(start, len(points) - need + 1):
            nxt = add_row(rows, pivots, points[j])
            if nxt is not None:
                walk(j + 1, *nxt)

    walk(0, [], [])
    return found


def enumerate_maximal(n: int, allow_n6: bool = False,
                      progress: Optional[Callable[[int], None]] = None) -> PlaneCatalog:
    if not 1 <= n <= MAX_MAXIMAL_N and not (n == 6 and allow_n6):
        raise CapExceeded(f"maximal enumeration needs 1 <= n <= {MAX_MAXIMAL_N} (n=6 needs override)")
    if progress is None and n >= 6:
        progress = lambda k: log.info("maximal n=%d: %d spanning subsets solved", n, k)
    raw = maximal_planes_raw(n, progress)
    planes = [Hyperplane(c) for c in raw]
    cat = PlaneCatalog.build(n, MAXIMAL, planes)
    owners: dict[tuple[int, ...], tuple] = {}
    for h, pts in zip(cat.planes, cat.covered):
        if len(pts) >= n and pts in owners:
            raise AssertionError(f"planes {owners[pts]} and {h} share a covered set")
        owners[pts] = h
    drop = set(strictly_dominated(n, cat.covered))
    if drop:
        keep = [h for j, h in enumerate(cat.planes) if j not in drop]
        cat = PlaneCatalog.build(n, MAXIMAL, keep)
    return cat


# ---------- files ----------

def dump_catalog(cat: PlaneCatalog) -> str:
    lines = [HEADER.format(n=cat.n, kind=cat.kind)]
    lines += [" ".join(format_rational(c) for c in h.coeffs) for h in cat.planes]
    return "\n".join(lines) + "\n"


def save_catalog(cat: PlaneCatalog, path) -> None:
    Path(path).write_text(dump_catalog(cat), encoding="utf-8")


def parse_catalog(text: str) -> PlaneCatalog:
    lines = text.split("\n")
    if not text or not text.endswith("\n"):
        raise ParseError("missing trailing newline", max(1, len(lines)))
    head = lines[0].split()
    if head[:4] != ["#", "cube-cover", "catalog", "v1"] or len(head) != 6:
        raise ParseError("bad header", 1)
    try:
        n = int(head[4].removeprefix("n="))
        kind = head[5].removeprefix("kind=")
    except ValueError:
        raise ParseError("bad header", 1) from None
    if not head[4].startswith("n=") or not head[5].startswith("kind=") or kind not in KINDS:
        raise ParseError("bad header", 1)
    planes = []
    for lineno, line in enumerate(lines[1:-1], 2):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        toks = s.split()
        if len(toks) != n:
            raise ParseError(f"expected {n} coefficients, got {len(toks)}", lineno)
        try:
            planes.append(Hyperplane(parse_rational(t) for t in toks))
        except InvalidInput as e:
            raise ParseError(str(e), lineno) from None
    cat = PlaneCatalog(n, kind, tuple(planes), tuple(tuple(covered_masks(h)) for h in planes))
    cat.validate()
    return cat


def load_catalog(path) -> PlaneCatalog:
    return parse_catalog(Path(path).read_text(encoding="utf-8"))


def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else Path.home() / ".cache" / "cube-cover"


@lru_cache(maxsize=None)
def _get_catalog(n: int, kind: str, where: str, allow_n6: bool) -> PlaneCatalog:
    path = Path(where) / f"{kind}_n{n}.txt"
    if path.exists():
        try:
            return load_catalog(path)
        except (ParseError, CorruptCatalog) as e:
            log.warning("ignoring bad cached catalog %s: %s", path, e)
    cat = enumerate_weight1(n) if kind == WEIGHT1 else enumerate_maximal(n, allow_n6)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        save_catalog(cat, path)
    except OSError as e:
        log.warning("could not cache catalog at %s: %s", path, e)
    return cat


def get_catalog(n: int, kind: str, allow_n6: bool = False) -> PlaneCatalog:
    """Catalog of the given kind, read from the on-disk cache when present."""
    if kind not in KINDS:
        raise InvalidInput(f"unknown catalog kind {kind!r}")
    return _get_catalog(n, kind, str(cache_dir()), allow_n6)
