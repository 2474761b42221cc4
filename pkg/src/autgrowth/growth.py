"""Ball enumeration, orbit counting and growth-table arithmetic.

Every table carries a ``kind`` label (exact, upper_bound, lower_bound) and
arithmetic propagates it: combining a bound with anything yields a bound, and
the table records why in ``flags``.
"""
from __future__ import annotations

import csv
import io
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable

EXACT = "exact"
UPPER = "upper_bound"
LOWER = "lower_bound"
KINDS = (EXACT, UPPER, LOWER)


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration would exceed its element budget."""

    def __init__(self, message: str, completed_radius: int):
        super().__init__(message)
        self.completed_radius = completed_radius


@dataclass
class GrowthTable:
    counts: list[int]
    kind: str = EXACT
    cumulative: bool = True
    flags: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be non-negative")
        if self.cumulative and any(a > b for a, b in zip(self.counts, self.counts[1:])):
            raise ValueError("cumulative table must be non-decreasing")

    def __len__(self):
        return len(self.counts)

    def __getitem__(self, n):
        return self.counts[n]

    @property
    def max_n(self) -> int:
        return len(self.counts) - 1

    def histogram(self) -> list[int]:
        """Per-exact-length counts."""
        if not self.cumulative:
            return list(self.counts)
        return [c - (self.counts[i - 1] if i else 0) for i, c in enumerate(self.counts)]

    def as_cumulative(self) -> "GrowthTable":
        if self.cumulative:
            return self
        acc, out = 0, []
        for c in self.counts:
            acc += c
            out.append(acc)
        return GrowthTable(out, self.kind, True, self.flags)

    def truncate(self, n: int) -> "GrowthTable":
        return GrowthTable(self.counts[:n + 1], self.kind, self.cumulative, self.flags)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "count", "kind", "cumulative"])
        for n, c in enumerate(self.counts):
            w.writerow([n, c, self.kind, str(self.cumulative).lower()])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "GrowthTable":
        rows = list(csv.DictReader(io.StringIO(text)))
        if not rows:
            raise ValueError("empty table")
        rows.sort(key=lambda r: int(r["n"]))
        if [int(r["n"]) for r in rows] != list(range(len(rows))):
            raise ValueError("rows must cover n = 0..N")
        kind = rows[0]["kind"]
        cum = rows[0]["cumulative"].strip().lower() == "true"
        return cls([int(r["count"]) for r in rows], kind, cum)


class UnionFind:
    def __init__(self, items: Iterable[Hashable] = ()):
        self.parent: dict = {}
        self.size: dict = {}
        for x in items:
            self.add(x)

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.size[x] = 1

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.size[x] < self.size[y]:
            x, y = y, x
        self.parent[y] = x
        self.size[x] += self.size[y]
        return True


@dataclass
class OrbitPartition:
    """Classes over an enumerated ball; ``lengths`` maps element -> word length."""

    lengths: dict
    class_of: dict
    min_length: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.min_length:
            for x, rep in self.class_of.items():
                ln = self.lengths[x]
                if rep not in self.min_length or ln < self.min_length[rep]:
                    self.min_length[rep] = ln

    @property
    def num_classes(self) -> int:
        return len(self.min_length)

    def classes(self) -> list[list]:
        groups: dict = {}
        for x in sorted(self.class_of, key=_sort_key):
            groups.setdefault(self.class_of[x], []).append(x)
        return sorted(groups.values(), key=lambda c: (self.lengths[c[0]], _sort_key(c[0])))

    def same_class(self, x, y) -> bool:
        return self.class_of[x] == self.class_of[y]

    def table(self, radius: int | None = None, kind: str = UPPER) -> GrowthTable:
        if radius is None:
            radius = max(self.lengths.values(), default=0)
        hist = [0] * (radius + 1)
        for ln in self.min_length.values():
            if ln <= radius:
                hist[ln] += 1
        return GrowthTable(hist, kind, False).as_cumulative()


def _sort_key(x):
    return repr(x)


def enumerate_ball(identity, generators, mul: Callable, radius: int,
                   max_size: int | None = None) -> dict:
    """Breadth-first ball of the word metric: normal form -> exact length.

    ``generators`` should already contain inverses if the metric is the
    symmetric one.  ``mul(x, g)`` returns the normal form of x*g.
    """
    ball = {identity: 0}
    frontier = [identity]
    for r in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for g in generators:
                y = mul(x, g)
                if y not in ball:
                    ball[y] = r
                    nxt.append(y)
                    if max_size is not None and len(ball) > max_size:
                        raise BudgetExceeded(
                            f"ball exceeded {max_size} elements at radius {r}", r - 1)
        frontier = nxt
        if not frontier:
            break
    return ball


def layer_sizes(ball: dict, radius: int | None = None) -> list[int]:
    if radius is None:
        radius = max(ball.values(), default=0)
    out = [0] * (radius + 1)
    for ln in ball.values():
        if ln <= radius:
            out[ln] += 1
    return out


def orbits_by_canonical_form(ball: dict, canon: Callable, certified: bool = False,
                             radius: int | None = None) -> GrowthTable:
    """counts[n] = number of distinct class keys whose least member length is <= n."""
    if radius is None:
        radius = max(ball.values(), default=0)
    best: dict = {}
    for x, ln in ball.items():
        if ln > radius:
            continue
        key = canon(x)
        if key not in best or ln < best[key]:
            best[key] = ln
    hist = [0] * (radius + 1)
    for ln in best.values():
        hist[ln] += 1
    return GrowthTable(hist, EXACT if certified else UPPER, False).as_cumulative()


def canonical_classes(ball: dict, canon: Callable, radius: int | None = None) -> dict:
    """Key -> least member length, restricted to the radius."""
    if radius is None:
        radius = max(ball.values(), default=0)
    best: dict = {}
    for x, ln in ball.items():
        if ln <= radius:
            key = canon(x)
            if key not in best or ln < best[key]:
                best[key] = ln
    return best


def orbits_by_saturation(ball: dict, auts: list[Callable], radius: int,
                         slack_radius: int | None = None) -> OrbitPartition:
    """Union-find closure of the radius ball under ``auts``.

    ``ball`` must cover the slack radius (default ``2*radius``).  An image is
    only followed while it stays inside the slack ball, so the classes refine
    the true orbit partition: the class count is an upper bound on the number
    of orbits and every merge is genuine.
    """
    if slack_radius is None:
        slack_radius = 2 * radius
    if slack_radius < radius:
        raise ValueError(f"slack radius {slack_radius} is smaller than radius {radius}")
    inner = {x: ln for x, ln in ball.items() if ln <= slack_radius}
    uf = UnionFind(inner)
    for x in inner:
        for f in auts:
            y = f(x)
            if y in inner:
                uf.union(x, y)
    seeds = {x: ln for x, ln in inner.items() if ln <= radius}
    class_of = {x: uf.find(x) for x in seeds}
    return OrbitPartition(seeds, class_of)


def _kind_of_combination(kinds: list[str]) -> tuple[str, tuple[str, ...]]:
    inexact = sorted({k for k in kinds if k != EXACT})
    if not inexact:
        return EXACT, ()
    if len(inexact) > 1:
        raise ValueError("cannot combine an upper bound with a lower bound")
    return inexact[0], (f"input not exact: result is a {inexact[0]}",)


def product_growth(h: GrowthTable, k: GrowthTable) -> GrowthTable:
    """Orbit table of a direct product of characteristic factors.

    Orbits of the product are pairs of orbits and the length of a pair is the
    sum of lengths, so the exact-length histograms convolve.
    """
    kind, flags = _kind_of_combination([h.kind, k.kind])
    a, b = h.histogram(), k.histogram()
    n_max = min(len(a), len(b)) - 1
    hist = [0] * (n_max + 1)
    for i, x in enumerate(a[:n_max + 1]):
        if x:
            for j in range(n_max + 1 - i):
                hist[i + j] += x * b[j]
    return GrowthTable(hist, kind, False, flags).as_cumulative()


def point_mass(n_max: int) -> GrowthTable:
    """Exact table of the trivial group: one orbit, of length 0."""
    return GrowthTable([1] * (n_max + 1), EXACT, True)


def compare_growth(f: GrowthTable, g: GrowthTable, lambda_max: int) -> tuple[str, int | None]:
    """Finite-range check of f(n) <= lam*g(lam*n + lam) + lam.

    Returns ("precedes", lam) for the least witnessing lam, otherwise
    ("incomparable_at_this_lambda", None).  Points where lam*n+lam runs past
    the end of g use g's last entry, which under-estimates a non-decreasing g,
    so the check errs on the side of rejecting.  This is evidence, not proof.
    """
    f, g = f.as_cumulative(), g.as_cumulative()
    for lam in range(1, lambda_max + 1):
        ok = True
        for n, fn in enumerate(f.counts):
            idx = lam * n + lam
            gv = g.counts[idx] if idx < len(g.counts) else g.counts[-1]
            if fn > lam * gv + lam:
                ok = False
                break
        if ok:
            return "precedes", lam
    return "incomparable_at_this_lambda", None


@dataclass
class RateEstimate:
    poly_degree_estimate: float
    exp_rate_estimate: float
    skipped: tuple[int, ...] = ()


def _slope(xs, ys) -> float:
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    den = sum((x - mx) ** 2 for x in xs)
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / den


def estimate_rate(t: GrowthTable) -> RateEstimate:
    """Least-squares slopes over the upper half of the table.

    The polynomial degree is the slope of log count against log(n+1), which
    is exact for tables of the form c*(n+1)^d; the exponential rate is the
    slope of log count against n.
    """
    if len(t.counts) < 8:
        raise ValueError("need at least 8 entries")
    n_max = len(t.counts) - 1
    lo = max(1, n_max // 2)
    xs, ys, ns, skipped = [], [], [], []
    for n in range(lo, n_max + 1):
        c = t.counts[n]
        if c <= 0:
            skipped.append(n)
            continue
        xs.append(math.log(n + 1))
        ns.append(n)
        ys.append(math.log(c))
    if len(xs) < 2:
        raise ValueError("not enough non-zero counts in the window")
    return RateEstimate(_slope(xs, ys), _slope(ns, ys), tuple(skipped))


def bfs_distances(start, neighbours: Callable, limit: int | None = None) -> dict:
    """Plain breadth-first distances in an implicit graph."""
    dist = {start: 0}
    q = deque([start])
    while q:
        x = q.popleft()
        if limit is not None and dist[x] >= limit:
            continue
        for y in neighbours(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist
