"""Thompson's groups V and T as tree pairs acting on binary words.

Conventions
-----------
* A finite binary word is a ``str`` over ``"01"``; ``""`` is the root.
* A tree pair maps each domain leaf to a range leaf; an infinite word with
  prefix ``d`` is sent to the same word with ``d`` replaced by its image.
* Maps act on the right and ``compose(x, y)`` applies x first, then y.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .growth import UnionFind
from .words import CyclicWord


class TreePairError(ValueError):
    pass


def flip(c: str) -> str:
    return "1" if c == "0" else "0"


def is_complete_prefix_code(words) -> bool:
    words = list(words)
    if not words:
        return False
    if len(set(words)) != len(words):
        return False
    s = sorted(words)
    for u, v in zip(s, s[1:]):
        if v.startswith(u):
            return False
    return sum(Fraction(1, 2 ** len(w)) for w in words) == 1


def complement_leaves(u: str) -> list[str]:
    """Leaves completing ``{u}`` to the smallest complete prefix code."""
    return [u[:i] + flip(u[i]) for i in range(len(u))]


@dataclass(frozen=True)
class TreePair:
    """Sorted tuple of (domain leaf, range leaf) rules."""

    rules: tuple[tuple[str, str], ...]

    @staticmethod
    def from_map(mapping: dict, reduce: bool = True) -> "TreePair":
        tp = TreePair(tuple(sorted(mapping.items())))
        tp.validate()
        return tp.reduced() if reduce else tp

    def validate(self) -> None:
        dom = [d for d, _ in self.rules]
        ran = [r for _, r in self.rules]
        for w in dom + ran:
            if any(c not in "01" for c in w):
                raise TreePairError(f"non-binary leaf {w!r}")
        if not is_complete_prefix_code(dom):
            raise TreePairError("domain leaves are not a complete prefix code")
        if not is_complete_prefix_code(ran):
            raise TreePairError("range leaves are not a complete prefix code")

    @property
    def mapping(self) -> dict:
        return dict(self.rules)

    @property
    def domain(self) -> list[str]:
        return [d for d, _ in self.rules]

    @property
    def range(self) -> list[str]:
        return sorted(r for _, r in self.rules)

    def __len__(self):
        return len(self.rules)

    def depth(self) -> int:
        return max(max(len(d), len(r)) for d, r in self.rules)

    def inverse(self) -> "TreePair":
        return TreePair(tuple(sorted((r, d) for d, r in self.rules)))

    def reduced(self) -> "TreePair":
        return _reduce(self.rules)

    def image(self, w: str) -> str | None:
        """Rigid image of the cone ``w``, or None if the map is not rigid there."""
        for d, r in self.rules:
            if w.startswith(d):
                return r + w[len(d):]
        return None

    def apply_long(self, w: str) -> str:
        """Image of a word long enough to have a domain-leaf prefix."""
        out = self.image(w)
        if out is None:
            raise TreePairError(f"{w!r} is shorter than the domain leaves")
        return out

    def is_identity(self) -> bool:
        return self.rules == (("", ""),)

    def expand(self, leaf: str, shape=("0", "1")) -> "TreePair":
        """Replace the rule at domain ``leaf`` by rules on ``leaf + s`` for s in ``shape``."""
        m = self.mapping
        r = m.pop(leaf)
        for s in shape:
            m[leaf + s] = r + s
        return TreePair(tuple(sorted(m.items())))

    def expand_range(self, leaf: str, shape=("0", "1")) -> "TreePair":
        inv = {r: d for d, r in self.rules}
        d = inv.pop(leaf)
        for s in shape:
            inv[leaf + s] = d + s
        return TreePair(tuple(sorted((d, r) for r, d in inv.items())))

    def to_text(self) -> str:
        return "\n".join(f"{d or '.'} -> {r or '.'}" for d, r in self.rules) + "\n"

    def __str__(self):
        return "{" + ", ".join(f"{d or 'e'}->{r or 'e'}" for d, r in self.rules) + "}"


def _reduce(rules) -> TreePair:
    m = dict(rules)
    changed = True
    while changed:
        changed = False
        cands = sorted((d for d in m if d.endswith("0")), key=lambda d: (-len(d), d))
        for d0 in cands:
            if d0 not in m:
                continue
            u = d0[:-1]
            d1 = u + "1"
            if d1 not in m:
                continue
            r0, r1 = m[d0], m[d1]
            if r0.endswith("0") and r1 == r0[:-1] + "1":
                del m[d0], m[d1]
                m[u] = r0[:-1]
                changed = True
    return TreePair(tuple(sorted(m.items())))


IDENTITY = TreePair((("", ""),))


def parse_tree_pair(text: str) -> TreePair:
    """One ``domain -> range`` rule per line; ``.`` or ``e`` denotes the empty word."""
    m = {}
    for lineno, raw in enumerate(text.replace(";", "\n").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise TreePairError(f"line {lineno}: expected 'domain -> range'")
        d, r = (p.strip() for p in line.split("->", 1))
        d = "" if d in (".", "e") else d
        r = "" if r in (".", "e") else r
        if d in m:
            raise TreePairError(f"line {lineno}: duplicate domain leaf {d!r}")
        m[d] = r
    return TreePair.from_map(m, reduce=False)


def tp_compose(x: TreePair, y: TreePair) -> TreePair:
    """The map x followed by y, reduced."""
    ydom = y.mapping
    ylist = sorted(ydom)
    out = {}
    for d, r in x.rules:
        img = y.image(r)
        if img is not None:
            out[d] = img
            continue
        for p in ylist:
            if p.startswith(r):
                out[d + p[len(r):]] = ydom[p]
    return _reduce(out.items())


def tp_compose_all(*xs: TreePair) -> TreePair:
    out = IDENTITY
    for x in xs:
        out = tp_compose(out, x)
    return out


def tp_inverse(x: TreePair) -> TreePair:
    return x.inverse()


def tp_power(x: TreePair, n: int) -> TreePair:
    base = x if n >= 0 else x.inverse()
    out = IDENTITY
    for _ in range(abs(n)):
        out = tp_compose(out, base)
    return out


def tp_conjugate(v: TreePair, u: TreePair) -> TreePair:
    """v^u = u^-1 v u (apply u^-1, then v, then u)."""
    return tp_compose_all(u.inverse(), v, u)


def tp_in_T(x: TreePair) -> bool:
    dom = sorted(x.domain)
    ran = sorted(x.range)
    n = len(dom)
    m = x.mapping
    idx = {r: i for i, r in enumerate(ran)}
    shift = idx[m[dom[0]]]
    return all(idx[m[d]] == (i + shift) % n for i, d in enumerate(dom))


def tp_in_F(x: TreePair) -> bool:
    m = x.mapping
    dom = sorted(m)
    return [m[d] for d in dom] == sorted(m.values())


def evaluate_prefix(x: TreePair, w: str) -> str:
    """Longest output determined by the finite input w (possibly not rigid)."""
    img = x.image(w)
    if img is not None:
        return img
    outs = [r for d, r in x.rules if d.startswith(w)]
    return _lcp(outs)


def _lcp(words) -> str:
    words = list(words)
    if not words:
        return ""
    a, b = min(words), max(words)
    i = 0
    while i < min(len(a), len(b)) and a[i] == b[i]:
        i += 1
    return a[:i]


# -- named elements ----------------------------------------------------------

Y0 = TreePair.from_map({"0": "00", "10": "01", "11": "1"})
Y1 = TreePair.from_map({"0": "01", "10": "1", "11": "00"})
X0 = Y0
X1 = TreePair.from_map({"0": "0", "10": "100", "110": "101", "111": "11"})
SWAP_ROOT = TreePair.from_map({"0": "1", "1": "0"})
SWAP_ONE = TreePair.from_map({"0": "0", "10": "11", "11": "10"})
VEXAMPLE = TreePair.from_map({"0": "0", "100": "10", "1010": "1101", "1011": "1100", "11": "111"})


def cone_embed(v: TreePair, q: str) -> TreePair:
    """Act on the cone q as v acts on the whole space; fix everything else."""
    m = {q + d: q + r for d, r in v.rules}
    for c in complement_leaves(q):
        m[c] = c
    return TreePair.from_map(m)


def random_code(rng: random.Random, n: int) -> list[str]:
    leaves = [""]
    while len(leaves) < n:
        w = leaves.pop(rng.randrange(len(leaves)))
        leaves += [w + "0", w + "1"]
    return leaves


def random_tree_pair(rng: random.Random, max_leaves: int = 6, in_T: bool = False) -> TreePair:
    n = rng.randint(1, max_leaves)
    dom = sorted(random_code(rng, n))
    ran = sorted(random_code(rng, n))
    if in_T:
        k = rng.randrange(n)
        ran = ran[k:] + ran[:k]
    else:
        rng.shuffle(ran)
    return TreePair.from_map(dict(zip(dom, ran)))


# -- leaf classification and revealing pairs ---------------------------------

NEUTRAL = "neutral"
RANGE_OF_REPULSION = "range_of_repulsion"
REPELLER = "repeller"
DOMAIN_OF_ATTRACTION = "domain_of_attraction"
ATTRACTOR = "attractor"
SOURCE = "source"
SINK = "sink"


def _tree_nodes(leaves) -> set:
    out = set()
    for w in leaves:
        for i in range(len(w) + 1):
            out.add(w[:i])
    return out


def components(x: TreePair) -> tuple[dict, dict]:
    """Components of A\\B and B\\A keyed by their root (a leaf of the common tree)."""
    dom, ran = set(x.domain), set(x.range)
    common = _tree_nodes(dom) & _tree_nodes(ran)
    c_leaves = [w for w in common if w + "0" not in common]
    comp_a, comp_b = {}, {}
    for l in sorted(c_leaves):
        if l not in dom:
            comp_a[l] = sorted(d for d in dom if d.startswith(l))
        if l not in ran:
            comp_b[l] = sorted(r for r in ran if r.startswith(l))
    return comp_a, comp_b


@dataclass(frozen=True)
class Classification:
    labels: dict
    repeller_of: dict   # range of repulsion -> (repeller, n)
    attractor_of: dict  # domain of attraction -> (attractor, n)


def classify_leaves(x: TreePair) -> Classification:
    fwd = x.mapping
    back = {r: d for d, r in x.rules}
    dom, ran = set(fwd), set(back)
    labels: dict = {}
    rep_of, att_of = {}, {}
    limit = len(fwd) + 1
    for l in sorted(dom | ran):
        if l in dom and l in ran:
            labels[l] = NEUTRAL
            continue
        if l in ran:
            y = l
            for n in range(1, limit + 1):
                if y not in back:
                    break
                y = back[y]
                if len(y) > len(l) and y.startswith(l):
                    rep_of[l] = (y, n)
                    break
        if l in dom:
            y = l
            for n in range(1, limit + 1):
                if y not in fwd:
                    break
                y = fwd[y]
                if len(y) > len(l) and y.startswith(l):
                    att_of[l] = (y, n)
                    break
    for l, (y, _) in rep_of.items():
        labels[l] = RANGE_OF_REPULSION
    for l, (y, _) in att_of.items():
        labels[l] = DOMAIN_OF_ATTRACTION
    repellers = {y for y, _ in rep_of.values()}
    attractors = {y for y, _ in att_of.values()}
    for l in sorted(dom | ran):
        if l in labels:
            continue
        if l in repellers:
            labels[l] = REPELLER
        elif l in attractors:
            labels[l] = ATTRACTOR
        elif l in dom:
            labels[l] = SOURCE
        else:
            labels[l] = SINK
    return Classification(labels, rep_of, att_of)


@dataclass(frozen=True)
class RevealingPair:
    pair: TreePair
    classification: dict
    repeller_of: dict
    attractor_of: dict


def offending_components(x: TreePair, cls: Classification | None = None):
    if cls is None:
        cls = classify_leaves(x)
    comp_a, comp_b = components(x)
    bad = []
    for root, leaves in comp_a.items():
        if not any(cls.labels.get(l) == REPELLER for l in leaves):
            bad.append((root, "A"))
    for root, leaves in comp_b.items():
        if not any(cls.labels.get(l) == ATTRACTOR for l in leaves):
            bad.append((root, "B"))
    return sorted(bad)


def is_revealing(x: TreePair) -> bool:
    return not offending_components(x)


def make_revealing(x: TreePair, max_rolls: int | None = None) -> RevealingPair:
    """Expand x (same homeomorphism) until every component has its repeller/attractor.

    An A\\B component under l without a repeller is pulled back along the map:
    the rule at sigma^-1(l) is expanded by the shape of the component, which
    makes the component neutral and moves the excess tree one step back.
    B\\A components are pushed forward symmetrically.  Components are handled
    in lexicographic order of their roots.
    """
    cur = x.reduced()
    if max_rolls is None:
        max_rolls = 10 * max(len(cur), 2) ** 2
    rolls = 0
    while True:
        cls = classify_leaves(cur)
        bad = offending_components(cur, cls)
        if not bad:
            return RevealingPair(cur, cls.labels, cls.repeller_of, cls.attractor_of)
        rolls += 1
        if rolls > max_rolls:
            raise TreePairError(f"no revealing pair after {max_rolls} rolls")
        root, side = bad[0]
        if side == "A":
            back = {r: d for d, r in cur.rules}
            shape = [d[len(root):] for d in cur.domain if d.startswith(root)]
            cur = cur.expand(back[root], shape)
        else:
            shape = [r[len(root):] for r in cur.range if r.startswith(root)]
            cur = cur.expand_range(cur.mapping[root], shape)


# -- periodic points ---------------------------------------------------------

@dataclass(frozen=True, order=True)
class EventuallyPeriodicPoint:
    preperiod: str
    period_word: str

    @staticmethod
    def make(pre: str, period: str) -> "EventuallyPeriodicPoint":
        if not period:
            raise ValueError("period word must be non-empty")
        n = len(period)
        for d in range(1, n + 1):
            if n % d == 0 and period[:d] * (n // d) == period:
                period = period[:d]
                break
        while pre and pre[-1] == period[-1]:
            pre = pre[:-1]
            period = period[-1] + period[:-1]
        return EventuallyPeriodicPoint(pre, period)

    def prefix(self, n: int) -> str:
        s = self.preperiod
        while len(s) < n:
            s += self.period_word
        return s[:n]

    def startswith(self, w: str) -> bool:
        return self.prefix(len(w)) == w

    def after(self, w: str) -> "EventuallyPeriodicPoint":
        """The point with prefix w removed (w must be a prefix)."""
        assert self.startswith(w)
        pre, per = self.preperiod, self.period_word
        if len(w) <= len(pre):
            return EventuallyPeriodicPoint.make(pre[len(w):], per)
        k = (len(w) - len(pre)) % len(per)
        return EventuallyPeriodicPoint.make("", per[k:] + per[:k])

    def __str__(self):
        return f"{self.preperiod}({self.period_word})^inf"


def apply_to_point(x: TreePair, p: EventuallyPeriodicPoint) -> EventuallyPeriodicPoint:
    for d, r in x.rules:
        if p.startswith(d):
            rest = p.after(d)
            return EventuallyPeriodicPoint.make(r + rest.preperiod, rest.period_word)
    raise AssertionError("complete prefix code must cover every point")


@dataclass
class PeriodicData:
    periodic_cones: list          # (lex-least leaf of the cycle, cycle length)
    isolated: list                # (point, period, kind)
    orbits: list                  # (kind, [points], growth word)


def _source_orbits(rp: RevealingPair) -> list[tuple[list, str]]:
    fwd = rp.pair.mapping
    seen = set()
    out = []
    for l, (a, n) in sorted(rp.repeller_of.items()):
        b = a[len(l):]
        pts = []
        y = a
        for _ in range(n):
            pts.append(EventuallyPeriodicPoint.make(y, b))
            y = fwd[y]
        assert y == l
        key = frozenset(pts)
        if key in seen:
            continue
        seen.add(key)
        out.append((sorted(set(pts)), b))
    return out


def periodic_points(rp: RevealingPair) -> PeriodicData:
    x = rp.pair
    fwd = x.mapping
    cones = []
    seen = set()
    for l in sorted(fwd):
        if l in seen or rp.classification.get(l) != NEUTRAL:
            continue
        cyc = [l]
        y = fwd[l]
        while y != l and y in fwd and rp.classification.get(y) == NEUTRAL and len(cyc) <= len(fwd):
            cyc.append(y)
            y = fwd[y]
        if y == l:
            seen.update(cyc)
            cones.append((min(cyc), len(cyc)))
    orbits = []
    for pts, b in _source_orbits(rp):
        orbits.append((SOURCE, pts, b))
    inv = make_revealing(x.inverse())
    for pts, b in _source_orbits(inv):
        orbits.append((SINK, pts, b))
    isolated = []
    for kind, pts, _ in orbits:
        for p in pts:
            isolated.append((p, len(pts), kind))
    return PeriodicData(sorted(cones), isolated, orbits)


# -- decoration points, decorations and the decoration map -------------------

@dataclass(frozen=True)
class DecorationPoint:
    rep: str
    letter: str
    kind: str
    period: int


def _rigid_chain(x: TreePair, w: str, steps: int) -> str | None:
    for _ in range(steps):
        w = x.image(w)
        if w is None:
            return None
    return w


def source_rep_tail(v: TreePair, vinv: TreePair, p: str, max_steps: int) -> str | None:
    """If p is a source decoration point representative return the word w with
    p_0 = p w (first chain found), else None."""
    y = p
    for _ in range(max_steps):
        y = vinv.image(y)
        if y is None:
            return None
        if len(y) > len(p) and y.startswith(p):
            return y[len(p):]
    return None


class DecorationData:
    """Source and sink decoration points of an element with canonical representatives."""

    def __init__(self, v: TreePair, rp: RevealingPair | None = None, pdata: PeriodicData | None = None):
        self.v = v.reduced()
        self.vinv = self.v.inverse()
        self.rp = rp if rp is not None else make_revealing(self.v)
        self.pdata = pdata if pdata is not None else periodic_points(self.rp)
        self.depth = max(self.v.depth(), 1)
        self.max_period = max((len(pts) for _, pts, _ in self.pdata.orbits), default=1)
        self.steps = 4 * self.max_period + 4
        self.sources = self._classes(SOURCE)
        self.sinks = self._classes(SINK)

    def is_source_rep(self, p: str) -> bool:
        return source_rep_tail(self.v, self.vinv, p, self.steps) is not None

    def is_sink_rep(self, p: str) -> bool:
        return source_rep_tail(self.vinv, self.v, p, self.steps) is not None

    def _classes(self, kind: str) -> list[DecorationPoint]:
        fwd, back = (self.v, self.vinv) if kind == SOURCE else (self.vinv, self.v)
        orbits = [(pts, b) for k, pts, b in self.pdata.orbits if k == kind]
        out = []
        for pts, b in orbits:
            n = len(pts)
            lmax = self.depth * (n + 2) + 3 * len(b) + 4
            reps = {}
            for pt in pts:
                for ln in range(lmax + 1):
                    p = pt.prefix(ln)
                    if p in reps:
                        continue
                    tail = source_rep_tail(fwd, back, p, self.steps)
                    if tail is not None:
                        reps[p] = tail
            uf = UnionFind(reps)
            powers = [fwd]
            for _ in range(2 * n - 1):
                powers.append(tp_compose(powers[-1], fwd))
            for p in reps:
                for pw in powers:
                    q = pw.image(p)
                    if q is not None and q in reps:
                        uf.union(p, q)
            groups: dict = {}
            for p in reps:
                groups.setdefault(uf.find(p), []).append(p)
            for members in groups.values():
                # classes whose members only sit at the truncation edge are
                # copies of classes already seen with shorter members
                canon = min(members, key=lambda w: (len(w), w))
                if len(canon) > lmax - self.depth - len(b):
                    continue
                letter = flip(reps[canon][0])
                out.append(DecorationPoint(canon, letter, kind, n))
        return sorted(out, key=lambda d: (d.rep, d.letter))

    def canonical_source(self, p: str) -> str | None:
        return self._canonical(p, SOURCE)

    def canonical_sink(self, p: str) -> str | None:
        return self._canonical(p, SINK)

    def _canonical(self, p: str, kind: str) -> str | None:
        """Canonical representative of the class of a representative p."""
        classes = self.sources if kind == SOURCE else self.sinks
        fwd, back = (self.v, self.vinv) if kind == SOURCE else (self.vinv, self.v)
        targets = {d.rep for d in classes}
        if p in targets:
            return p
        # walk the rigid orbit of p in both directions until a canonical rep appears
        seen = {p}
        frontier = [p]
        limit = 8 * (self.max_period + 1) * (len(p) + self.depth + 2)
        for _ in range(limit):
            nxt = []
            for w in frontier:
                for m in (fwd, back):
                    q = m.image(w)
                    if q is None or q in seen:
                        continue
                    if source_rep_tail(fwd, back, q, self.steps) is None:
                        continue
                    if q in targets:
                        return q
                    seen.add(q)
                    nxt.append(q)
            if not nxt:
                break
            frontier = nxt
        # fall back on powers of the map
        for m in (fwd, back):
            pw = m
            for _ in range(4 * self.max_period):
                q = pw.image(p)
                if q in targets:
                    return q
                pw = tp_compose(pw, m)
        return None


Label = tuple[str, str]


@dataclass(frozen=True)
class DecorationMap:
    source_decs: tuple[Label, ...]
    sink_decs: tuple[Label, ...]
    rules: tuple[tuple[tuple[Label, str], tuple[Label, str]], ...]

    def as_dict(self) -> dict:
        return {a: b for a, b in self.rules}

    def inverse(self) -> "DecorationMap":
        return DecorationMap(self.sink_decs, self.source_decs,
                             tuple(sorted((b, a) for a, b in self.rules)))

    def rules_from(self, label: Label) -> dict:
        return {w1: (lab2, w2) for (lab1, w1), (lab2, w2) in self.rules if lab1 == label}

    def check_bijection(self) -> bool:
        per_src: dict = {}
        per_dst: dict = {}
        for (l1, w1), (l2, w2) in self.rules:
            per_src.setdefault(l1, []).append(w1)
            per_dst.setdefault(l2, []).append(w2)
        return (set(per_src) == set(self.source_decs) and set(per_dst) == set(self.sink_decs)
                and all(is_complete_prefix_code(ws) for ws in per_src.values())
                and all(is_complete_prefix_code(ws) for ws in per_dst.values()))


def reduce_labeled_rules(rules: dict) -> tuple:
    """Merge sibling rules (l, w0)->(m, u0), (l, w1)->(m, u1) into (l, w)->(m, u)."""
    m = dict(rules)
    changed = True
    while changed:
        changed = False
        for (lab, w0) in sorted(m, key=lambda k: (-len(k[1]), k)):
            if not w0.endswith("0") or (lab, w0) not in m:
                continue
            w1 = w0[:-1] + "1"
            if (lab, w1) not in m:
                continue
            (l2a, u0), (l2b, u1) = m[(lab, w0)], m[(lab, w1)]
            if l2a == l2b and u0.endswith("0") and u1 == u0[:-1] + "1":
                del m[(lab, w0)], m[(lab, w1)]
                m[(lab, w0[:-1])] = (l2a, u0[:-1])
                changed = True
    return tuple(sorted(m.items()))


def decoration_data(x: TreePair) -> DecorationData:
    return DecorationData(x)


def decoration_map(x: TreePair, data: DecorationData | None = None,
                   max_steps: int = 20000) -> DecorationMap:
    """Flow every source decoration cone forward until each piece lands in a sink decoration."""
    dd = data if data is not None else DecorationData(x)
    v = dd.v
    sink_reps_cache: dict = {}

    def sink_rep(p):
        if p not in sink_reps_cache:
            sink_reps_cache[p] = dd.is_sink_rep(p)
        return sink_reps_cache[p]

    rules = {}
    steps = 0
    for dec in dd.sources:
        todo = [("", dec.rep + dec.letter)]
        while todo:
            steps += 1
            if steps > max_steps:
                raise TreePairError("decoration flow did not terminate")
            w1, c = todo.pop()
            landed = None
            if not sink_rep(c):
                for k in range(len(c) - 1, -1, -1):
                    s2 = c[:k]
                    if sink_rep(s2):
                        landed = s2
                        break
            if landed is not None:
                canon = dd.canonical_sink(landed)
                if canon is None:
                    raise TreePairError(f"sink representative {landed!r} has no class")
                l2, w2 = c[len(landed)], c[len(landed) + 1:]
                lab2 = next((d for d in dd.sinks if d.rep == canon), None)
                if lab2 is None or lab2.letter != l2:
                    raise TreePairError("landing letter is not the sink decoration letter")
                rules[((dec.rep, dec.letter), w1)] = ((canon, l2), w2)
                continue
            img = v.image(c)
            if img is None or sink_rep(c):
                todo.append((w1 + "1", c + "1"))
                todo.append((w1 + "0", c + "0"))
            else:
                todo.append((w1, img))
    red = reduce_labeled_rules(rules)
    return DecorationMap(tuple((d.rep, d.letter) for d in dd.sources),
                         tuple((d.rep, d.letter) for d in dd.sinks), red)


# -- y_w elements of T and their invariant ------------------------------------

def y_word(w: str) -> TreePair:
    """Product of y0/y1 that rigidly maps the cone 0 onto the cone 0w."""
    out = IDENTITY
    for c in reversed(w):
        out = tp_compose(out, Y0 if c == "0" else Y1)
    return out


def necklace(w: str) -> CyclicWord:
    rots = [w[i:] + w[:i] for i in range(len(w))] or [""]
    return CyclicWord(min(rots), len(set(rots)))


def t_word_invariant(w: str) -> CyclicWord:
    """Cyclic class of the longest growth word at a fixed sink point of y_w."""
    if not w or any(c not in "01" for c in w):
        raise ValueError("need a non-empty binary word")
    y = y_word(w)
    inv = make_revealing(y.inverse())
    best = None
    for pts, b in _source_orbits(inv):
        if len(pts) == 1 and (best is None or len(b) > len(best)):
            best = b
    if best is None:
        raise TreePairError("y_w has no fixed sink point")
    return necklace(best)


def necklace_count(n: int, k: int = 2) -> int:
    """Burnside count of binary necklaces of length n."""
    from math import gcd
    phi = lambda m: sum(1 for i in range(1, m + 1) if gcd(i, m) == 1)
    return sum(phi(d) * k ** (n // d) for d in range(1, n + 1) if n % d == 0) // n


# -- the v -> v' construction ------------------------------------------------

PERIODS = (1, 2, 3, 5, 7, 11)


@lru_cache(maxsize=1)
def prime_code() -> dict:
    """The 29-leaf code: 13 depth-4 nodes split, the last 3 kept; p_{i,j} in (i, j) order."""
    depth4 = [format(k, "04b") for k in range(16)]
    leaves = []
    for k, u in enumerate(depth4):
        if k < 13:
            leaves += [u + "0", u + "1"]
        else:
            leaves.append(u)
    leaves.sort()
    assert len(leaves) == 29 and is_complete_prefix_code(leaves)
    labels = [(i, j) for i in PERIODS for j in range(i)]
    return dict(zip(labels, leaves))


def construct_prime(v: TreePair, a: TreePair | None = None, b: TreePair | None = None) -> TreePair:
    if a is None or b is None:
        from .vgen import GEN_A, GEN_B
        a = GEN_A if a is None else a
        b = GEN_B if b is None else b
    p = prime_code()
    m = {}
    for d, r in a.rules:
        m[p[1, 0] + "0" + d] = p[5, 0] + "0" + r
    for d, r in b.rules:
        m[p[2, 1] + "0" + d] = p[7, 0] + "0" + r
    for d, r in v.rules:
        m[p[3, 2] + "0" + d] = p[11, 0] + "0" + r
    m[p[1, 0] + "1"] = p[1, 0]
    m[p[2, 1] + "1"] = p[2, 0]
    m[p[3, 2] + "1"] = p[3, 0]
    for i in PERIODS:
        for j in range(i - 1):
            m[p[i, j]] = p[i, j + 1]
    m[p[5, 4]] = p[5, 0] + "1"
    m[p[7, 6]] = p[7, 0] + "1"
    m[p[11, 10]] = p[11, 0] + "1"
    return TreePair.from_map(m)


def v_sharp(v: TreePair) -> TreePair:
    return cone_embed(v, prime_code()[11, 0] + "0")


def prime_labels() -> dict:
    """Canonical decoration labels of the six decoration points of every v'."""
    p = prime_code()
    out = {}
    for i in PERIODS:
        rep = min((p[i, j] for j in range(i)), key=lambda w: (len(w), w))
        out[i] = (rep, "0")
    return out


def x3_branch_rules(vp: TreePair, dmap: DecorationMap | None = None) -> tuple:
    if dmap is None:
        dmap = decoration_map(vp)
    lab = prime_labels()[3]
    return tuple(sorted(dmap.rules_from(lab).items()))


@lru_cache(maxsize=256)
def prime_branch(v: TreePair) -> tuple:
    """S_x3 branch rules of the decoration map of v' (cached per element)."""
    return x3_branch_rules(construct_prime(v.reduced()))


def distinguish_primes(v: TreePair, w: TreePair) -> bool:
    """True when the decoration maps of v' and w' differ on the S_x3 branch."""
    return prime_branch(v) != prime_branch(w)
