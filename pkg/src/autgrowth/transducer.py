"""Initial transducers over {0, 1} and their action on tree pairs.

A transducer has states 0..n-1, a transition map ``pi[(q, l)]``, an output
map ``lam[(q, l)]`` (binary words) and an initial state.  Reading a word
concatenates outputs along the path.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .thompson import (DecorationData, EventuallyPeriodicPoint, TreePair, decoration_map,
                       is_complete_prefix_code, make_revealing, periodic_points, tp_compose,
                       tp_conjugate)

LETTERS = ("0", "1")


class TransducerError(ValueError):
    pass


@dataclass(frozen=True)
class Transducer:
    n: int
    pi: tuple      # pi[q][l] -> state
    lam: tuple     # lam[q][l] -> output word
    initial: int = 0

    @staticmethod
    def build(pi: dict, lam: dict, initial, states=None) -> "Transducer":
        """Build from dicts keyed by (state, letter) with arbitrary hashable state names."""
        if states is None:
            states = sorted({q for q, _ in pi} | {initial}, key=repr)
        idx = {q: i for i, q in enumerate(states)}
        p = tuple(tuple(idx[pi[(q, l)]] for l in LETTERS) for q in states)
        o = tuple(tuple(lam[(q, l)] for l in LETTERS) for q in states)
        return Transducer(len(states), p, o, idx[initial])

    def step(self, q: int, l: str) -> tuple[str, int]:
        i = int(l)
        return self.lam[q][i], self.pi[q][i]

    def to_text(self) -> str:
        lines = [f"states {self.n} initial {self.initial}"]
        for q in range(self.n):
            for i, l in enumerate(LETTERS):
                lines.append(f"{q},{l} -> {self.lam[q][i] or '.'},{self.pi[q][i]}")
        return "\n".join(lines) + "\n"


def parse_transducer(text: str) -> Transducer:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("states"):
        raise TransducerError("missing 'states N initial q' header")
    head = lines[0].split()
    if len(head) != 4 or head[2] != "initial":
        raise TransducerError("header must read 'states N initial q'")
    n, q0 = int(head[1]), int(head[3])
    pi, lam = {}, {}
    for ln in lines[1:]:
        try:
            left, right = (s.strip() for s in ln.split("->"))
            q, l = (s.strip() for s in left.split(","))
            out, q2 = (s.strip() for s in right.split(","))
        except ValueError:
            raise TransducerError(f"bad line {ln!r}") from None
        out = "" if out == "." else out
        if l not in LETTERS or any(c not in "01" for c in out):
            raise TransducerError(f"bad letter or output in {ln!r}")
        pi[(int(q), l)] = int(q2)
        lam[(int(q), l)] = out
    for q in range(n):
        for l in LETTERS:
            if (q, l) not in pi:
                raise TransducerError(f"missing transition for state {q} letter {l}")
    if not 0 <= q0 < n or any(not 0 <= v < n for v in pi.values()):
        raise TransducerError("state index out of range")
    return Transducer.build(pi, lam, q0, list(range(n)))


def identity_transducer() -> Transducer:
    return Transducer(1, ((0, 0),), (("0", "1"),), 0)


def evaluate(t: Transducer, w: str, start: int | None = None) -> tuple[str, int]:
    q = t.initial if start is None else start
    out = []
    for l in w:
        o, q = t.step(q, l)
        out.append(o)
    return "".join(out), q


def product(t1: Transducer, t2: Transducer) -> Transducer:
    """Run t1, feed its output to t2; reachable part of the state product."""
    start = (t1.initial, t2.initial)
    pi, lam = {}, {}
    seen = [start]
    q = deque([start])
    index = {start}
    while q:
        s = q.popleft()
        for l in LETTERS:
            o1, a = t1.step(s[0], l)
            o2, b = evaluate(t2, o1, s[1])
            nxt = (a, b)
            pi[(s, l)] = nxt
            lam[(s, l)] = o2
            if nxt not in index:
                index.add(nxt)
                seen.append(nxt)
                q.append(nxt)
    return Transducer.build(pi, lam, start, seen)


def _accessible(t: Transducer) -> list[int]:
    order = [t.initial]
    seen = {t.initial}
    q = deque([t.initial])
    while q:
        s = q.popleft()
        for i in range(2):
            n = t.pi[s][i]
            if n not in seen:
                seen.add(n)
                order.append(n)
                q.append(n)
    return order


def _lcp(a: str, b: str) -> str:
    i = 0
    while i < min(len(a), len(b)) and a[i] == b[i]:
        i += 1
    return a[:i]


def responses(t: Transducer, max_iter: int | None = None) -> list[str]:
    """Longest common prefix of all infinite outputs from each state."""
    if max_iter is None:
        max_iter = 64 * (t.n + 4)
    r = [""] * t.n
    for _ in range(max_iter):
        new = [_lcp(t.lam[q][0] + r[t.pi[q][0]], t.lam[q][1] + r[t.pi[q][1]]) for q in range(t.n)]
        if new == r:
            return r
        r = new
    raise TransducerError("degenerate transducer: responses do not stabilize")


def _check_nondegenerate(t: Transducer) -> None:
    """Every long enough input must produce output: no cycle of empty outputs."""
    empty = {q: [t.pi[q][i] for i in range(2) if not t.lam[q][i]] for q in range(t.n)}
    color = [0] * t.n

    def dfs(u):
        color[u] = 1
        for v in empty[u]:
            if color[v] == 1:
                return True
            if color[v] == 0 and dfs(v):
                return True
        color[u] = 2
        return False

    for q in range(t.n):
        if color[q] == 0 and dfs(q):
            raise TransducerError("degenerate transducer: a loop produces no output")


def _canonical_relabel(t: Transducer) -> Transducer:
    order = _accessible(t)
    idx = {q: i for i, q in enumerate(order)}
    pi = tuple(tuple(idx[t.pi[q][i]] for i in range(2)) for q in order)
    lam = tuple(tuple(t.lam[q][i] for i in range(2)) for q in order)
    return Transducer(len(order), pi, lam, 0)


def minimize(t: Transducer) -> Transducer:
    """Trim, push outputs to complete response, merge equivalent states, relabel by BFS."""
    _check_nondegenerate(t)
    t = _canonical_relabel(t)
    r = responses(t)
    if r[t.initial]:
        raise TransducerError("map is not onto the Cantor space (initial response non-empty)")
    lam = []
    for q in range(t.n):
        row = []
        for i in range(2):
            full = t.lam[q][i] + r[t.pi[q][i]]
            assert full.startswith(r[q])
            row.append(full[len(r[q]):])
        lam.append(tuple(row))
    # Moore partition refinement
    block = {}
    cls = [block.setdefault(lam[q], len(block)) for q in range(t.n)]
    while True:
        sig = {}
        new = [sig.setdefault((cls[q], cls[t.pi[q][0]], cls[t.pi[q][1]]), len(sig)) for q in range(t.n)]
        if len(sig) == len(set(cls)):
            break
        cls = new
    k = len(set(cls))
    pi = [None] * k
    out = [None] * k
    for q in range(t.n):
        c = cls[q]
        if pi[c] is None:
            pi[c] = (cls[t.pi[q][0]], cls[t.pi[q][1]])
            out[c] = lam[q]
    return _canonical_relabel(Transducer(k, tuple(pi), tuple(out), cls[t.initial]))


def equivalent(t1: Transducer, t2: Transducer) -> bool:
    return minimize(t1) == minimize(t2)


def sync_length(t: Transducer, cap: int = 16) -> int | None:
    """Least k <= cap such that every word of length k sends all states to one state."""
    n = t.n
    cur = {tuple(range(n))}
    for k in range(cap + 1):
        if all(len(set(f)) == 1 for f in cur):
            return k
        cur = {tuple(t.pi[f[q]][i] for q in range(n)) for f in cur for i in range(2)}
    return None


def identity_state(t: Transducer) -> int | None:
    for q in range(t.n):
        if t.pi[q] == (q, q) and t.lam[q] == ("0", "1"):
            return q
    return None


def tree_pair_to_transducer(x: TreePair) -> Transducer:
    """States: internal domain nodes still waiting for a leaf, plus the identity state."""
    m = x.mapping
    nodes = {d[:i] for d in m for i in range(len(d))}
    ident = "id"
    pi, lam = {}, {}
    for u in sorted(nodes):
        for l in LETTERS:
            v = u + l
            if v in m:
                pi[(u, l)], lam[(u, l)] = ident, m[v]
            else:
                pi[(u, l)], lam[(u, l)] = v, ""
    for l in LETTERS:
        pi[(ident, l)], lam[(ident, l)] = ident, l
    start = "" if "" in nodes else ident
    return minimize(Transducer.build(pi, lam, start, sorted(nodes) + [ident]))


def apply_to_point(t: Transducer, p: EventuallyPeriodicPoint) -> EventuallyPeriodicPoint:
    out, q = evaluate(t, p.preperiod)
    seen = {}
    outs = []
    while q not in seen:
        seen[q] = len(outs)
        o, q = evaluate(t, p.period_word, q)
        outs.append(o)
    i = seen[q]
    period = "".join(outs[i:])
    if not period:
        raise TransducerError("degenerate output on a periodic input")
    return EventuallyPeriodicPoint.make(out + "".join(outs[:i]), period)


def conjugate_by_transducer(v: TreePair, c: Transducer, c_inv: Transducer,
                            cap: int = 16, max_extra: int = 8) -> TreePair:
    """The tree pair of v^c, which rigidly maps c(w) to c(v(w)) for long enough w."""
    if minimize(product(c, c_inv)) != identity_transducer():
        raise TransducerError("c and c_inv are not mutually inverse")
    k1, k2 = sync_length(c, cap), sync_length(c_inv, cap)
    if k1 is None or k2 is None:
        raise TransducerError(f"transducer not synchronizing within {cap}")
    depth = max(max(len(d) for d in v.domain), k1, k2) + 2
    for extra in range(max_extra + 1):
        d = depth + extra
        rules = {}
        ok = True
        for n in range(2 ** d):
            w = format(n, f"0{d}b") if d else ""
            vw = v.apply_long(w)
            a, qa = evaluate(c, w)
            b, qb = evaluate(c, vw)
            if qa != qb or a in rules:
                ok = False
                break
            rules[a] = b
        if ok and is_complete_prefix_code(rules) and is_complete_prefix_code(rules.values()):
            return TreePair.from_map(rules)
    raise TransducerError("assembled rules do not form a bijection of complete codes")


def source_points_preserved(v: TreePair, u: TreePair) -> bool:
    """Source periodic points of v go to source periodic points of v^c for c = T(u)."""
    c = tree_pair_to_transducer(u)
    vc = conjugate_by_transducer(v, c, tree_pair_to_transducer(u.inverse()))
    src = [p for p, _, kind in periodic_points(make_revealing(v)).isolated if kind == "source"]
    target = {p for p, _, kind in periodic_points(make_revealing(vc)).isolated if kind == "source"}
    return all(apply_to_point(c, p) in target for p in src)


def compose_pairs_via_transducers(x: TreePair, y: TreePair) -> bool:
    """minimize(T(x) T(y)) is isomorphic to T(x then y)."""
    return minimize(product(tree_pair_to_transducer(x), tree_pair_to_transducer(y))) == \
        tree_pair_to_transducer(tp_compose(x, y))


def _split_decorated(dd: DecorationData, w: str, kind: str):
    """(label, rest) for the longest prefix of w that is a decorated representative."""
    is_rep = dd.is_source_rep if kind == "source" else dd.is_sink_rep
    canonical = dd.canonical_source if kind == "source" else dd.canonical_sink
    decs = dd.sources if kind == "source" else dd.sinks
    for k in range(len(w) - 1, -1, -1):
        s = w[:k]
        if not is_rep(s):
            continue
        canon = canonical(s)
        lab = next((d for d in decs if d.rep == canon), None)
        if lab is not None and lab.letter == w[k]:
            return (canon, lab.letter), w[k + 1:]
    return None


def decorated_form(dd: DecorationData, w: str, kind: str, steps: int = 40):
    """Move w along its orbit (forward for sinks, backward for sources) until it
    sits in a decoration cone; return (label, rest) or None."""
    m = dd.v if kind == "sink" else dd.vinv
    for _ in range(steps):
        form = _split_decorated(dd, w, kind)
        if form is not None:
            return form
        w = m.image(w)
        if w is None:
            return None
    return None


def decoration_maps_correspond(v: TreePair, u: TreePair, rng: random.Random | None = None,
                               tail: int = 60) -> list[bool]:
    """For each rule of d_v, push a long word of its source cone and of its target cone
    through c = T(u) and check that d_{v^c} sends the first image to the second.

    The words are padded by 2 * sync length random letters so that both images end in
    the same transducer state, then by ``tail`` further letters.
    """
    rng = rng or random.Random(0)
    c = tree_pair_to_transducer(u)
    k = sync_length(c)
    if k is None:
        raise TransducerError("conjugator is not synchronizing")
    ddv, ddc = DecorationData(v), DecorationData(tp_conjugate(v, u))
    dmv, dmc = decoration_map(v, ddv), decoration_map(ddc.v, ddc)
    out = []
    for (lab1, w1), (lab2, w2) in dmv.rules:
        pad = "".join(rng.choice(LETTERS) for _ in range(2 * k + tail))
        p = evaluate(c, lab1[0] + lab1[1] + w1 + pad)[0]
        q = evaluate(c, lab2[0] + lab2[1] + w2 + pad)[0]
        src, dst = decorated_form(ddc, p, "source"), decorated_form(ddc, q, "sink")
        img = None
        if src is not None:
            for r1, (lab, r2) in dmc.rules_from(src[0]).items():
                if src[1].startswith(r1):
                    img = (lab, r2 + src[1][len(r1):])
                    break
        out.append(img is not None and img == dst)
    return out
