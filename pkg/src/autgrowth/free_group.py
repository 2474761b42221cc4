"""Whitehead automorphisms of free groups of rank 2 and 3.

Words are tuples of (generator, sign) letters as in :mod:`autgrowth.words`.
Everything works on cyclic words, which absorbs inner automorphisms.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .growth import BudgetExceeded, OrbitPartition, UnionFind
from .words import (CyclicWord, Word, cyclic_canonical, cyclic_reduce, free_reduce,
                    inverse, letter_key, to_text, word_key)

CODES = ("fix", "right", "left", "conj")


@dataclass(frozen=True)
class WhiteheadAut:
    """Either a signed permutation of the generators or a multiplier automorphism.

    ``perm[g] = (h, s)`` sends generator g to h^s.  A multiplier fixes the
    letter ``letter = (g, s)`` and sends every other generator x to one of
    x, x*a, a^-1*x, a^-1*x*a according to ``codes[x]``.
    """

    rank: int
    perm: tuple[tuple[int, int], ...] | None = None
    letter: tuple[int, int] | None = None
    codes: tuple[str, ...] | None = None

    def __post_init__(self):
        if (self.perm is None) == (self.letter is None):
            raise ValueError("give exactly one of perm or letter")
        if self.perm is not None:
            if len(self.perm) != self.rank or sorted(h for h, _ in self.perm) != list(range(self.rank)):
                raise ValueError("perm must be a signed permutation of the generators")
            if any(s not in (1, -1) for _, s in self.perm):
                raise ValueError("bad sign in perm")
        else:
            g, s = self.letter
            if not 0 <= g < self.rank or s not in (1, -1):
                raise ValueError("bad multiplier letter")
            if self.codes is None or len(self.codes) != self.rank:
                raise ValueError("codes needed for every generator")
            if any(c not in CODES for c in self.codes):
                raise ValueError("unknown code")
            if self.codes[g] != "fix":
                raise ValueError("the multiplier's own generator must be fixed")

    @property
    def kind(self) -> str:
        return "permutation" if self.perm is not None else "multiplier"

    def image(self, g: int) -> Word:
        if self.perm is not None:
            return (self.perm[g],)
        a = self.letter
        ai = (a[0], -a[1])
        code = self.codes[g]
        x = (g, 1)
        if code == "fix":
            return (x,)
        if code == "right":
            return (x, a)
        if code == "left":
            return (ai, x)
        return (ai, x, a)

    def __str__(self):
        if self.perm is not None:
            return "perm(" + ",".join(f"{to_text(((g, 1),))}->{to_text((p,))}"
                                      for g, p in enumerate(self.perm)) + ")"
        parts = [f"{to_text(((g, 1),))}->{to_text(self.image(g))}"
                 for g in range(self.rank) if self.codes[g] != "fix"]
        return f"mult[{to_text((self.letter,))}](" + ",".join(parts) + ")"


def apply_whitehead(phi: WhiteheadAut, w) -> Word:
    out = []
    for g, s in w:
        if g >= phi.rank:
            raise ValueError(f"letter {g} outside rank {phi.rank}")
        img = phi.image(g)
        out.extend(img if s > 0 else inverse(img))
    return free_reduce(out)


@lru_cache(maxsize=None)
def permutation_auts(rank: int) -> tuple[WhiteheadAut, ...]:
    out = []
    for p in itertools.permutations(range(rank)):
        for signs in itertools.product((1, -1), repeat=rank):
            out.append(WhiteheadAut(rank, perm=tuple(zip(p, signs))))
    return tuple(out)


@lru_cache(maxsize=None)
def multiplier_auts(rank: int) -> tuple[WhiteheadAut, ...]:
    """Non-trivial multipliers ordered by (letter, code vector)."""
    if rank not in (2, 3):
        raise ValueError("only ranks 2 and 3 are supported")
    out = []
    letters = sorted(((g, s) for g in range(rank) for s in (1, -1)), key=letter_key)
    for a in letters:
        others = [x for x in range(rank) if x != a[0]]
        for combo in itertools.product(CODES, repeat=len(others)):
            if all(c == "fix" for c in combo):
                continue
            codes = ["fix"] * rank
            for x, c in zip(others, combo):
                codes[x] = c
            out.append(WhiteheadAut(rank, letter=a, codes=tuple(codes)))
    return tuple(out)


def all_whitehead(rank: int) -> tuple[WhiteheadAut, ...]:
    return permutation_auts(rank) + multiplier_auts(rank)


def infer_rank(*words) -> int:
    top = max((g for w in words for g, _ in w), default=-1)
    return max(2, top + 1)


def cyclic_core(w) -> Word:
    return cyclic_reduce(w)[0]


def whitehead_minimize(w, rank: int | None = None) -> tuple[CyclicWord, list[WhiteheadAut]]:
    """Greedy descent: apply the first cyclic-length-decreasing multiplier until none exists."""
    if rank is None:
        rank = infer_rank(w)
    u = cyclic_core(free_reduce(w))
    trace: list[WhiteheadAut] = []
    autos = multiplier_auts(rank)
    improved = True
    while improved:
        improved = False
        for phi in autos:
            v = cyclic_core(apply_whitehead(phi, u))
            if len(v) < len(u):
                u = v
                trace.append(phi)
                improved = True
                break
    return cyclic_canonical(u), trace


def replay_trace(w, trace) -> CyclicWord:
    u = free_reduce(w)
    for phi in trace:
        u = apply_whitehead(phi, u)
    return cyclic_canonical(cyclic_core(u))


def is_automorphically_minimal(w, rank: int | None = None) -> bool:
    if rank is None:
        rank = infer_rank(w)
    u = cyclic_core(free_reduce(w))
    return all(len(cyclic_core(apply_whitehead(phi, u))) >= len(u)
               for phi in multiplier_auts(rank))


def level_neighbours(rep: Word, rank: int) -> list[Word]:
    """Canonical cyclic words reached by one length-preserving Whitehead move."""
    out = []
    for phi in all_whitehead(rank):
        v = cyclic_core(apply_whitehead(phi, rep))
        if len(v) == len(rep):
            out.append(cyclic_canonical(v).representative)
    return out


@lru_cache(maxsize=4096)
def level_component(rep: Word, rank: int, max_nodes: int = 200_000) -> frozenset:
    """All canonical minimal cyclic words connected to ``rep`` by length-preserving moves."""
    seen = {rep}
    q = deque([rep])
    while q:
        x = q.popleft()
        for y in level_neighbours(x, rank):
            if y not in seen:
                seen.add(y)
                if len(seen) > max_nodes:
                    raise BudgetExceeded("level component too large", len(x))
                q.append(y)
    return frozenset(seen)


def orbit_equal_small(u, v, budget: int = 10, rank: int | None = None) -> bool:
    """Decide whether u and v lie in the same Aut(F)-orbit (Whitehead's algorithm)."""
    if len(free_reduce(u)) > budget or len(free_reduce(v)) > budget:
        raise BudgetExceeded(f"word longer than budget {budget}", budget)
    if rank is None:
        rank = infer_rank(u, v)
    mu, _ = whitehead_minimize(u, rank)
    mv, _ = whitehead_minimize(v, rank)
    if len(mu) != len(mv):
        return False
    if mu.representative == mv.representative:
        return True
    return mv.representative in level_component(mu.representative, rank)


def permutation_class(w, rank: int = 2) -> Word:
    """Least canonical cyclic word over all signed generator permutations of w."""
    reps = [cyclic_canonical(cyclic_core(apply_whitehead(p, w))).representative
            for p in permutation_auts(rank)]
    return min(reps, key=word_key)


# -- the exponent family a^i1 b^j1 ... a^ik b^jk ------------------------------

@dataclass(frozen=True)
class ExponentWord:
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.pairs:
            raise ValueError("need at least one pair")
        if any(i == 0 or j == 0 for i, j in self.pairs):
            raise ValueError("exponents must be non-zero")

    @property
    def length(self) -> int:
        return sum(abs(i) + abs(j) for i, j in self.pairs)

    def word(self) -> Word:
        out = []
        for i, j in self.pairs:
            out.extend([(0, 1 if i > 0 else -1)] * abs(i))
            out.extend([(1, 1 if j > 0 else -1)] * abs(j))
        return tuple(out)


def compositions(total: int, parts: int, least: int):
    """Ordered tuples of ``parts`` integers >= least summing to total."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(least, total - least * (parts - 1) + 1):
        for rest in compositions(total - first, parts - 1, least):
            yield (first,) + rest


def exponent_words(total: int, least: int, signed: bool = True):
    """All exponent words of exact length ``total`` with every |exponent| >= least."""
    for k in range(1, total // (2 * least) + 1):
        for comp in compositions(total, 2 * k, least):
            sign_sets = itertools.product((1, -1), repeat=2 * k) if signed else [(1,) * (2 * k)]
            for signs in sign_sets:
                vals = [c * s for c, s in zip(comp, signs)]
                yield ExponentWord(tuple(zip(vals[0::2], vals[1::2])))


def pair_necklace(pairs) -> tuple:
    return min(tuple(pairs[i:] + pairs[:i]) for i in range(len(pairs)))


@dataclass
class FamilyCount:
    m: int
    mode: str
    count: int
    bound: int


def family_bound(m: int) -> int:
    """Sum over k <= m/6 of floor(C(m - 4k - 1, 2k - 1) / k)."""
    return sum(math.comb(m - 4 * k - 1, 2 * k - 1) // k for k in range(1, m // 6 + 1))


def count_normal_family(m: int, mode: str = "positive") -> FamilyCount:
    """Count exponent words of length m with all exponents >= 3 (in absolute value for
    mode ``absolute``) up to rotation of the pair sequence.  Mode ``orbit`` counts
    classes of the positive family under rotation plus letter permutations, i.e.
    distinct automorphic orbits met by the family.
    """
    if m < 6:
        raise ValueError("m must be at least 6")
    if mode == "positive":
        keys = {pair_necklace(e.pairs) for e in exponent_words(m, 3, signed=False)}
    elif mode == "absolute":
        keys = {pair_necklace(e.pairs) for e in exponent_words(m, 3, signed=True)}
    elif mode == "orbit":
        keys = {permutation_class(e.word()) for e in exponent_words(m, 3, signed=False)}
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return FamilyCount(m, mode, len(keys), family_bound(m))


# -- saturation oracle -------------------------------------------------------

def cyclic_words_f2(max_len: int) -> list[Word]:
    """Canonical representatives of all non-trivial cyclic words of length <= max_len in F_2."""
    letters = [(0, 1), (0, -1), (1, 1), (1, -1)]
    reps = set()
    for n in range(1, max_len + 1):
        def rec(prefix):
            if len(prefix) == n:
                if len(prefix) < 2 or not (prefix[0][0] == prefix[-1][0] and prefix[0][1] == -prefix[-1][1]):
                    reps.add(cyclic_canonical(prefix).representative)
                return
            for x in letters:
                if prefix and prefix[-1][0] == x[0] and prefix[-1][1] == -x[1]:
                    continue
                rec(prefix + (x,))
        rec(())
    return sorted(reps, key=lambda w: (len(w), word_key(w)))


def saturation_oracle_f2(radius: int, slack: int | None = None) -> OrbitPartition:
    """Union-find closure of cyclic words of length <= radius under all Whitehead moves
    whose images have length <= slack."""
    if slack is None:
        slack = radius + 2
    if slack < radius:
        raise ValueError("slack must be at least the radius")
    if slack > 12:
        raise BudgetExceeded("slack above 12 is outside the memory budget", radius)
    nodes = [()] + cyclic_words_f2(slack)
    uf = UnionFind(nodes)
    node_set = set(nodes)
    autos = all_whitehead(2)
    for w in nodes:
        for phi in autos:
            v = cyclic_canonical(cyclic_core(apply_whitehead(phi, w))).representative
            if v in node_set:
                uf.union(w, v)
    seeds = {w: len(w) for w in nodes if len(w) <= radius}
    return OrbitPartition(seeds, {w: uf.find(w) for w in seeds})
