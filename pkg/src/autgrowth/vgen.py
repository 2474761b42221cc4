"""Explicit words for elements of V over a two-element generating set.

Every element is written over the base set {x0, x1, s, t} (s swaps the two
halves, t swaps the cones 10 and 11) by rotating both trees of a tree pair
to the right vine and sorting the leaves with adjacent transpositions.  The
base elements are themselves fixed words in the generators a, b, so every
element of V gets an explicit (not geodesic) word in a, b.
"""
from __future__ import annotations

from functools import lru_cache

from .thompson import (IDENTITY, SWAP_ONE, SWAP_ROOT, X0, X1, TreePair, construct_prime,
                       prime_code, tp_compose, v_sharp)

BASE = {"x0": X0, "x1": X1, "s": SWAP_ROOT, "t": SWAP_ONE}

# generators of V: a rotates the four quarter cones (order 4, in T); b cycles
# 000 -> 01 -> 001 -> 000 inside the cone 0 and swaps 10, 11 (order 6, b^3 = t)
GEN_A = TreePair.from_map({"00": "01", "01": "10", "10": "11", "11": "00"})
GEN_B = TreePair.from_map({"000": "01", "001": "000", "01": "001", "10": "11", "11": "10"})


def parse_word(text: str) -> list:
    """Letters a, b; uppercase is the inverse."""
    return [(c.lower(), -1 if c.isupper() else 1) for c in text if not c.isspace()]


# base elements as words in a, b (shortest, found by breadth-first search)
BASE_WORDS = {
    "x0": parse_word("abAbbbaabaabbba"),
    "x1": parse_word("baabbaabb"),
    "s": parse_word("aa"),
    "t": parse_word("bbb"),
}

Letter = tuple[str, int]


def inv_word(w):
    return [(g, -e) for g, e in reversed(w)]


def free_reduce(w):
    out = []
    for x in w:
        if out and out[-1][0] == x[0] and out[-1][1] == -x[1]:
            out.pop()
        else:
            out.append(x)
    return out


def evaluate(word, table) -> TreePair:
    out = IDENTITY
    inv = {}
    for g, e in word:
        if e > 0:
            out = tp_compose(out, table[g])
        else:
            if g not in inv:
                inv[g] = table[g].inverse()
            out = tp_compose(out, inv[g])
    return out


def word_text(word) -> str:
    return " ".join(g if e > 0 else g + "^-1" for g, e in word)


# -- words over the base set -------------------------------------------------

_TWO = {
    "11": [("x0", 1)],
    "10": [("x0", 1), ("s", 1), ("x0", 1)],
    "01": [("s", 1), ("x0", 1)],
    "00": [("s", 1), ("x0", 1), ("s", 1), ("x0", 1)],
}


@lru_cache(maxsize=None)
def _to_one(u: str) -> tuple:
    """Base word mapping the cone u rigidly onto the cone 1 (u non-empty)."""
    if u == "1":
        return ()
    if u == "0":
        return (("s", 1),)
    return tuple(_TWO[u[:2]]) + _to_one("1" + u[2:])


def rotation_word(u: str) -> list:
    """Base word acting on the cone u as x0 acts on everything."""
    if u == "":
        return [("x0", 1)]
    g = list(_to_one(u))
    return free_reduce(g + [("x1", 1)] + inv_word(g))


def swap_word(u: str) -> list:
    """Base word exchanging the cones u0 and u1."""
    if u == "":
        return [("s", 1)]
    g = list(_to_one(u))
    return free_reduce(g + [("t", 1)] + inv_word(g))


def vine(n: int) -> list[str]:
    return ["1" * i + "0" for i in range(n - 1)] + ["1" * (n - 1)]


def _to_vine(leaves) -> list:
    """Base word for the order-preserving map from the tree ``leaves`` to the vine."""
    cur = sorted(leaves)
    word = []
    while True:
        nodes = {w[:i] for w in cur for i in range(len(w))}
        cand = sorted((u for u in nodes if u + "0" in nodes), key=lambda u: (len(u), u))
        if not cand:
            return word
        u = cand[0]
        word += inv_word(rotation_word(u))
        new = []
        for w in cur:
            if w.startswith(u + "00"):
                new.append(u + "0" + w[len(u) + 2:])
            elif w.startswith(u + "01"):
                new.append(u + "10" + w[len(u) + 2:])
            elif w.startswith(u + "1"):
                new.append(u + "11" + w[len(u) + 1:])
            else:
                new.append(w)
        cur = sorted(new)


def transposition_word(i: int, n: int) -> list:
    """Base word swapping the vine leaves i and i+1 of the n-leaf vine."""
    u = "1" * i
    if i == n - 2:
        return swap_word(u)
    r = rotation_word(u)
    return free_reduce(r + swap_word(u + "0") + inv_word(r))


def base_decomposition(x: TreePair) -> list:
    """A word over {x0, x1, s, t} evaluating to x."""
    x = x.reduced()
    dom = sorted(x.domain)
    ran = sorted(x.range)
    n = len(dom)
    m = x.mapping
    idx = {r: i for i, r in enumerate(ran)}
    arr = [idx[m[d]] for d in dom]
    perm_word = []
    for end in range(n - 1, 0, -1):
        for p in range(end):
            if arr[p] > arr[p + 1]:
                arr[p], arr[p + 1] = arr[p + 1], arr[p]
                perm_word += transposition_word(p, n)
    word = _to_vine(dom) + perm_word + inv_word(_to_vine(ran))
    return free_reduce(word)


# -- words over a, b ---------------------------------------------------------

def ab_word(x: TreePair) -> list:
    """An explicit word in a, b evaluating to x (upper bound on the word length)."""
    bw = BASE_WORDS
    out = []
    for g, e in base_decomposition(x):
        out += bw[g] if e > 0 else inv_word(bw[g])
    return free_reduce(out)


GEN_TABLE = {"a": GEN_A, "b": GEN_B}


def evaluate_ab(word) -> TreePair:
    return evaluate(word, GEN_TABLE)


def substitute(word, images: dict) -> list:
    out = []
    for g, e in word:
        out += images[g] if e > 0 else inv_word(images[g])
    return free_reduce(out)


@lru_cache(maxsize=1)
def construction_words() -> dict:
    """Explicit words in a, b for a#, b# and 1'."""
    return {
        "a#": ab_word(v_sharp(GEN_A)),
        "b#": ab_word(v_sharp(GEN_B)),
        "1'": ab_word(construct_prime(IDENTITY)),
    }


def length_constant() -> int:
    """m with |v'| <= m|v| + m: one more than the longest of the three words."""
    return max(len(w) for w in construction_words().values()) + 1


def prime_word(v_word) -> list:
    """Word for v' = 1' v# given a word for v in a, b."""
    cw = construction_words()
    return free_reduce(cw["1'"] + substitute(v_word, {"a": cw["a#"], "b": cw["b#"]}))


def ab_ball(radius: int) -> dict:
    """Exact word lengths over {a, b} by breadth-first search; element -> (length, word)."""
    gens = [("a", 1), ("b", 1), ("a", -1), ("b", -1)]
    mats = {("a", 1): GEN_A, ("b", 1): GEN_B, ("a", -1): GEN_A.inverse(), ("b", -1): GEN_B.inverse()}
    out = {IDENTITY: (0, [])}
    front = [IDENTITY]
    for r in range(1, radius + 1):
        nxt = []
        for x in front:
            w = out[x][1]
            for g in gens:
                y = tp_compose(x, mats[g])
                if y not in out:
                    out[y] = (r, w + [g])
                    nxt.append(y)
        front = nxt
    return out


__all__ = ["BASE", "GEN_A", "GEN_B", "BASE_WORDS", "parse_word", "base_decomposition", "ab_word", "evaluate",
           "evaluate_ab", "construction_words", "length_constant", "prime_word", "ab_ball",
           "prime_code"]
