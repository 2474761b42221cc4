"""Free group words: free and cyclic reduction, canonical rotations, text format.

A word is a tuple of letters; a letter is ``(generator index, sign)`` with sign
in ``{+1, -1}``.  Text format uses ``a..z`` for generators 0..25 and uppercase
for their inverses, so ``"abA"`` is a*b*a^-1.
"""
from __future__ import annotations

from dataclasses import dataclass

Letter = tuple[int, int]
Word = tuple[Letter, ...]


def inverse_letter(x: Letter) -> Letter:
    return (x[0], -x[1])


def inverse(w) -> Word:
    return tuple((g, -s) for g, s in reversed(w))


def free_reduce(w) -> Word:
    out: list[Letter] = []
    for g, s in w:
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


def multiply(*words) -> Word:
    acc: list[Letter] = []
    for w in words:
        acc.extend(w)
    return free_reduce(acc)


def cyclic_reduce(w) -> tuple[Word, Word]:
    """Return (core, conjugator) with conjugator^-1 * core * conjugator == w."""
    w = free_reduce(w)
    i, j = 0, len(w) - 1
    while i < j and w[i][0] == w[j][0] and w[i][1] == -w[j][1]:
        i += 1
        j -= 1
    core = w[i:j + 1]
    # w = c^-1 core c with c = w[j+1:]
    return core, w[j + 1:]


def is_cyclically_reduced(w) -> bool:
    return len(w) < 2 or not (w[0][0] == w[-1][0] and w[0][1] == -w[-1][1])


def letter_key(x: Letter) -> tuple[int, int]:
    # generator index first, then +1 before -1
    return (x[0], 0 if x[1] > 0 else 1)


def word_key(w) -> tuple:
    return tuple(letter_key(x) for x in w)


@dataclass(frozen=True)
class CyclicWord:
    representative: Word
    class_size: int

    def __len__(self):
        return len(self.representative)

    def __str__(self):
        rep = self.representative
        return f"cyclic({rep if isinstance(rep, str) else to_text(rep)})"


def rotations(w) -> list[Word]:
    w = tuple(w)
    return [w[i:] + w[:i] for i in range(max(len(w), 1))]


def cyclic_canonical(w) -> CyclicWord:
    w = tuple(w)
    if not w:
        return CyclicWord((), 1)
    rots = rotations(w)
    best = min(rots, key=word_key)
    return CyclicWord(best, len(set(rots)))


def cyclic_class(w) -> CyclicWord:
    """Cyclically reduce, then canonicalize."""
    return cyclic_canonical(cyclic_reduce(w)[0])


def parse_word(text: str) -> Word:
    text = text.strip()
    if text in ("", "e", "1"):
        return ()
    out = []
    for ch in text:
        if "a" <= ch <= "z":
            out.append((ord(ch) - ord("a"), 1))
        elif "A" <= ch <= "Z":
            out.append((ord(ch) - ord("A"), -1))
        elif ch in " *.":
            continue
        else:
            raise ValueError(f"bad letter {ch!r} in word {text!r}")
    return tuple(out)


def to_text(w) -> str:
    return "".join(chr((ord("a") if s > 0 else ord("A")) + g) for g, s in w)


def power(letter: Letter, n: int) -> Word:
    g, s = letter
    return ((g, s if n > 0 else -s),) * abs(n)
