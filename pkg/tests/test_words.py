from __future__ import annotations

from hypothesis import given, strategies as st

from autgrowth.words import (CyclicWord, cyclic_canonical, cyclic_class, cyclic_reduce, free_reduce,
                             inverse, is_cyclically_reduced, multiply, parse_word, rotations,
                             to_text)

letters = st.tuples(st.integers(0, 2), st.sampled_from([1, -1]))
words = st.lists(letters, max_size=14).map(tuple)


def W(text):
    return parse_word(text)


def test_free_reduce_examples():
    assert free_reduce(W("abBa")) == W("aa")
    assert free_reduce(()) == ()
    assert free_reduce(W("aA")) == ()


def test_cyclic_reduce_examples():
    assert cyclic_reduce(W("Abca")) == (W("bc"), W("a"))
    assert cyclic_reduce(W("ab")) == (W("ab"), ())
    assert cyclic_reduce(W("Bab")) == (W("a"), W("b"))


def test_cyclic_canonical_examples():
    assert cyclic_canonical(W("ba")) == CyclicWord(W("ab"), 2)
    assert cyclic_canonical(W("aa")) == CyclicWord(W("aa"), 1)
    assert cyclic_canonical(W("abab")) == CyclicWord(W("abab"), 2)


def test_letter_order_puts_positive_before_negative():
    assert cyclic_canonical(W("Aa"[::-1] + "b")).representative[0] == (0, 1)
    assert cyclic_canonical(W("bA")).representative == W("Ab")


def test_text_round_trip():
    assert to_text(W("abA")) == "abA"
    assert W("abA") == ((0, 1), (1, 1), (0, -1))
    assert W("e") == ()
    assert str(cyclic_canonical(W("ba"))) == "cyclic(ab)"


def test_bad_letter_rejected():
    import pytest
    with pytest.raises(ValueError):
        W("a1b")


@given(words)
def test_free_reduce_idempotent_and_shortening(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert len(r) <= len(w)
    assert all(not (x[0] == y[0] and x[1] == -y[1]) for x, y in zip(r, r[1:]))


@given(words)
def test_cyclic_reduce_conjugation_identity(w):
    core, c = cyclic_reduce(w)
    assert is_cyclically_reduced(core)
    assert multiply(inverse(c), core, c) == free_reduce(w)
    assert cyclic_reduce(core)[0] == core


@given(words, st.integers(0, 20))
def test_canonical_is_rotation_invariant(w, k):
    core = cyclic_reduce(w)[0]
    if not core:
        return
    rot = rotations(core)[k % len(core)]
    a, b = cyclic_canonical(core), cyclic_canonical(rot)
    assert a == b
    assert len(core) % a.class_size == 0
    assert a.representative in rotations(core)


@given(words)
def test_cyclic_class_of_conjugate(w):
    g = W("ab")
    assert cyclic_class(multiply(inverse(g), w, g)) == cyclic_class(w)
