from __future__ import annotations

import random

from autgrowth.thompson import IDENTITY, construct_prime, random_tree_pair, tp_compose, tp_power, v_sharp
from autgrowth.vgen import (BASE, BASE_WORDS, GEN_A, GEN_B, ab_ball, ab_word, base_decomposition,
                            construction_words, evaluate, evaluate_ab, length_constant,
                            parse_word, prime_word, substitute)


def test_generator_orders():
    assert tp_power(GEN_A, 4) == IDENTITY and tp_power(GEN_A, 2) != IDENTITY
    assert tp_power(GEN_B, 6) == IDENTITY
    assert tp_power(GEN_B, 2) != IDENTITY and tp_power(GEN_B, 3) == BASE["t"]


def test_base_words_evaluate():
    for name, word in BASE_WORDS.items():
        assert evaluate_ab(word) == BASE[name]


def test_base_words_are_shortest_for_short_cases():
    ball = ab_ball(9)
    assert ball[BASE["s"]][0] == 2
    assert ball[BASE["t"]][0] == 3
    assert ball[BASE["x1"]][0] == 9
    assert BASE["x0"] not in ball


def test_parse_word():
    assert parse_word("aB b") == [("a", 1), ("b", -1), ("b", 1)]
    assert substitute(parse_word("aB"), {"a": parse_word("bb"), "b": parse_word("a")}) == parse_word("bbA")


def test_base_decomposition_and_ab_word():
    rng = random.Random(31)
    for _ in range(40):
        x = random_tree_pair(rng, 7)
        assert evaluate(base_decomposition(x), BASE) == x.reduced()
        assert evaluate_ab(ab_word(x)) == x.reduced()


def test_construction_words_and_constant():
    cw = construction_words()
    assert evaluate_ab(cw["a#"]) == v_sharp(GEN_A)
    assert evaluate_ab(cw["b#"]) == v_sharp(GEN_B)
    assert length_constant() == 20702
    assert length_constant() == max(map(len, cw.values())) + 1


def test_prime_word_bound_and_value():
    m = length_constant()
    ball = ab_ball(2)
    for v, (n, w) in list(ball.items())[:4]:
        pw = prime_word(w)
        assert len(pw) <= m * n + m
    v = tp_compose(GEN_A, GEN_B)
    assert evaluate_ab(prime_word(parse_word("ab"))) == construct_prime(v)
