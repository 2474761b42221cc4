from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from autgrowth.thompson import (SWAP_ROOT, VEXAMPLE, Y0, Y1, EventuallyPeriodicPoint,
                                apply_to_point as tp_apply_to_point, random_tree_pair,
                                tp_compose, tp_conjugate)
from autgrowth.transducer import (Transducer, TransducerError, apply_to_point,
                                  compose_pairs_via_transducers, conjugate_by_transducer,
                                  decoration_maps_correspond,
                                  equivalent, evaluate, identity_state, identity_transducer,
                                  minimize, parse_transducer, product, responses,
                                  source_points_preserved, sync_length, tree_pair_to_transducer)

pairs = st.integers(0, 10 ** 9).map(lambda s: random_tree_pair(random.Random(s), 6))

# alternates between copying and flipping letters; no state is the identity
SWAP2 = Transducer(2, ((1, 1), (0, 0)), (("0", "1"), ("1", "0")), 0)


def test_identity_transducer():
    t = identity_transducer()
    assert evaluate(t, "0110") == ("0110", 0)
    assert minimize(t) == t
    assert sync_length(t) == 0 and identity_state(t) == 0


def test_permutation_automaton_does_not_synchronize():
    perm = Transducer(2, ((1, 0), (0, 1)), (("0", "1"), ("1", "0")), 0)
    assert sync_length(perm) is None


def test_duplicate_states_merge():
    dup = Transducer(3, ((1, 2), (1, 2), (1, 2)), (("0", "1"),) * 3, 0)
    assert minimize(dup) == identity_transducer()


def test_identity_state_detection():
    t = tree_pair_to_transducer(Y0)
    q = identity_state(t)
    assert q is not None
    assert evaluate(t, "101", q)[0] == "101"
    assert identity_state(SWAP2) is None


def test_y0_pointwise_to_depth_six():
    t = tree_pair_to_transducer(Y0)
    for n in range(3, 7):
        for bits in itertools.product("01", repeat=n):
            w = "".join(bits)
            out, q = evaluate(t, w)
            assert out == Y0.apply_long(w)
            assert q == identity_state(t)


def test_product_with_inverse_is_identity():
    for x in (Y0, Y1, SWAP_ROOT, VEXAMPLE):
        t, ti = tree_pair_to_transducer(x), tree_pair_to_transducer(x.inverse())
        assert minimize(product(t, ti)) == identity_transducer()
        assert equivalent(product(ti, t), identity_transducer())


def test_parse_round_trip_and_errors():
    t = tree_pair_to_transducer(VEXAMPLE)
    assert parse_transducer(t.to_text()) == t
    assert parse_transducer("states 1 initial 0\n0,0 -> 0,0\n0,1 -> 1,0\n") == identity_transducer()
    with pytest.raises(TransducerError):
        parse_transducer("0,0 -> 0,0")
    with pytest.raises(TransducerError):
        parse_transducer("states 1 initial 0\n0,0 -> 0,0\n")
    with pytest.raises(TransducerError):
        parse_transducer("states 1 initial 0\n0,0 -> 0,1\n0,1 -> 1,0\n")
    with pytest.raises(TransducerError):
        parse_transducer("states 1 initial 0\n0,2 -> 0,0\n0,1 -> 1,0\n")


def test_minimize_errors():
    silent = Transducer(1, ((0, 0),), (("", ""),), 0)
    with pytest.raises(TransducerError):
        minimize(silent)
    prefixed = Transducer(2, ((1, 1), (1, 1)), (("1", "1"), ("0", "1")), 0)
    with pytest.raises(TransducerError):
        minimize(prefixed)


def test_responses_of_tree_pair_transducer():
    t = Transducer(3, ((1, 2), (2, 2), (2, 2)), (("", "1"), ("0", "01"), ("0", "1")), 0)
    r = responses(t)
    assert r[2] == "" and r[1] == "0"


def test_apply_to_point_matches_tree_pair_action():
    rng = random.Random(21)
    for _ in range(40):
        x = random_tree_pair(rng, 6)
        t = tree_pair_to_transducer(x)
        pre = "".join(rng.choice("01") for _ in range(rng.randint(0, 5)))
        per = "".join(rng.choice("01") for _ in range(rng.randint(1, 4)))
        p = EventuallyPeriodicPoint.make(pre, per)
        assert apply_to_point(t, p) == tp_apply_to_point(x, p)


def test_conjugation_examples():
    c, ci = tree_pair_to_transducer(Y1), tree_pair_to_transducer(Y1.inverse())
    assert conjugate_by_transducer(Y0, c, ci) == tp_conjugate(Y0, Y1)
    with pytest.raises(TransducerError):
        conjugate_by_transducer(Y0, c, c)
    assert source_points_preserved(VEXAMPLE, Y0)


@settings(max_examples=40, deadline=None)
@given(pairs, pairs)
def test_product_matches_composition(x, y):
    assert compose_pairs_via_transducers(x, y)
    rng = random.Random(str(x) + str(y))
    t = minimize(product(tree_pair_to_transducer(x), tree_pair_to_transducer(y)))
    w = "".join(rng.choice("01") for _ in range(20))
    assert evaluate(t, w)[0] == tp_compose(x, y).apply_long(w)


@settings(max_examples=40, deadline=None)
@given(pairs)
def test_minimize_idempotent_and_synchronizing(x):
    t = tree_pair_to_transducer(x)
    assert minimize(t) == t
    assert sync_length(t) is not None


def test_decoration_maps_transport_under_conjugation():
    rng = random.Random(41)
    checked = 0
    for _ in range(150):
        v, u = random_tree_pair(rng, 7), random_tree_pair(rng, 6)
        res = decoration_maps_correspond(v, u, rng)
        assert all(res)
        checked += len(res)
    assert checked > 50


def test_decoration_transport_detects_wrong_conjugator(monkeypatch):
    import autgrowth.transducer as tr
    rng = random.Random(42)
    real = tr.tp_conjugate
    failures = checked = 0
    for _ in range(80):
        v, u, other = (random_tree_pair(rng, 6) for _ in range(3))
        monkeypatch.setattr(tr, "tp_conjugate", lambda a, b: real(a, other))
        res = decoration_maps_correspond(v, u, rng)
        if res and real(v, u) != real(v, other):
            checked += 1
            failures += not all(res)
    assert checked > 10 and failures > checked // 2


@settings(max_examples=30, deadline=None)
@given(pairs, st.integers(0, 10 ** 6))
def test_minimize_preserves_behaviour(x, seed):
    rng = random.Random(seed)
    t = tree_pair_to_transducer(x)
    raw = product(t, identity_transducer())
    m = minimize(raw)
    assert minimize(m) == m
    for _ in range(200):
        w = "".join(rng.choice("01") for _ in range(25))
        assert evaluate(m, w)[0] == evaluate(raw, w)[0]


@settings(max_examples=30, deadline=None)
@given(pairs, pairs, pairs)
def test_product_associative_up_to_minimization(x, y, z):
    tx, ty, tz = (tree_pair_to_transducer(p) for p in (x, y, z))
    assert minimize(product(product(tx, ty), tz)) == minimize(product(tx, product(ty, tz)))


def test_sync_finite_on_random_pairs():
    rng = random.Random(43)
    for _ in range(50):
        assert sync_length(tree_pair_to_transducer(random_tree_pair(rng, 7))) is not None
