from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from autgrowth.growth import BudgetExceeded
from autgrowth.heisenberg import (A_GEN, B_GEN, C_GEN, IDENTITY, MAT_B_INV, commutator,
                                  commutator_length_formula, heis_growth_sandwich, heis_inv,
                                  heis_length, heis_mul, heis_orbit_rep, heis_orbit_rep_raw,
                                  heis_pow, heis_prod, inner_by_b, lower_table, parse_heis,
                                  phi_A, phi_B, phi_B_inv, phi_M, to_matrix, upper_table)

elems = st.tuples(st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30))


def test_commutator_is_c_and_central():
    a_inv, b_inv = heis_inv(A_GEN), heis_inv(B_GEN)
    assert heis_prod(a_inv, b_inv, A_GEN, B_GEN) == C_GEN
    assert commutator(A_GEN, B_GEN) == C_GEN
    ab, ba = heis_mul(A_GEN, B_GEN), heis_mul(B_GEN, A_GEN)
    assert heis_mul(ab, heis_inv(ba)) in (C_GEN, heis_inv(C_GEN))


def test_inverse_law_on_random_elements():
    rng = random.Random(5)
    for _ in range(100):
        x = tuple(rng.randint(-40, 40) for _ in range(3))
        assert heis_mul(x, heis_inv(x)) == IDENTITY == heis_mul(heis_inv(x), x)


@given(elems, elems, elems)
def test_associative_and_c_central(x, y, z):
    assert heis_mul(heis_mul(x, y), z) == heis_mul(x, heis_mul(y, z))
    assert heis_mul(x, C_GEN) == heis_mul(C_GEN, x)


@given(elems, elems)
def test_multiplication_matches_matrix_model(x, y):
    def mm(p, q):
        return tuple(tuple(sum(p[r][t] * q[t][c] for t in range(3)) for c in range(3)) for r in range(3))
    small = lambda v: tuple(max(-6, min(6, t)) for t in v)
    x, y = small(x), small(y)
    assert to_matrix(heis_mul(x, y)) == mm(to_matrix(x), to_matrix(y))


@given(elems, st.integers(-8, 8))
def test_power_formula(x, n):
    acc = IDENTITY
    base = x if n >= 0 else heis_inv(x)
    for _ in range(abs(n)):
        acc = heis_mul(acc, base)
    assert heis_pow(x, n) == acc


def test_lengths():
    assert heis_length(C_GEN, 8) == 4
    assert heis_length(heis_pow(C_GEN, 2), 8) == 6
    assert heis_length(heis_pow(A_GEN, 3), 8) == 3
    with pytest.raises(BudgetExceeded):
        heis_length(heis_pow(C_GEN, 9), 6)


def test_commutator_length_formula_matches_bfs():
    for k in range(1, 10):
        expected = commutator_length_formula(k)
        assert heis_length(heis_pow(C_GEN, k), 12) == expected
        assert heis_length(heis_pow(C_GEN, -k), 12) == expected
    assert [commutator_length_formula(k) for k in (1, 2, 3, 4, 9)] == [4, 6, 8, 8, 12]


def test_orbit_rep_examples():
    assert heis_orbit_rep((2, 4, 7)) == ("general", 2, 1)
    assert heis_orbit_rep(heis_pow(C_GEN, 3)) == ("commutator", 3)
    assert heis_orbit_rep(heis_pow(C_GEN, -3)) == ("commutator", 3)
    assert heis_orbit_rep((5, 0, 0)) == ("general", 5, 0)


def test_automorphism_images():
    assert phi_A(A_GEN) == heis_inv(A_GEN)
    assert phi_A(C_GEN) == heis_inv(C_GEN)
    assert phi_B(B_GEN) == heis_mul(A_GEN, B_GEN)
    assert phi_B(C_GEN) == C_GEN
    assert phi_M(C_GEN, MAT_B_INV) == C_GEN
    with pytest.raises(ValueError):
        phi_M(A_GEN, ((2, 0), (0, 1)))


@given(elems, elems)
def test_automorphisms_are_homomorphisms(x, y):
    for phi in (phi_A, phi_B, phi_B_inv):
        assert phi(heis_mul(x, y)) == heis_mul(phi(x), phi(y))


@given(elems)
def test_automorphism_inverses(x):
    assert phi_A(phi_A(x)) == x
    assert phi_B_inv(phi_B(x)) == x == phi_B(phi_B_inv(x))


@given(elems)
def test_orbit_key_invariance(x):
    key = heis_orbit_rep(x)
    for f in (phi_A, phi_B, phi_B_inv, inner_by_b, lambda v: inner_by_b(v, inverse=True)):
        assert heis_orbit_rep(f(x)) == key


@given(elems)
def test_raw_key_refines_folded_key(x):
    raw, folded = heis_orbit_rep_raw(x), heis_orbit_rep(x)
    assert raw[0] == folded[0]
    if raw[0] == "general":
        d, k = raw[1], raw[2]
        assert folded == ("general", d, min(k, (-k) % d))


def test_sandwich():
    lower, upper = heis_growth_sandwich(14)
    assert lower.counts[0] == 1
    assert lower.kind == "lower_bound" and upper.kind == "upper_bound"
    for n in range(4, 15):
        assert lower.counts[n] >= (n // 2) ** 2 / 4
        assert upper.counts[n] <= (n + 1) ** 2 + lower.counts[n]
    assert lower_table(12, "bfs").counts == lower_table(12).counts
    assert upper_table(6).counts[6] <= 49
    with pytest.raises(ValueError):
        lower_table(5, "guess")


def test_parse():
    assert parse_heis("1, -2,3") == (1, -2, 3)
    with pytest.raises(ValueError):
        parse_heis("1,2")


def test_associativity_on_1000_random_triples():
    rng = random.Random(6)
    for _ in range(1000):
        x, y, z = (tuple(rng.randint(-50, 50) for _ in range(3)) for _ in range(3))
        assert heis_mul(heis_mul(x, y), z) == heis_mul(x, heis_mul(y, z))
