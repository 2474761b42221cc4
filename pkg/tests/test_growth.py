from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from autgrowth.free_abelian import act, gcd_canonical, gl_generators, l1_ball, zr_saturation
from autgrowth.growth import (EXACT, LOWER, UPPER, BudgetExceeded, GrowthTable, UnionFind,
                              compare_growth, enumerate_ball, estimate_rate, layer_sizes,
                              orbits_by_canonical_form, orbits_by_saturation, point_mass,
                              product_growth)
from autgrowth.heisenberg import C_GEN, heis_ball, heis_orbit_rep
from autgrowth.words import free_reduce


def z_ball(radius):
    return enumerate_ball(0, [1, -1], lambda x, g: x + g, radius)


def line(n_max):
    return GrowthTable([n + 1 for n in range(n_max + 1)])


def test_enumerate_ball_examples():
    assert z_ball(2) == {0: 0, 1: 1, -1: 1, 2: 2, -2: 2}
    gens = [((0, 1),), ((0, -1),), ((1, 1),), ((1, -1),)]
    f2 = enumerate_ball((), gens, lambda w, g: free_reduce(w + g), 1)
    assert len(f2) == 5
    assert heis_ball(4)[C_GEN] == 4


def test_enumerate_ball_budget():
    with pytest.raises(BudgetExceeded) as err:
        enumerate_ball(0, [1, -1], lambda x, g: x + g, 10, max_size=6)
    assert err.value.completed_radius == 2


def test_layer_sizes_closed_forms():
    assert layer_sizes(z_ball(7)) == [1] + [2] * 7
    assert layer_sizes(l1_ball(2, 7)) == [1] + [4 * n for n in range(1, 8)]


def test_orbits_by_canonical_form_examples():
    assert orbits_by_canonical_form(l1_ball(2, 5), gcd_canonical, certified=True).counts == [1, 2, 3, 4, 5, 6]
    ident = orbits_by_canonical_form(z_ball(4), lambda x: x)
    assert ident.counts == [1, 3, 5, 7, 9]
    assert ident.kind == UPPER
    heis = orbits_by_canonical_form(heis_ball(6), heis_orbit_rep)
    assert heis.counts[6] <= 49


def test_orbits_by_saturation_examples():
    part = zr_saturation(2, 4, 8)
    keys = {gcd_canonical(c[0])[0] for c in part.classes()}
    assert part.num_classes == 5 and keys == {0, 1, 2, 3, 4}
    single = orbits_by_saturation(z_ball(3), [], 3)
    assert single.num_classes == 7
    neg = orbits_by_saturation(z_ball(6), [lambda x: -x], 3, 6)
    assert sorted(sorted(c) for c in neg.classes()) == [[-3, 3], [-2, 2], [-1, 1], [0]]
    with pytest.raises(ValueError):
        orbits_by_saturation(z_ball(3), [], 3, 2)


@pytest.mark.parametrize("radius", [2, 5, 8])
def test_saturation_agrees_with_gcd_fibers(radius):
    part = zr_saturation(2, radius, 2 * radius)
    canon = orbits_by_canonical_form(l1_ball(2, radius), gcd_canonical, certified=True)
    assert part.table(radius).counts == canon.counts
    for c in part.classes():
        assert len({gcd_canonical(x) for x in c}) == 1


def test_saturation_class_minimum_is_member_minimum():
    part = zr_saturation(2, 4, 8)
    for c in part.classes():
        rep = part.class_of[c[0]]
        assert part.min_length[rep] == min(part.lengths[x] for x in c)


def test_product_growth_examples():
    z = line(12)
    assert product_growth(z, z).counts == [(n + 1) * (n + 2) // 2 for n in range(13)]
    assert product_growth(z, point_mass(12)).counts == z.counts
    assert product_growth(z, point_mass(12)).kind == EXACT


def test_product_growth_kind_degrades():
    up = GrowthTable([1, 2, 3], UPPER)
    out = product_growth(up, line(2))
    assert out.kind == UPPER and out.flags
    with pytest.raises(ValueError):
        product_growth(up, GrowthTable([1, 1, 1], LOWER))


def test_compare_growth_examples():
    quad = GrowthTable([(n + 1) ** 2 for n in range(31)])
    assert compare_growth(line(30), line(30), 3) == ("precedes", 1)
    assert compare_growth(line(30), quad, 3)[0] == "precedes"
    assert compare_growth(quad, line(30), 3) == ("incomparable_at_this_lambda", None)


def test_estimate_rate_examples():
    assert abs(estimate_rate(line(30)).poly_degree_estimate - 1) < 0.1
    sq = GrowthTable([(n + 1) ** 2 for n in range(31)])
    assert abs(estimate_rate(sq).poly_degree_estimate - 2) < 0.1
    ex = GrowthTable([2 ** n for n in range(31)])
    assert abs(estimate_rate(ex).exp_rate_estimate / math.log(2) - 1) < 0.05


def test_estimate_rate_skips_zeros_and_needs_length():
    t = GrowthTable([0, 0, 0, 0, 0, 0, 0, 1, 2, 3], cumulative=False)
    assert estimate_rate(t).skipped == (4, 5, 6)
    with pytest.raises(ValueError):
        estimate_rate(line(5))


def test_table_invariants_and_csv():
    with pytest.raises(ValueError):
        GrowthTable([1, 3, 2])
    with pytest.raises(ValueError):
        GrowthTable([1], kind="roughly")
    t = GrowthTable([1, 3, 6, 10], UPPER)
    text = t.to_csv()
    assert text.splitlines()[0] == "n,count,kind,cumulative"
    back = GrowthTable.from_csv(text)
    assert back.counts == t.counts and back.kind == UPPER and back.cumulative


def test_union_find():
    uf = UnionFind(range(5))
    assert uf.union(0, 1) and uf.union(3, 4) and not uf.union(1, 0)
    assert uf.find(0) == uf.find(1) != uf.find(3)


tables = st.lists(st.integers(0, 9), min_size=1, max_size=12).map(
    lambda h: GrowthTable(h, cumulative=False).as_cumulative())


@given(tables, tables)
def test_product_growth_commutes(h, k):
    assert product_growth(h, k).counts == product_growth(k, h).counts


@given(tables)
def test_histogram_round_trip(t):
    assert GrowthTable(t.histogram(), cumulative=False).as_cumulative().counts == t.counts
    assert product_growth(t, point_mass(t.max_n)).counts == t.counts


@given(st.lists(st.integers(-6, 6), min_size=2, max_size=2), st.lists(st.integers(0, 5), max_size=5))
def test_gcd_canonical_constant_on_orbits(x, picks):
    gens = gl_generators(2)
    y = tuple(x)
    for p in picks:
        y = act(y, gens[p % len(gens)])
    assert gcd_canonical(y) == gcd_canonical(tuple(x))
