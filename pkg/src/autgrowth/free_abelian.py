"""Z^r under GL_r(Z): gcd canonical form, generating matrices, orbit tables.

Vectors are tuples and act on the right: ``act(x, M)`` is the row vector x*M.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .growth import (GrowthTable, OrbitPartition, enumerate_ball, orbits_by_canonical_form,
                     orbits_by_saturation)

Matrix = tuple[tuple[int, ...], ...]


def identity(r: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def det(m: Matrix) -> int:
    n = len(m)
    a = [[Fraction(v) for v in row] for row in m]
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return int(d)


def is_unimodular(m: Matrix) -> bool:
    return abs(det(m)) == 1


def act(x, m: Matrix) -> tuple[int, ...]:
    r = len(x)
    return tuple(sum(x[i] * m[i][j] for i in range(r)) for j in range(len(m[0])))


def l1(x) -> int:
    return sum(abs(v) for v in x)


def gcd_canonical(x) -> tuple[int, ...]:
    g = 0
    for v in x:
        g = math.gcd(g, v)
    return (g,) + (0,) * (len(x) - 1)


def elementary(r: int, i: int, j: int, c: int) -> Matrix:
    """I + c*e_ij; as a right action it adds c*x_i to x_j."""
    return tuple(tuple(int(a == b) + (c if (a, b) == (i, j) else 0) for b in range(r))
                 for a in range(r))


def swap(r: int, i: int, j: int) -> Matrix:
    perm = list(range(r))
    perm[i], perm[j] = j, i
    return tuple(tuple(int(perm[a] == b) for b in range(r)) for a in range(r))


def negation(r: int, i: int) -> Matrix:
    return tuple(tuple((-1 if a == i else 1) * int(a == b) for b in range(r)) for a in range(r))


def gl_generators(r: int) -> list[Matrix]:
    """Elementary additions (both signs), coordinate swaps, single negations.

    The list is closed under inverses: E_ij(c)^-1 = E_ij(-c), swaps and
    negations are involutions.
    """
    if r < 1:
        raise ValueError("rank must be positive")
    gens: list[Matrix] = []
    for i, j in itertools.permutations(range(r), 2):
        gens.append(elementary(r, i, j, 1))
        gens.append(elementary(r, i, j, -1))
    for i, j in itertools.combinations(range(r), 2):
        gens.append(swap(r, i, j))
    for i in range(r):
        gens.append(negation(r, i))
    return gens


def traced_elimination(x) -> tuple[tuple[int, ...], list[Matrix]]:
    """Euclidean elimination by generator matrices.

    Returns (canonical, trace) with x * trace[0] * trace[1] * ... == canonical
    and every trace entry a member of gl_generators(len(x)).
    """
    r = len(x)
    y = list(x)
    trace: list[Matrix] = []

    def apply(m):
        nonlocal y
        y = list(act(y, m))
        trace.append(m)

    while sum(1 for v in y if v) > 1:
        p = min((i for i in range(r) if y[i]), key=lambda i: (abs(y[i]), i))
        if y[p] < 0:
            apply(negation(r, p))
        for q in range(r):
            if q == p or not y[q]:
                continue
            if y[q] < 0:
                apply(negation(r, q))
            while y[q] >= y[p]:
                apply(elementary(r, p, q, -1))
    nz = [i for i in range(r) if y[i]]
    if nz:
        p = nz[0]
        if y[p] < 0:
            apply(negation(r, p))
        if p != 0:
            apply(swap(r, 0, p))
    return tuple(y), trace


def l1_ball(r: int, n: int) -> dict:
    """The word-metric ball of Z^r for the standard basis: vector -> L1 norm."""
    out: dict = {}

    def rec(prefix, budget):
        if len(prefix) == r:
            out[tuple(prefix)] = n - budget
            return
        for v in range(-budget, budget + 1):
            prefix.append(v)
            rec(prefix, budget - abs(v))
            prefix.pop()

    rec([], n)
    return out


def zr_ball_bfs(r: int, n: int) -> dict:
    gens = []
    for i in range(r):
        for s in (1, -1):
            gens.append(tuple(s * int(j == i) for j in range(r)))
    return enumerate_ball((0,) * r, gens, lambda x, g: tuple(a + b for a, b in zip(x, g)), n)


def alpha_zr(r: int, n_max: int) -> GrowthTable:
    """Exact cumulative automorphic growth of Z^r (standard generators)."""
    if r < 1:
        raise ValueError("rank must be positive")
    return orbits_by_canonical_form(l1_ball(r, n_max), gcd_canonical, certified=True,
                                    radius=n_max)


def zr_saturation(r: int, radius: int, slack: int | None = None) -> OrbitPartition:
    if slack is None:
        slack = 2 * radius
    ball = l1_ball(r, slack)
    auts = [lambda x, m=m: act(x, m) for m in gl_generators(r)]
    return orbits_by_saturation(ball, auts, radius, slack)
