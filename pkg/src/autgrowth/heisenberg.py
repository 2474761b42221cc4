"""The integral Heisenberg group in Mal'cev coordinates.

An element is a triple (i, j, k) standing for a^i b^j c^k with c = [a, b]
central.  Moving b^j past a^i' costs c^(-j*i'), which gives

    (i, j, k) * (i', j', k') = (i + i', j + j', k + k' - j*i').

Check of the convention (also run as a test):
    a^-1 b^-1       = (-1, -1, 0)
    (-1, -1, 0) * a = (0, -1, 0 - (-1)(1)) = (0, -1, 1)
    (0, -1, 1) * b  = (0, 0, 1 - (-1)(0))  = (0, 0, 1) = c
so a^-1 b^-1 a b = c, i.e. c = [a, b] with [x, y] = x^-1 y^-1 x y.
"""
from __future__ import annotations

import math
from functools import lru_cache

from .free_abelian import Matrix, det, traced_elimination
from .growth import LOWER, UPPER, BudgetExceeded, GrowthTable, enumerate_ball

Heis = tuple[int, int, int]

IDENTITY: Heis = (0, 0, 0)
A_GEN: Heis = (1, 0, 0)
B_GEN: Heis = (0, 1, 0)
C_GEN: Heis = (0, 0, 1)

# the two named matrices and the inverse of the unitriangular one
MAT_A: Matrix = ((-1, 0), (0, 1))
MAT_B: Matrix = ((1, 0), (1, 1))
MAT_B_INV: Matrix = ((1, 0), (-1, 1))
MAT_FLIP_B: Matrix = ((1, 0), (0, -1))


def heis_mul(x: Heis, y: Heis) -> Heis:
    return (x[0] + y[0], x[1] + y[1], x[2] + y[2] - x[1] * y[0])


def heis_inv(x: Heis) -> Heis:
    i, j, k = x
    return (-i, -j, -k - i * j)


def heis_pow(x: Heis, n: int) -> Heis:
    i, j, k = x
    return (n * i, n * j, n * k - i * j * (n * (n - 1) // 2))


def heis_prod(*xs: Heis) -> Heis:
    acc = IDENTITY
    for x in xs:
        acc = heis_mul(acc, x)
    return acc


def commutator(x: Heis, y: Heis) -> Heis:
    return heis_prod(heis_inv(x), heis_inv(y), x, y)


def conjugate(x: Heis, g: Heis) -> Heis:
    """x^g = g^-1 x g."""
    return heis_prod(heis_inv(g), x, g)


def inner_by_b(x: Heis, inverse: bool = False) -> Heis:
    return conjugate(x, heis_inv(B_GEN) if inverse else B_GEN)


def phi_M(x: Heis, m: Matrix) -> Heis:
    """The automorphism a -> a^m11 b^m12, b -> a^m21 b^m22, c -> c^det(m)."""
    d = det(m)
    if abs(d) != 1:
        raise ValueError("matrix is not in GL_2(Z)")
    ia = (m[0][0], m[0][1], 0)
    ib = (m[1][0], m[1][1], 0)
    i, j, k = x
    return heis_prod(heis_pow(ia, i), heis_pow(ib, j), (0, 0, d * k))


def phi_A(x: Heis) -> Heis:
    return phi_M(x, MAT_A)


def phi_B(x: Heis) -> Heis:
    return phi_M(x, MAT_B)


def phi_B_inv(x: Heis) -> Heis:
    return phi_M(x, MAT_B_INV)


def is_central(x: Heis) -> bool:
    return x[0] == 0 and x[1] == 0


def reduce_to_axis(x: Heis) -> tuple[Heis, list[Matrix]]:
    """Move (i, j, k) to (d, 0, k') by automorphisms phi_M of elimination matrices."""
    _, trace = traced_elimination((x[0], x[1]))
    y = x
    for m in trace:
        y = phi_M(y, m)
    return y, trace


def heis_orbit_rep(x: Heis) -> tuple:
    """Orbit key: ("commutator", |k|) on the centre, ("general", d, r) elsewhere.

    For non-central elements the abelian part is first moved to (d, 0) with
    d = gcd(|i|, |j|); conjugation by b then shifts the c-exponent by d, and
    the automorphism b -> b^-1 negates it, so the key keeps
    r = min(k mod d, -k mod d).
    """
    if is_central(x):
        return ("commutator", abs(x[2]))
    y, _ = reduce_to_axis(x)
    d, zero, k = y
    assert zero == 0 and d > 0
    return ("general", d, min(k % d, (-k) % d))


def heis_orbit_rep_raw(x: Heis) -> tuple:
    """Same as heis_orbit_rep but keeping k mod d in [0, d) without the sign fold."""
    if is_central(x):
        return ("commutator", abs(x[2]))
    y, _ = reduce_to_axis(x)
    return ("general", y[0], y[2] % y[0])


GENERATORS = [A_GEN, B_GEN, heis_inv(A_GEN), heis_inv(B_GEN)]


@lru_cache(maxsize=8)
def heis_ball(radius: int, max_size: int | None = 5_000_000) -> dict:
    return enumerate_ball(IDENTITY, GENERATORS, heis_mul, radius, max_size)


def heis_length(x: Heis, radius: int = 16) -> int:
    """Exact word length over {a, b} by breadth-first search."""
    ball = heis_ball(radius)
    if x in ball:
        return ball[x]
    raise BudgetExceeded(f"{x} has length greater than {radius}", radius)


def commutator_length_formula(k: int) -> int:
    """Geodesic length of c^k over {a, b}: 2*ceil(2*sqrt(|k|))."""
    k = abs(k)
    if k == 0:
        return 0
    s = math.isqrt(4 * k)
    if s * s < 4 * k:
        s += 1
    return 2 * s


def lower_table(n_max: int, mode: str = "formula", radius: int | None = None) -> GrowthTable:
    """Distinct commutator orbits c^k (k >= 0) with length <= n."""
    hist = [0] * (n_max + 1)
    hist[0] = 1
    if mode == "formula":
        k = 1
        while commutator_length_formula(k) <= n_max:
            hist[commutator_length_formula(k)] += 1
            k += 1
    elif mode == "bfs":
        ball = heis_ball(radius if radius is not None else n_max)
        for (i, j, k), ln in ball.items():
            if i == 0 and j == 0 and k > 0 and ln <= n_max:
                hist[ln] += 1
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return GrowthTable(hist, LOWER, False).as_cumulative()


def upper_table(n_max: int) -> GrowthTable:
    """Distinct orbit keys over the ball of radius n_max."""
    ball = heis_ball(n_max)
    best: dict = {}
    for x, ln in ball.items():
        key = heis_orbit_rep(x)
        if key not in best or ln < best[key]:
            best[key] = ln
    hist = [0] * (n_max + 1)
    for ln in best.values():
        hist[ln] += 1
    return GrowthTable(hist, UPPER, False).as_cumulative()


def heis_growth_sandwich(n_max: int, lower_mode: str = "formula") -> tuple[GrowthTable, GrowthTable]:
    return lower_table(n_max, lower_mode), upper_table(n_max)


def to_matrix(x: Heis) -> tuple:
    """Independent model: unitriangular 3x3 integer matrices, a = I + E12, b = I + E23."""
    def mm(p, q):
        return tuple(tuple(sum(p[r][t] * q[t][c] for t in range(3)) for c in range(3))
                     for r in range(3))

    def mpow(m, n):
        if n < 0:
            a, b, c = m[0][1], m[1][2], m[0][2]
            m = ((1, -a, a * b - c), (0, 1, -b), (0, 0, 1))
            n = -n
        out = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
        for _ in range(n):
            out = mm(out, m)
        return out

    ma = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
    mb = ((1, 0, 0), (0, 1, 1), (0, 0, 1))
    ma_inv, mb_inv = mpow(ma, -1), mpow(mb, -1)
    mc = mm(mm(mm(ma_inv, mb_inv), ma), mb)
    i, j, k = x
    return mm(mm(mpow(ma, i), mpow(mb, j)), mpow(mc, k))


def parse_heis(text: str) -> Heis:
    parts = [int(p) for p in text.replace(" ", "").split(",")]
    if len(parts) != 3:
        raise ValueError("expected i,j,k")
    return tuple(parts)  # type: ignore[return-value]

