"""Virtually abelian groups given by a transversal presentation over A = Z^m.

Covers the Lambda / W / L matrices of a presentation, the sign-homomorphism
test for linear growth, the Klein bottle group, the family
G_r = Z^r x| C_2^r, and small GL_2(Z) utilities (finite orders, centralisers).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .free_abelian import Matrix, det, identity, l1_ball, mat_mul
from .growth import EXACT, GrowthTable, enumerate_ball, orbits_by_canonical_form


class PresentationError(ValueError):
    pass


@dataclass
class VAPresentation:
    rank: int
    gens: list[str]
    sgn: dict[str, int]
    action: dict[str, Matrix]
    relations: list[tuple[tuple[str, ...], tuple[int, ...]]] = field(default_factory=list)

    def validate(self) -> None:
        m = self.rank
        for s in self.gens:
            if self.sgn.get(s) not in (1, -1):
                raise PresentationError(f"generator {s} needs sgn +1 or -1")
            a = self.action.get(s)
            if a is None or len(a) != m or any(len(row) != m for row in a):
                raise PresentationError(f"generator {s} needs an {m}x{m} action matrix")
            if abs(det(a)) != 1:
                raise PresentationError(f"action of {s} is not invertible over Z")
        for word, tail in self.relations:
            for t in word:
                if t not in self.sgn:
                    raise PresentationError(f"relation uses unknown generator {t!r}")
            if len(tail) != m:
                raise PresentationError("relation tail has the wrong length")
            if math.prod(self.sgn[t] for t in word) != 1:
                raise PresentationError(f"sgn is not trivial on relation {''.join(word)}")

    def is_sign_mode(self) -> bool:
        """Every generator acts on A as sgn(s) times the identity."""
        ident = identity(self.rank)
        neg = tuple(tuple(-v for v in row) for row in ident)
        return all(self.action[s] == (ident if self.sgn[s] == 1 else neg) for s in self.gens)


def parse_presentation(text: str) -> VAPresentation:
    """Line format: ``rank m``, ``gen s sgn +-1 action m11 m12 ...``, ``rel word tail z1 ... zm``.

    Relation words are strings of single-character generator names, or names
    separated by dots when names are longer.
    """
    rank = None
    gens: list[str] = []
    sgn: dict[str, int] = {}
    action: dict[str, Matrix] = {}
    rels = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "rank":
                rank = int(tok[1])
            elif tok[0] == "gen":
                if rank is None:
                    raise PresentationError("rank must come first")
                name = tok[1]
                if tok[2] != "sgn" or tok[4] != "action":
                    raise PresentationError("expected 'gen s sgn +-1 action ...'")
                vals = [int(v) for v in tok[5:]]
                if len(vals) != rank * rank:
                    raise PresentationError(f"action needs {rank * rank} entries")
                gens.append(name)
                sgn[name] = int(tok[3])
                action[name] = tuple(tuple(vals[i * rank:(i + 1) * rank]) for i in range(rank))
            elif tok[0] == "rel":
                if tok[2] != "tail":
                    raise PresentationError("expected 'rel word tail ...'")
                word = tuple(tok[1].split(".")) if "." in tok[1] else tuple(tok[1])
                rels.append((word, tuple(int(v) for v in tok[3:])))
            else:
                raise PresentationError(f"unknown directive {tok[0]!r}")
        except (IndexError, ValueError) as exc:
            raise PresentationError(f"line {lineno}: {exc}") from exc
    if rank is None:
        raise PresentationError("missing rank line")
    p = VAPresentation(rank, gens, sgn, action, rels)
    p.validate()
    return p


def format_presentation(p: VAPresentation) -> str:
    lines = [f"rank {p.rank}"]
    for s in p.gens:
        flat = " ".join(str(v) for row in p.action[s] for v in row)
        lines.append(f"gen {s} sgn {p.sgn[s]:+d} action {flat}")
    for word, tail in p.relations:
        w = ".".join(word) if any(len(t) > 1 for t in word) else "".join(word)
        lines.append(f"rel {w} tail {' '.join(str(v) for v in tail)}")
    return "\n".join(lines) + "\n"


def lambda_matrix(p: VAPresentation) -> list[list[int]]:
    """Entry (r, t) sums sgn(r_1 ... r_{i-1}) over positions i with r_i = t."""
    col = {s: i for i, s in enumerate(p.gens)}
    out = []
    for word, _ in p.relations:
        row = [0] * len(p.gens)
        prefix = 1
        for t in word:
            if t not in col:
                raise PresentationError(f"relation uses unknown generator {t!r}")
            row[col[t]] += prefix
            prefix *= p.sgn[t]
        out.append(row)
    return out


def y_fold(p: VAPresentation, word) -> list[int]:
    """Signed abelianisation by a right fold: Y(s u) = e_s + sgn(s) Y(u)."""
    col = {s: i for i, s in enumerate(p.gens)}
    acc = [0] * len(p.gens)
    for t in reversed(word):
        acc = [p.sgn[t] * v for v in acc]
        acc[col[t]] += 1
    return acc


def w_matrix(p: VAPresentation) -> list[list[int]]:
    return [list(tail) for _, tail in p.relations]


def int_mat_mul(a, b) -> list[list[int]]:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)]
            for i in range(len(a))]


@dataclass
class RowReduction:
    L: list[list[int]]
    LA: list[list[int]]
    beta: int
    pivots: list[int]


def row_reduce_integer(a) -> RowReduction:
    """Integer L of full rank with L*A = beta * RREF(A).

    Rational Gauss-Jordan with leftmost pivots (smallest row index first),
    tracking the row operations, then clearing denominators by their LCM.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [[Fraction(v) for v in row] for row in a]
    u = [[Fraction(int(i == j)) for j in range(rows)] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        u[r], u[p] = u[p], u[r]
        f = m[r][c]
        m[r] = [v / f for v in m[r]]
        u[r] = [v / f for v in u[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                g = m[i][c]
                m[i] = [x - g * y for x, y in zip(m[i], m[r])]
                u[i] = [x - g * y for x, y in zip(u[i], u[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    beta = 1
    for row in u:
        for v in row:
            beta = math.lcm(beta, v.denominator)
    L = [[int(v * beta) for v in row] for row in u]
    LA = int_mat_mul(L, [list(row) for row in a]) if rows else []
    assert all(LA[i][j] == m[i][j] * beta for i in range(rows) for j in range(cols))
    return RowReduction(L, LA, beta, pivots)


def is_rref(m) -> bool:
    last = -1
    seen_zero = False
    for row in m:
        nz = [j for j, v in enumerate(row) if v != 0]
        if not nz:
            seen_zero = True
            continue
        if seen_zero or nz[0] <= last or row[nz[0]] != 1:
            return False
        if any(other[nz[0]] != 0 for other in m if other is not row):
            return False
        last = nz[0]
    return True


@dataclass
class ExtensionMatrices:
    Lambda: list[list[int]]
    W: list[list[int]]
    L: list[list[int]]
    LLambda: list[list[int]]
    LW: list[list[int]]
    beta: int
    pivots: list[int]


def extension_matrices(p: VAPresentation) -> ExtensionMatrices:
    lam = lambda_matrix(p)
    w = w_matrix(p)
    red = row_reduce_integer(lam)
    return ExtensionMatrices(lam, w, red.L, red.LA, int_mat_mul(red.L, w), red.beta, red.pivots)


@dataclass
class Certificate:
    holds: bool
    witness: list[dict]
    matrices: ExtensionMatrices


def linear_growth_certificate(p: VAPresentation) -> Certificate:
    """Every zero row of L*Lambda must come with a zero row of L*W."""
    p.validate()
    if not p.is_sign_mode():
        raise PresentationError("certificate needs every generator to act as sgn(s) * I")
    em = extension_matrices(p)
    witness = []
    holds = True
    for idx, (lrow, wrow) in enumerate(zip(em.LLambda, em.LW)):
        zl = all(v == 0 for v in lrow)
        zw = all(v == 0 for v in wrow)
        ok = zw or not zl
        holds &= ok
        word = p.relations[idx][0]
        witness.append({"row": idx, "relation": "".join(word), "L_Lambda": lrow,
                        "L_W": wrow, "lambda_row_zero": zl, "w_row_zero": zw, "ok": ok})
    return Certificate(holds, witness, em)


def classify_rank2(p: VAPresentation) -> str:
    """``linear`` iff each generator acts as +I or -I and those scalars form a homomorphism."""
    if p.rank != 2:
        raise PresentationError("classify_rank2 needs rank 2")
    ident = identity(2)
    neg = ((-1, 0), (0, -1))
    scal = {}
    for s in p.gens:
        if p.action[s] == ident:
            scal[s] = 1
        elif p.action[s] == neg:
            scal[s] = -1
        else:
            return "quadratic"
    for word, _ in p.relations:
        if math.prod(scal[t] for t in word) != 1:
            return "quadratic"
    return "linear"


# -- named presentations ------------------------------------------------------

def klein_presentation() -> VAPresentation:
    """A = <a, b^2>, transversal {1, b}; b inverts a and fixes b^2, and b*b = b^2."""
    return VAPresentation(2, ["b"], {"b": -1}, {"b": ((-1, 0), (0, 1))},
                          [(("b", "b"), (0, 1))])


def inversion_presentation(m: int = 2) -> VAPresentation:
    """Z^m x| C_2 with the involution acting as -I."""
    neg = tuple(tuple(-int(i == j) for j in range(m)) for i in range(m))
    return VAPresentation(m, ["t"], {"t": -1}, {"t": neg}, [(("t", "t"), (0,) * m)])


def trivial_extension_presentation(m: int = 2) -> VAPresentation:
    return VAPresentation(m, ["s"], {"s": 1}, {"s": identity(m)}, [(("s", "s"), (0,) * m)])


# -- Klein bottle group ------------------------------------------------------

Klein = tuple[int, int]


def klein_mul(x: Klein, y: Klein) -> Klein:
    """a^i b^j * a^k b^l = a^(i + (-1)^j k) b^(j + l)."""
    i, j = x
    k, l = y
    return (i + (k if j % 2 == 0 else -k), j + l)


def klein_inv(x: Klein) -> Klein:
    i, j = x
    return ((-i if j % 2 == 0 else i), -j)


def klein_pow(x: Klein, n: int) -> Klein:
    base = x if n >= 0 else klein_inv(x)
    out = (0, 0)
    for _ in range(abs(n)):
        out = klein_mul(out, base)
    return out


KLEIN_GENS = [(1, 0), (0, 1), (-1, 0), (0, -1)]


def klein_ball(radius: int) -> dict:
    return enumerate_ball((0, 0), KLEIN_GENS, klein_mul, radius)


def klein_hom(images: tuple[Klein, Klein]):
    """Endomorphism a -> images[0], b -> images[1] on normal forms."""
    ia, ib = images

    def f(x: Klein) -> Klein:
        return klein_mul(klein_pow(ia, x[0]), klein_pow(ib, x[1]))
    return f


# a -> a^-1;  b -> a b;  b -> b^-1
KLEIN_AUTS = [((-1, 0), (0, 1)), ((1, 0), (1, 1)), ((1, 0), (0, -1)), ((1, 0), (-1, 1))]


def klein_invariant_key(x: Klein):
    """(|p|, |q|) for x = a^(2p) b^(2q); None off the subgroup <a^2, b^2>.

    <a^2> is the derived subgroup and <b^2> the centre, both characteristic
    and infinite cyclic, so every automorphism sends a^(2p) b^(2q) to
    a^(+-2p) b^(+-2q).
    """
    i, j = x
    if i % 2 or j % 2:
        return None
    return (abs(i) // 2, abs(j) // 2)


def klein_invariant_counts(radius: int) -> list[int]:
    """Cumulative number of distinct invariant keys seen at length <= n."""
    ball = klein_ball(radius)
    best: dict = {}
    for x, ln in ball.items():
        key = klein_invariant_key(x)
        if key is not None and (key not in best or ln < best[key]):
            best[key] = ln
    hist = [0] * (radius + 1)
    for ln in best.values():
        hist[ln] += 1
    return list(itertools.accumulate(hist))


def klein_lower_bound(n: int) -> float:
    h = n // 2
    return (h - 1) * (h - 2) / 2


# -- the family Z^r x| C_2^r -------------------------------------------------

Elem = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class ConstructionGroup:
    r: int

    @property
    def identity(self) -> Elem:
        return ((0,) * self.r, (0,) * self.r)

    def mul(self, x: Elem, y: Elem) -> Elem:
        v, e = x
        w, d = y
        return (tuple(vi + (-wi if ei else wi) for vi, wi, ei in zip(v, w, e)),
                tuple(a ^ b for a, b in zip(e, d)))

    def inv(self, x: Elem) -> Elem:
        v, e = x
        return (tuple(vi if ei else -vi for vi, ei in zip(v, e)), e)

    def a(self, i: int) -> Elem:
        return (tuple(int(j == i) for j in range(self.r)), (0,) * self.r)

    def t(self, i: int) -> Elem:
        return ((0,) * self.r, tuple(int(j == i) for j in range(self.r)))

    def generators(self) -> list[Elem]:
        gens = [self.a(i) for i in range(self.r)] + [self.t(i) for i in range(self.r)]
        return gens + [self.inv(g) for g in gens if self.inv(g) != g]

    def evaluate(self, word) -> Elem:
        """Evaluate a list of (name, index, exponent) with name in {'a', 't'}."""
        out = self.identity
        for name, i, e in word:
            g = self.a(i) if name == "a" else self.t(i)
            if e < 0:
                g = self.inv(g)
            for _ in range(abs(e)):
                out = self.mul(out, g)
        return out

    def relators(self) -> list[list[tuple[str, int, int]]]:
        rels = []
        r = self.r
        for i in range(r):
            rels.append([("t", i, 2)])
            for j in range(r):
                if i == j:
                    # t_i a_i t_i = a_i^-1
                    rels.append([("t", i, 1), ("a", i, 1), ("t", i, 1), ("a", i, 1)])
                else:
                    rels.append([("t", i, 1), ("a", j, 1), ("t", i, 1), ("a", j, -1)])
        for i, j in itertools.combinations(range(r), 2):
            rels.append([("a", i, -1), ("a", j, -1), ("a", i, 1), ("a", j, 1)])
            rels.append([("t", i, -1), ("t", j, -1), ("t", i, 1), ("t", j, 1)])
        return rels

    def action_matrices(self) -> list[Matrix]:
        """Conjugation action of t_i on A = Z^r."""
        return [tuple(tuple((-1 if (a == b == i) else int(a == b)) for b in range(self.r))
                      for a in range(self.r)) for i in range(self.r)]


def build_construction_group(r: int) -> ConstructionGroup:
    if r < 1:
        raise ValueError("r must be positive")
    return ConstructionGroup(r)


def sign_orbit_count(r: int, n_max: int) -> GrowthTable:
    """Vectors of Z^r up to coordinatewise sign with L1 length <= n: C(n + r, r)."""
    return GrowthTable([math.comb(n + r, r) for n in range(n_max + 1)], EXACT, True)


def sign_orbit_bruteforce(r: int, n_max: int) -> GrowthTable:
    return orbits_by_canonical_form(l1_ball(r, n_max), lambda x: tuple(abs(v) for v in x),
                                    certified=True, radius=n_max)


# -- GL_2(Z) utilities -------------------------------------------------------

@dataclass
class OrderReport:
    order: int | None  # None means infinite order
    real_spectrum: bool


def mat_pow(m: Matrix, n: int) -> Matrix:
    out = identity(len(m))
    for _ in range(n):
        out = mat_mul(out, m)
    return out


def finite_order_matrix_check(m: Matrix) -> OrderReport:
    """Order of a 2x2 unimodular matrix; non-real spectrum forces order 3, 4 or 6 (or 1, 2)."""
    d = det(m)
    if abs(d) != 1:
        raise ValueError("matrix is not in GL_2(Z)")
    tr = m[0][0] + m[1][1]
    real = tr * tr - 4 * d >= 0
    ident = identity(2)
    order = None
    p = ident
    for k in range(1, 13):
        p = mat_mul(p, m)
        if p == ident:
            order = k
            break
    if not real:
        if not (mat_pow(m, 4) == ident or mat_pow(m, 6) == ident):
            raise AssertionError(f"{m} has non-real spectrum but neither M^4 nor M^6 is I")
        assert order is not None
    return OrderReport(order, real)


def bounded_centralizer(ms, entry_bound: int, r: int | None = None) -> list[Matrix]:
    """All X in GL_r(Z) with |entries| <= B commuting with every M."""
    ms = list(ms)
    if r is None:
        if not ms:
            raise ValueError("give r when the matrix list is empty")
        r = len(ms[0])
    rng = range(-entry_bound, entry_bound + 1)
    out = []
    for flat in itertools.product(rng, repeat=r * r):
        x = tuple(tuple(flat[i * r:(i + 1) * r]) for i in range(r))
        if abs(det(x)) != 1:
            continue
        if all(mat_mul(x, m) == mat_mul(m, x) for m in ms):
            out.append(x)
    return out
