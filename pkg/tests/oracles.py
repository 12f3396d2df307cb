"""Independent brute-force reference computations used by the tests.

Nothing here imports the algorithms under test; only plain Fractions, integers
and explicit enumeration of group elements.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


# ---------------------------------------------------------------- continued fractions


def cf_value(coeffs) -> Fraction:
    val = Fraction(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        val = c - 1 / val
    return val


def hj_by_search(m2: int, m1: int) -> list:
    """The unique list with entries >= 2 evaluating to m2/m1, peeled one coefficient at a time.

    Each step tries candidates k = 2, 3, ... and keeps the one for which the
    remainder 1/(k - x) lies in (1, infinity) or is exhausted.
    """
    x = Fraction(m2, m1)
    out = []
    while True:
        for k in range(2, int(x) + 3):
            if k == x:
                out.append(k)
                return out
            rest = k - x
            if 0 < rest < 1:
                out.append(k)
                x = 1 / rest
                break
        else:  # pragma: no cover - the loop always finds a candidate
            raise AssertionError("no coefficient found")


def i_series_by_tails(coeffs) -> list:
    """i_t is the numerator of the tail [beta_{t+1}, ..., beta_X] (with i_X = 1, i_{X+1} = 0)."""
    X = len(coeffs)
    out = [cf_value(coeffs[t:]).numerator for t in range(X)]
    return out + [1, 0]


def j_series_by_heads(coeffs) -> list:
    """j_t is the numerator of the reversed head [beta_{t-1}, ..., beta_1] (with j_0 = 0, j_1 = 1)."""
    X = len(coeffs)
    out = [0, 1]
    for t in range(2, X + 2):
        out.append(cf_value(list(reversed(coeffs[: t - 1]))).numerator)
    return out


def b_series_by_repetition(coeffs) -> list:
    """1, then each index k repeated beta_k - 2 times, then the length X."""
    reps = [k for k, c in enumerate(coeffs, start=1) for _ in range(c - 2)]
    return [1] + reps + [len(coeffs)]


# ---------------------------------------------------------------- cyclotomic arithmetic


@lru_cache(maxsize=None)
def cyclotomic(L: int) -> tuple:
    """Integer coefficients (constant first) of the L-th cyclotomic polynomial."""
    poly = [-1] + [0] * (L - 1) + [1]  # x^L - 1
    for d in range(1, L):
        if L % d == 0:
            poly = _exact_div(poly, list(cyclotomic(d)))
    return tuple(poly)


def _exact_div(num: list, den: list) -> list:
    num = num[:]
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        coef = num[k + len(den) - 1] // den[-1]
        out[k] = coef
        for j, c in enumerate(den):
            num[k + j] -= coef * c
    assert not any(num), "cyclotomic division left a remainder"
    return out


def reduce_root_sum(counts: dict, L: int) -> list:
    """sum counts[j] zeta_L^j reduced modulo the L-th cyclotomic polynomial."""
    phi = cyclotomic(L)
    deg = len(phi) - 1
    poly = [0] * max(L, deg + 1)
    for j, c in counts.items():
        poly[j % L] += c
    for k in range(len(poly) - 1, deg - 1, -1):
        c = poly[k]
        if c:
            for j, p in enumerate(phi):
                poly[k - deg + j] -= c * p
    return poly[:deg]


# ---------------------------------------------------------------- the dihedral group, element by element


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def group_elements(n: int, q: int) -> tuple:
    """(L, elements): each element is (swap, e1, e2) meaning the matrix with
    entries zeta_L^e1, zeta_L^e2 on the diagonal (swap = 0) or antidiagonal (swap = 1),
    together with the word in the generators that first reached it."""
    m = n - q
    L = lcm(lcm(4 * q, 4 * m), 4)

    def rot(fr: Fraction) -> int:
        v = fr * L
        assert v.denominator == 1
        return int(v) % L

    if m % 2:
        gens = {
            "psi": (0, rot(Fraction(1, 2 * q)), rot(Fraction(-1, 2 * q))),
            "tau": (1, rot(Fraction(1, 4)), rot(Fraction(1, 4))),
            "phi": (0, rot(Fraction(1, 2 * m)), rot(Fraction(1, 2 * m))),
        }
    else:
        s = rot(Fraction(1, 4) + Fraction(1, 4 * m))
        gens = {
            "psi": (0, rot(Fraction(1, 2 * q)), rot(Fraction(-1, 2 * q))),
            "tauphi": (1, s, s),
        }

    def mul(g, h):
        # 2x2 monomial matrices; rows indexed by output coordinate
        sg, g1, g2 = g
        sh, h1, h2 = h
        if sg == 0 and sh == 0:
            return (0, (g1 + h1) % L, (g2 + h2) % L)
        if sg == 0 and sh == 1:
            return (1, (g1 + h1) % L, (g2 + h2) % L)
        if sg == 1 and sh == 0:
            return (1, (g1 + h2) % L, (g2 + h1) % L)
        return (0, (g1 + h2) % L, (g2 + h1) % L)

    ident = (0, 0, 0)
    words = {ident: ()}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for name, h in gens.items():
                gh = mul(g, h)
                if gh not in words:
                    words[gh] = words[g] + (name,)
                    nxt.append(gh)
        frontier = nxt
    return L, words, gens, mul


def character_values(n: int, q: int, images: dict) -> dict:
    """Extend a character given on generators (rotations mod 1) to every element.

    Raises AssertionError when two words reaching the same element disagree,
    i.e. when the generator images do not define a character.
    """
    L, words, gens, mul = group_elements(n, q)
    value = {(0, 0, 0): Fraction(0)}
    frontier = [(0, 0, 0)]
    while frontier:
        nxt = []
        for g in frontier:
            for name, h in gens.items():
                gh = mul(g, h)
                v = (value[g] + images[name]) % 1
                if gh in value:
                    assert value[gh] == v, "generator images do not define a character"
                else:
                    value[gh] = v
                    nxt.append(gh)
        frontier = nxt
    return value


def dense_relative_invariant_dim(n: int, q: int, images: dict, degree: int) -> int:
    """dim of {p of the given degree : p(g(x, y)) = chi(g) p} by averaging traces over the group.

    For each element the trace of its substitution action on degree-d monomials
    is a sum of L-th roots of unity; multiplying by chi(g)^-1 and summing over
    the group gives |G| times the dimension, reduced to an integer modulo the
    cyclotomic polynomial.
    """
    L, words, _, _ = group_elements(n, q)
    chi = character_values(n, q, images)
    counts: dict = {}
    for g in words:
        swap, e1, e2 = g
        shift = -int(chi[g] * L)
        if swap == 0:
            for k in range(degree + 1):
                j = (e1 * k + e2 * (degree - k) + shift) % L
                counts[j] = counts.get(j, 0) + 1
        elif degree % 2 == 0:
            k = degree // 2
            j = (e1 * k + e2 * k + shift) % L
            counts[j] = counts.get(j, 0) + 1
    reduced = reduce_root_sum(counts, L)
    assert not any(reduced[1:]), "trace average is not rational"
    total = reduced[0]
    assert total % len(words) == 0
    return total // len(words)


def group_order(n: int, q: int) -> int:
    return len(group_elements(n, q)[1])
