"""Combinatorial data of the dihedral group D_{n,q} and its rank one characters.

Generators, acting on (x, y) by substitution:

* ``psi``  = diag(e(1/2q), e(-1/2q))
* ``tau``  = antidiag(e(1/4), e(1/4))                 (n - q odd)
* ``phi``  = diag(e(1/2(n-q)), e(1/2(n-q)))           (n - q odd)
* ``tauphi`` = antidiag(e(1/4 + 1/4(n-q)), same)      (n - q even)

where e(r) = exp(2 pi i r).  A character is stored as the rotation r of each
generator image.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

from .contfrac import (
    CFExpansion,
    DomainError,
    IndexedSeries,
    SeriesBundle,
    compute_series,
    evaluate,
    hj_expand,
)


class UnsupportedCase(DomainError):
    """The construction is only available for reduced fundamental cycle (nu = 0)."""


GENERATORS_ODD = ("psi", "tau", "phi")
GENERATORS_EVEN = ("psi", "tauphi")


def _rot(x) -> Fraction:
    return Fraction(x) % 1


@dataclass(frozen=True)
class Character:
    n: int
    q: int
    images: tuple  # rotations, one per generator in `generators`

    @property
    def generators(self) -> tuple:
        return GENERATORS_ODD if (self.n - self.q) % 2 else GENERATORS_EVEN

    def __getitem__(self, gen: str) -> Fraction:
        return self.images[self.generators.index(gen)]

    def _same_group(self, other: "Character") -> None:
        if (self.n, self.q) != (other.n, other.q):
            raise DomainError("characters of different groups")

    def __mul__(self, other: "Character") -> "Character":
        self._same_group(other)
        return Character(self.n, self.q, tuple(_rot(a + b) for a, b in zip(self.images, other.images)))

    def inverse(self) -> "Character":
        return Character(self.n, self.q, tuple(_rot(-a) for a in self.images))

    def is_trivial(self) -> bool:
        return all(a == 0 for a in self.images)

    def __str__(self) -> str:
        return ", ".join(f"{g}->{r}" for g, r in zip(self.generators, self.images))


def char_mul(a: Character, b: Character) -> Character:
    return a * b


def char_inv(a: Character) -> Character:
    return a.inverse()


def char_hom(source: Character, target: Character) -> Character:
    """Character of Hom(S_source, S_target) = S_{target (x) source*}."""
    return target * source.inverse()


@dataclass(frozen=True)
class DualGraph:
    vertices: tuple  # ("-", "+", 1, ..., N)
    self_intersection: dict
    edges: tuple
    fundamental_cycle: dict

    def intersection(self, u, v) -> int:
        if u == v:
            return self.self_intersection[u]
        return 1 if (u, v) in self.edges or (v, u) in self.edges else 0


@dataclass(frozen=True)
class GroupData:
    n: int
    q: int
    alpha_cf: CFExpansion  # n/q = [alpha_1 .. alpha_N]
    alpha_series: SeriesBundle
    a_cf: CFExpansion  # n/(n-q) = [a_2 .. a_{e-1}]
    nu: int
    c: IndexedSeries
    d: IndexedSeries
    t: IndexedSeries
    r: IndexedSeries
    delta: IndexedSeries
    gamma: IndexedSeries
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def order(self) -> int:
        return 4 * (self.n - self.q) * self.q

    @property
    def m(self) -> int:
        """n - q, the parameter governing the scalar part of the group."""
        return self.n - self.q

    @property
    def nq_odd(self) -> bool:
        return self.m % 2 == 1

    @property
    def generators(self) -> tuple:
        return GENERATORS_ODD if self.nq_odd else GENERATORS_EVEN

    @property
    def alpha(self) -> IndexedSeries:
        return self.alpha_cf.coeffs

    @property
    def N(self) -> int:
        return len(self.alpha_cf.coeffs)

    @property
    def a(self) -> IndexedSeries:
        """a_2 .. a_{e-1}."""
        return IndexedSeries(2, self.a_cf.coeffs.values)

    @property
    def e(self) -> int:
        return len(self.a_cf.coeffs) + 2

    @property
    def i(self) -> IndexedSeries:
        return self.alpha_series.i

    @property
    def j(self) -> IndexedSeries:
        return self.alpha_series.j

    @property
    def l(self) -> IndexedSeries:
        return self.alpha_series.l

    @property
    def b(self) -> IndexedSeries:
        return self.alpha_series.b

    def require_reduced(self) -> None:
        if self.nu != 0:
            raise UnsupportedCase(
                f"D_{{{self.n},{self.q}}} has nu = {self.nu}; the reconstruction algebra "
                "and its charts are only built for reduced fundamental cycle (nu = 0), "
                "the nu > 0 case is deferred to a companion treatment"
            )


def _nu(alpha: IndexedSeries) -> int:
    N = len(alpha)
    k = 0
    while k < N - 1 and alpha[k + 1] == 2:
        k += 1
    return k


@lru_cache(maxsize=4096)
def build_group_data(n: int, q: int) -> GroupData:
    if not (isinstance(n, int) and isinstance(q, int)):
        raise DomainError("n and q must be integers")
    if not 1 < q < n:
        raise DomainError(f"need 1 < q < n, got n={n}, q={q}")
    if gcd(n, q) != 1:
        raise DomainError(f"gcd({n},{q}) = {gcd(n, q)} is not 1")

    alpha_cf = hj_expand(n, q)
    series = compute_series(alpha_cf)
    a_cf = hj_expand(n, n - q)
    a = IndexedSeries(2, a_cf.coeffs.values)
    e = len(a) + 2
    m = n - q

    c = {2: 1, 3: 0}
    d = {2: 0, 3: 1}
    t = {2: a[2], 3: a[2] - 1}
    if e >= 4:
        c[4], d[4], t[4] = 1, a[3] - 1, a[3] * (a[2] - 1) - 1
    for j in range(5, e + 1):
        for s in (c, d, t):
            s[j] = a[j - 1] * s[j - 1] - s[j - 2]
    r = {j: m * t[j] - q * (c[j] + d[j]) for j in range(2, e + 1)}

    alpha = alpha_cf.coeffs
    N = len(alpha)
    nu = _nu(alpha)
    l = series.l
    delta, gamma = [], []
    for k in range(nu + 1, N + 2):
        delta.append(1 + sum(c[l[p]] for p in range(nu + 1, k)))
        gamma.append(sum(d[l[p]] for p in range(nu + 1, k)))

    def seq(s):
        return IndexedSeries(2, [s[j] for j in range(2, e + 1)])

    return GroupData(
        n=n,
        q=q,
        alpha_cf=alpha_cf,
        alpha_series=series,
        a_cf=a_cf,
        nu=nu,
        c=seq(c),
        d=seq(d),
        t=seq(t),
        r=seq(r),
        delta=IndexedSeries(nu + 1, delta),
        gamma=IndexedSeries(nu + 1, gamma),
    )


def valid_pairs(n_max: int, n_min: int = 3):
    """All (n, q) with 1 < q < n <= n_max and gcd(n, q) = 1, in lexicographic order."""
    for n in range(max(n_min, 3), n_max + 1):
        for q in range(2, n):
            if gcd(n, q) == 1:
                yield n, q


# ---------------------------------------------------------------- dual graph


def dual_graph(gd: GroupData) -> DualGraph:
    N = gd.N
    vertices = ("-", "+") + tuple(range(1, N + 1))
    si = {"-": -2, "+": -2}
    for k in range(1, N + 1):
        si[k] = -gd.alpha[k]
    edges = [("-", 1), ("+", 1)] + [(k, k + 1) for k in range(1, N)]
    graph = DualGraph(vertices, si, tuple(edges), {})
    return DualGraph(vertices, si, tuple(edges), laufer_cycle(graph))


def laufer_cycle(graph: DualGraph) -> dict:
    """Fundamental cycle by Laufer's algorithm: start at sum E_v, add E_v while Z.E_v > 0."""
    Z = {v: 1 for v in graph.vertices}
    while True:
        for v in graph.vertices:
            if sum(Z[u] * graph.intersection(u, v) for u in graph.vertices) > 0:
                Z[v] += 1
                break
        else:
            return Z


# ---------------------------------------------------------------- characters

ModuleId = Union[str, tuple]


def W(t: int) -> tuple:
    return ("W", t)


def module_name(mid: ModuleId) -> str:
    if isinstance(mid, tuple):
        return f"W_{mid[1]}"
    return {"W_plus": "W_+", "W_minus": "W_-", "trivial": "R"}[mid]


def character_of(gd: GroupData, mid: ModuleId) -> Character:
    """Character of the rank one module containing (xy)^t, x^q + y^q, x^q - y^q or 1.

    Rotations are those of the substitution action on the defining polynomial.
    """
    m, q = gd.m, gd.q
    half = Fraction(1, 2)
    if mid == "trivial":
        imgs = (0,) * len(gd.generators)
    elif isinstance(mid, tuple) and mid[0] == "W":
        t = mid[1]
        # t = 1 with n - q = 1 is the chain module of the binary dihedral family q = n - 1
        if not (1 <= t < m or t == 1):
            raise DomainError(f"W_t needs 1 <= t < n-q = {m}, got t={t}")
        if gd.nq_odd:
            imgs = (0, Fraction(t, 2), Fraction(t, m))
        else:
            imgs = (0, Fraction(t, 2) + Fraction(t, 2 * m))
    elif mid in ("W_plus", "W_minus"):
        sign = 0 if mid == "W_plus" else half
        if gd.nq_odd:
            imgs = (half, Fraction(q, 4) + sign, Fraction(q, 2 * m))
        else:
            imgs = (half, Fraction(q, 4) + Fraction(q, 4 * m) + sign)
    else:
        raise DomainError(f"unknown module id {mid!r}")
    return Character(gd.n, gd.q, tuple(_rot(x) for x in imgs))


def generator_order(gd: GroupData, gen: str) -> int:
    m, q = gd.m, gd.q
    return {"psi": 2 * q, "tau": 4, "phi": 2 * m, "tauphi": 4 * m}[gen]


# ---------------------------------------------------------------- combinatorial identities


def series_failures(gd: GroupData) -> list:
    """Identities among the a, i, l, b, r, c, d, Delta and Gamma series; returns the violated ones."""
    n, q, m, nu, e, N = gd.n, gd.q, gd.m, gd.nu, gd.e, gd.N
    a, i, l, b, r, c, d = gd.a, gd.i, gd.l, gd.b, gd.r, gd.c, gd.d
    delta, gamma = gd.delta, gd.gamma
    bad = []

    def check(ok: bool, label: str) -> None:
        if not ok:
            bad.append(f"D_{{{n},{q}}}: {label}")

    check(a[2] == nu + 2, "a_2 = nu + 2")
    check(q == i[nu + 1] + nu * m, "q = i_(nu+1) + nu (n - q)")
    check(r[2] == 2 * m - i[nu + 1], "r_2 = 2(n - q) - i_(nu+1)")
    check(r[3] == m - i[nu + 1] == i[nu] - 2 * i[nu + 1], "r_3 = (n - q) - i_(nu+1) = i_nu - 2 i_(nu+1)")
    check(r[2] == 2 * r[3] + i[nu + 1], "r_2 = 2 r_3 + i_(nu+1)")
    check(r[e - 1] == 1 and r[e] == 0, "r_(e-1) = 1 and r_e = 0")
    if e > 3:
        shifted = [a[3] + 1] + [a[k] for k in range(4, e)]
        value = evaluate(shifted)
        other = [value.numerator, value.denominator]
        for k in range(2, len(shifted) + 2):
            other.append(shifted[k - 2] * other[-1] - other[-2])
        check(all(r[k] == other[k - 2] for k in range(2, e + 1)), "r_k is the i-series of [a_3 + 1, a_4, ...]")
    for t in range(2, e - 1):
        check(r[t + 1] == r[t + 2] + i[b[t]], f"r_{t + 1} = r_{t + 2} + i_(b_{t})")
        check(c[t + 2] == c[t + 1] + delta[b[t]], f"c_{t + 2} = c_{t + 1} + Delta_(b_{t})")
        check(d[t + 2] == d[t + 1] + gamma[b[t]], f"d_{t + 2} = d_{t + 1} + Gamma_(b_{t})")
    for t in range(nu + 1, N + 1):
        check(r[l[t]] == i[t] - i[t + 1], f"r_(l_{t}) = i_{t} - i_{t + 1}")
    return bad
