"""Generators of the invariant ring C[x,y]^G and a bounded-degree generation certificate.

Two families of degree 4q polynomials feed the generators:

* w-basis: w2 = (x^q + y^q)(x^q + s y^q), w3 = (x^q - y^q)(x^q + s y^q)
* v-basis: v2 = x^2q + s y^2q,            v3 = x^2q - s y^2q

with s = (-1)^{a_2}.  The invariant ring is generated by (xy)^{2(n-q)} together
with (xy)^{r_t} g2^{c_t} g3^{d_t} for t = 2..e.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .groupdata import GroupData, character_of
from .polyexact import BiPoly, RowSpace, relative_invariant_dim


class Basis(str, Enum):
    W = "w"
    V = "v"

    @classmethod
    def parse(cls, value) -> "Basis":
        if isinstance(value, Basis):
            return value
        return cls(str(value).lower())


def xy_poly(k: int = 1) -> BiPoly:
    return BiPoly.xy_power(k)


def plus_poly(q: int) -> BiPoly:
    """x^q + y^q."""
    return BiPoly.binomial(q, 1)


def minus_poly(q: int) -> BiPoly:
    """x^q - y^q."""
    return BiPoly.binomial(q, -1)


def a2_sign(gd: GroupData) -> int:
    return -1 if gd.a[2] % 2 else 1


def symbol_polys(gd: GroupData, basis) -> tuple:
    """The pair (g2, g3) of degree 4q generators for the chosen basis."""
    basis = Basis.parse(basis)
    key = ("symbols", basis)
    if key in gd._cache:
        return gd._cache[key]
    q, s = gd.q, a2_sign(gd)
    if basis is Basis.W:
        common = BiPoly.binomial(q, s)
        pair = (plus_poly(q) * common, minus_poly(q) * common)
    else:
        pair = (BiPoly.binomial(2 * q, s), BiPoly.binomial(2 * q, -s))
    gd._cache[key] = pair
    return pair


def symbol_product(gd: GroupData, basis, xy_exp: int, g2_exp: int, g3_exp: int) -> BiPoly:
    """(xy)^xy_exp * g2^g2_exp * g3^g3_exp, cached per group."""
    basis = Basis.parse(basis)
    key = ("product", basis, xy_exp, g2_exp, g3_exp)
    cache = gd._cache
    if key not in cache:
        cache[key] = (_power(gd, basis, 0, g2_exp) * _power(gd, basis, 1, g3_exp)).shift((xy_exp, xy_exp))
    return cache[key]


def _power(gd: GroupData, basis: Basis, which: int, k: int) -> BiPoly:
    key = ("power", basis, which, k)
    cache = gd._cache
    if key not in cache:
        if k == 0:
            cache[key] = BiPoly.const(1)
        else:
            g = symbol_polys(gd, basis)[which]
            cache[key] = _power(gd, basis, which, k // 2) ** 2 * (g if k % 2 else BiPoly.const(1))
    return cache[key]


@dataclass(frozen=True)
class GeneratorItem:
    tag: object  # "w1_power" or the index t in 2..e
    exponents: tuple  # (xy, g2, g3) exponents
    poly: BiPoly

    @property
    def degree(self) -> int:
        return self.poly.degree()


@dataclass(frozen=True)
class GeneratorList:
    basis: Basis
    items: tuple

    def __len__(self) -> int:
        return len(self.items)

    def polys(self) -> list:
        return [it.poly for it in self.items]


def invariant_generators(gd: GroupData, basis="w") -> GeneratorList:
    basis = Basis.parse(basis)
    m = gd.m
    items = [GeneratorItem("w1_power", (2 * m, 0, 0), xy_poly(2 * m))]
    for t in range(2, gd.e + 1):
        ex = (gd.r[t], gd.c[t], gd.d[t])
        items.append(GeneratorItem(t, ex, symbol_product(gd, basis, *ex)))
    return GeneratorList(basis, tuple(items))


def subalgebra_hilbert(gens: GeneratorList, max_degree: int) -> dict:
    """Dimension, per degree, of the span of all products of the generators."""
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    polys = [(p.degree(), p) for p in gens.polys()]
    spans = {0: [BiPoly.const(1)]}
    dims = {0: 1}
    for d in range(1, max_degree + 1):
        space = RowSpace()
        kept = []
        for deg, g in polys:
            if deg > d:
                continue
            for lower in spans.get(d - deg, ()):
                prod = g * lower
                if space.add(prod.terms):
                    kept.append(prod)
        spans[d] = kept
        dims[d] = len(kept)
    return dims


@dataclass(frozen=True)
class GenerationReport:
    n: int
    q: int
    basis: Basis
    max_degree: int
    passed: bool
    below_generator_degree: bool
    first_discrepancy: tuple | None  # (degree, subalgebra dim, invariant dim)

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        s = f"generation D_{{{self.n},{self.q}}} {self.basis.value}-basis up to degree {self.max_degree}: {status}"
        if self.first_discrepancy:
            d, got, want = self.first_discrepancy
            s += f" (degree {d}: subalgebra {got}, invariants {want})"
        if self.below_generator_degree:
            s += " [max_degree below the largest generator degree]"
        return s


DEGREE_CAP = 200


def default_max_degree(gd: GroupData) -> int:
    return min(gd.order, DEGREE_CAP)


def verify_generation(gd: GroupData, basis="w", max_degree: int | None = None,
                      gens: GeneratorList | None = None) -> GenerationReport:
    basis = Basis.parse(basis)
    if max_degree is None:
        max_degree = default_max_degree(gd)
    gens = gens if gens is not None else invariant_generators(gd, basis)
    trivial = character_of(gd, "trivial")
    got = subalgebra_hilbert(gens, max_degree)
    first = None
    for d in range(max_degree + 1):
        want = relative_invariant_dim(gd, trivial, d)
        if got[d] != want:
            first = (d, got[d], want)
            break
    largest = max(it.degree for it in gens.items) if gens.items else 0
    return GenerationReport(gd.n, gd.q, basis, max_degree, first is None, max_degree < largest, first)
