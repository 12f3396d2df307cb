"""Hirzebruch-Jung continued fractions and their combinatorial series.

Every series keeps the index origin it is usually written with (``i`` and
``b`` start at 0, ``l`` and the coefficients at 1), so ``series.i[3]`` means
i_3 and never "the fourth entry".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Sequence


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class IndexedSeries(Sequence):
    """An integer list addressed by a fixed, possibly non-zero, first index."""

    __slots__ = ("origin", "values")

    def __init__(self, origin: int, values: Sequence[int]):
        self.origin = origin
        self.values = tuple(values)

    @property
    def last(self) -> int:
        return self.origin + len(self.values) - 1

    def indices(self) -> range:
        return range(self.origin, self.origin + len(self.values))

    def __getitem__(self, k):
        if isinstance(k, slice):
            raise TypeError("slice an IndexedSeries through .values")
        if k < self.origin or k > self.last:
            raise IndexError(f"index {k} outside {self.origin}..{self.last}")
        return self.values[k - self.origin]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __eq__(self, other) -> bool:
        if isinstance(other, IndexedSeries):
            return self.origin == other.origin and self.values == other.values
        return list(self.values) == list(other)

    def __hash__(self) -> int:
        return hash((self.origin, self.values))

    def __repr__(self) -> str:
        return f"IndexedSeries(origin={self.origin}, values={list(self.values)})"

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.indices(), self.values))


@dataclass(frozen=True)
class CFExpansion:
    numerator: int
    denominator: int
    coeffs: IndexedSeries  # beta_1 .. beta_X

    @property
    def length(self) -> int:
        return len(self.coeffs)

    def value(self) -> Fraction:
        return evaluate(list(self.coeffs))

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator} = [{','.join(map(str, self.coeffs))}]"


@dataclass(frozen=True)
class SeriesBundle:
    i: IndexedSeries  # 0..X+1
    j: IndexedSeries  # 0..X+1
    l: IndexedSeries  # 1..X
    b: IndexedSeries  # 0..l_X - 1


def evaluate(coeffs: Sequence[int]) -> Fraction:
    """Value of [b1, ..., bX] = b1 - 1/(b2 - 1/(...))."""
    if not coeffs:
        raise DomainError("empty continued fraction")
    val = Fraction(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        val = c - 1 / val
    return val


def _check_pair(m2: int, m1: int) -> None:
    if not (isinstance(m2, int) and isinstance(m1, int)):
        raise DomainError("numerator and denominator must be integers")
    if not 1 <= m1 < m2:
        raise DomainError(f"need 1 <= denominator < numerator, got {m2}/{m1}")
    if gcd(m2, m1) != 1:
        raise DomainError(f"{m2} and {m1} are not coprime")


def hj_expand(m2: int, m1: int) -> CFExpansion:
    """Expand m2/m1 with the round-up rule m2/m1 = ceil(m2/m1) - r/m1."""
    _check_pair(m2, m1)
    coeffs = []
    num, den = m2, m1
    while den:
        c = -(-num // den)
        coeffs.append(c)
        num, den = den, c * den - num
    return CFExpansion(m2, m1, IndexedSeries(1, coeffs))


def dual_expand(cf: CFExpansion) -> CFExpansion:
    return hj_expand(cf.numerator, cf.numerator - cf.denominator)


def _recursion(first: int, second: int, coeffs: IndexedSeries) -> list[int]:
    out = [first, second]
    for t in range(2, len(coeffs) + 2):
        out.append(coeffs[t - 1] * out[t - 1] - out[t - 2])
    return out


def compute_series(cf: CFExpansion) -> SeriesBundle:
    beta = cf.coeffs
    X = len(beta)
    i = _recursion(cf.numerator, cf.denominator, beta)
    j = _recursion(0, 1, beta)

    l, acc = [], 0
    for p in range(1, X + 1):
        acc += beta[p] - 2
        l.append(2 + acc)
    lX = l[-1]

    # partial[k] = sum_{p<=k} (beta_p - 2); b_t is the first k with t <= partial[k]
    partial = [0]
    for p in range(1, X + 1):
        partial.append(partial[-1] + beta[p] - 2)
    b = [1]
    k = 1
    for t in range(1, lX - 1):
        while partial[k] < t:
            k += 1
        b.append(k)
    if lX >= 2:
        b.append(X)
    return SeriesBundle(
        i=IndexedSeries(0, i),
        j=IndexedSeries(0, j),
        l=IndexedSeries(1, l),
        b=IndexedSeries(0, b[:lX]),
    )


def duality_failures(m2: int, m1: int) -> list[str]:
    """Identities linking the series of m2/m1 with those of its dual; returns the violated ones."""
    cf = hj_expand(m2, m1)
    dual = dual_expand(cf)
    I, J, L, B = _series_tuple(compute_series(cf))
    DI, DJ, DL, DB = _series_tuple(compute_series(dual))
    X, Y = cf.length, dual.length
    LX, LY = L[X], DL[Y]
    bad = []

    def check(ok: bool, label: str) -> None:
        if not ok:
            bad.append(f"{m2}/{m1}: {label}")

    check(Y == 1 + sum(c - 2 for c in cf.coeffs), "dual length = 1 + sum(beta - 2)")
    for t in range(1, LX):
        check(B[t] == DL[t] - 1, f"B_{t} = dual L_{t} - 1")
    for t in range(0, LX):
        check(DI[t] == DI[t + 1] + I[B[t]], f"dual I_{t} = dual I_{t + 1} + I_(B_{t})")
    for t in range(0, LY):
        check(J[t + 1] - J[t] == DJ[DB[t]], f"J_{t + 1} - J_{t} = dual J_(dual B_{t})")
    for t in range(1, LX):
        check(DJ[t + 1] - DJ[t] == J[DL[t] - 1], f"dual J_{t + 1} - dual J_{t} = J_(dual L_{t} - 1)")
    for t in range(1, LY):
        total = 1 + sum(J[DL[p] - 1] for p in range(1, DB[t]))
        check(DJ[DB[t]] == total, f"dual J_(dual B_{t}) = 1 + sum J_(dual L_p - 1)")
    return bad


def _series_tuple(s: SeriesBundle) -> tuple:
    return s.i, s.j, s.l, s.b
