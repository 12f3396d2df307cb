"""Exact sparse polynomials over Q, the D_{n,q} action on them, and relative invariants.

Polynomials are dictionaries from exponent tuples to nonzero coefficients
(``int`` when integral, ``Fraction`` otherwise).  ``BiPoly`` is the two
variable case in x, y; the chart code reuses ``SparsePoly`` with three
variables and allows negative exponents (Laurent polynomials).

Roots of unity never enter the coefficient field.  Acting by a generator
produces ``RotatedTerm`` records: a monomial, a positive rational magnitude
and a rotation r meaning exp(2 pi i r).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from .groupdata import Character, GroupData


class DivisionError(ArithmeticError):
    def __init__(self, msg: str, remainder: "SparsePoly"):
        super().__init__(msg)
        self.remainder = remainder


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _coerce_coeff(c):
    if isinstance(c, bool):
        raise TypeError("boolean coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _norm(c)
    if isinstance(c, str):
        return _norm(Fraction(c))
    raise TypeError(f"coefficient {c!r} is not rational")


class SparsePoly:
    __slots__ = ("terms", "nvars", "_hash")
    names = ("a", "b", "c", "d")

    def __init__(self, terms: Mapping | None = None, nvars: int = 2, *, _trusted: bool = False):
        self.nvars = nvars
        self._hash = None
        if _trusted:
            self.terms = terms
            return
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not have {nvars} entries")
            c = _coerce_coeff(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: _norm(c) for e, c in clean.items() if c}

    # ------------------------------------------------------------ builders
    @classmethod
    def _make(cls, terms: dict, nvars: int):
        return cls(terms, nvars, _trusted=True)

    @classmethod
    def const(cls, c, nvars: int = 2):
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, exps, coeff=1):
        exps = tuple(exps)
        return cls({exps: coeff}, len(exps))

    @classmethod
    def var(cls, k: int, nvars: int):
        e = [0] * nvars
        e[k] = 1
        return cls.monomial(e)

    def _like(self, terms: dict):
        return type(self)._make(terms, self.nvars)

    # ------------------------------------------------------------ queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def single_term(self):
        if len(self.terms) != 1:
            raise ValueError("not a single term")
        (e, c), = self.terms.items()
        return e, c

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coeff(self, exps) -> int | Fraction:
        return self.terms.get(tuple(exps), 0)

    def min_exponents(self) -> tuple:
        return tuple(min(e[k] for e in self.terms) for k in range(self.nvars))

    def leading(self):
        """Lex-largest exponent and its coefficient."""
        e = max(self.terms)
        return e, self.terms[e]

    # ------------------------------------------------------------ arithmetic
    def _other(self, other):
        if isinstance(other, SparsePoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return type(self).const(_coerce_coeff(other), self.nvars)

    def __add__(self, other):
        other = self._other(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def scale(self, k):
        k = _coerce_coeff(k)
        if not k:
            return self._like({})
        return self._like({e: _norm(c * k) for e, c in self.terms.items()})

    def shift(self, exps):
        exps = tuple(exps)
        return self._like({tuple(x + y for x, y in zip(e, exps)): c for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            return self.scale(other)
        other = self._other(other)
        A, B = self.terms, other.terms
        if not A or not B:
            return self._like({})
        if len(A) < len(B):
            A, B = B, A
        if len(B) == 1:
            (eb, cb), = B.items()
            return self._like(
                {tuple(x + y for x, y in zip(e, eb)): _norm(c * cb) for e, c in A.items()}
            )
        out: dict = {}
        get = out.get
        if self.nvars == 2:
            for (a1, b1), c1 in A.items():
                for (a2, b2), c2 in B.items():
                    k = (a1 + a2, b1 + b2)
                    out[k] = get(k, 0) + c1 * c2
        elif self.nvars == 3:
            for (a1, b1, d1), c1 in A.items():
                for (a2, b2, d2), c2 in B.items():
                    k = (a1 + a2, b1 + b2, d1 + d2)
                    out[k] = get(k, 0) + c1 * c2
        else:
            for e1, c1 in A.items():
                for e2, c2 in B.items():
                    k = tuple(x + y for x, y in zip(e1, e2))
                    out[k] = get(k, 0) + c1 * c2
        return self._like({e: _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise ValueError("polynomial powers need an integer exponent")
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            return self._like({tuple(x * k for x in e): _norm(Fraction(c) ** k)})
        if k < 0:
            raise ValueError("only monomials have negative powers")
        result = type(self).const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def divmod(self, divisor: "SparsePoly"):
        """Division with remainder in lex order (single divisor, so remainder 0 iff divisible)."""
        divisor = self._other(divisor)
        if not divisor.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        lt_d, lc_d = divisor.leading()
        rest = dict(self.terms)
        quot: dict = {}
        rem: dict = {}
        dterms = list(divisor.terms.items())
        while rest:
            lt = max(rest)
            c = rest[lt]
            shift = tuple(x - y for x, y in zip(lt, lt_d))
            if all(s >= 0 for s in shift):
                if isinstance(c, int) and isinstance(lc_d, int) and c % lc_d == 0:
                    f = c // lc_d
                else:
                    f = _norm(Fraction(c) / lc_d)
                quot[shift] = _norm(quot.get(shift, 0) + f)
                for e, cd in dterms:
                    k = tuple(x + y for x, y in zip(e, shift))
                    v = rest.get(k, 0) - f * cd
                    if v:
                        rest[k] = _norm(v)
                    else:
                        rest.pop(k, None)
            else:
                rem[lt] = c
                del rest[lt]
        return self._like({e: c for e, c in quot.items() if c}), self._like(rem)

    def exact_div(self, divisor: "SparsePoly"):
        quot, rem = self.divmod(divisor)
        if rem:
            raise DivisionError(f"{divisor} does not divide {self}", rem)
        return quot

    # ------------------------------------------------------------ content
    def content(self) -> Fraction:
        """Positive rational c with self / c having coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            c = Fraction(c)
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self):
        return self.scale(1 / self.content())

    def strip_monomial(self):
        """Divide by the largest monomial dividing every term (exponents may go negative in)."""
        if not self.terms:
            return self
        mins = self.min_exponents()
        return self.shift(tuple(-m for m in mins))

    # ------------------------------------------------------------ evaluation
    def substitute(self, values: Iterable, one):
        """Evaluate with variable k replaced by values[k].

        The values must support ``*``, ``+`` and integer ``**`` (negative powers
        included when the polynomial is Laurent); ``one`` is the unit of their ring.
        """
        values = list(values)
        total = one * 0
        for e, c in self.terms.items():
            term = one
            for v, k in zip(values, e):
                if k:
                    term = term * (v ** k)
            total = total + term * c
        return total

    # ------------------------------------------------------------ comparison
    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == type(self).const(other, self.nvars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # ------------------------------------------------------------ output
    def sorted_terms(self):
        """Terms in graded-lex order, leading (highest degree, then lex-largest) first."""
        return sorted(self.terms.items(), key=lambda ec: (-sum(ec[0]), tuple(-x for x in ec[0])))

    def var_names(self) -> tuple:
        return self.names[: self.nvars]

    def to_str(self, names=None) -> str:
        names = names or self.var_names()
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k != 0
            )
            mag = abs(Fraction(c))
            sign = "-" if c < 0 else "+"
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_str()})"


class BiPoly(SparsePoly):
    """Polynomial in x, y with rational coefficients."""

    __slots__ = ()
    names = ("x", "y")

    def __init__(self, terms: Mapping | None = None, nvars: int = 2, *, _trusted: bool = False):
        if nvars != 2:
            raise ValueError("BiPoly has exactly two variables")
        super().__init__(terms, 2, _trusted=_trusted)

    @classmethod
    def _make(cls, terms, nvars=2):
        return cls(terms, 2, _trusted=True)

    @classmethod
    def const(cls, c, nvars: int = 2):
        return cls({(0, 0): c})

    @classmethod
    def x(cls):
        return cls({(1, 0): 1})

    @classmethod
    def y(cls):
        return cls({(0, 1): 1})

    @classmethod
    def xy_power(cls, k: int):
        return cls({(k, k): 1})

    @classmethod
    def binomial(cls, q: int, sign: int):
        """x^q + sign * y^q."""
        return cls({(q, 0): 1, (0, q): sign})

    def serialize(self) -> list:
        return [
            {"a": e[0], "b": e[1], "coeff": f"{Fraction(c).numerator}/{Fraction(c).denominator}"}
            for e, c in self.sorted_terms()
        ]

    @classmethod
    def deserialize(cls, records: list) -> "BiPoly":
        out = cls({})
        terms = {}
        for rec in records:
            key = (int(rec["a"]), int(rec["b"]))
            if key in terms:
                raise ValueError(f"duplicate exponent {key}")
            terms[key] = Fraction(rec["coeff"])
        out = cls(terms)
        if len(out.terms) != len(terms):
            raise ValueError("serialized polynomial carries a zero coefficient")
        return out


# ---------------------------------------------------------------- rational functions


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num: BiPoly, den: BiPoly | None = None):
        den = den if den is not None else BiPoly.const(1)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def of(cls, p) -> "RatFunc":
        if isinstance(p, RatFunc):
            return p
        if isinstance(p, BiPoly):
            return cls(p)
        return cls(BiPoly.const(p))

    def __mul__(self, other):
        other = RatFunc.of(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * RatFunc.of(other).inverse()

    def __add__(self, other):
        other = RatFunc.of(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RatFunc.of(other))

    def __rsub__(self, other):
        return RatFunc.of(other) - self

    def __pow__(self, k: int):
        if k >= 0:
            return RatFunc(self.num ** k, self.den ** k)
        return RatFunc(self.den ** (-k), self.num ** (-k))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        other = RatFunc.of(other)
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("RatFunc is unhashable (equality is by cross multiplication)")

    def serialize(self) -> dict:
        return {"num": self.num.serialize(), "den": self.den.serialize()}

    @classmethod
    def deserialize(cls, rec: dict) -> "RatFunc":
        return cls(BiPoly.deserialize(rec["num"]), BiPoly.deserialize(rec["den"]))

    def __str__(self) -> str:
        if self.den == BiPoly.const(1):
            return f"({self.num})"
        return f"({self.num})/({self.den})"

    __repr__ = __str__


# ---------------------------------------------------------------- group action


@dataclass(frozen=True)
class RotatedTerm:
    base: tuple
    magnitude: Fraction
    rotation: Fraction


def generator_rotation(gd: GroupData, gen: str, a: int, b: int) -> Fraction:
    """Rotation picked up by x^a y^b under a generator (before any swap)."""
    m, q = gd.m, gd.q
    if gen == "psi":
        return Fraction(a - b, 2 * q) % 1
    if gen == "phi":
        return Fraction(a + b, 2 * m) % 1
    if gen == "tau":
        return Fraction(a + b, 4) % 1
    if gen == "tauphi":
        return (Fraction(a + b, 4) + Fraction(a + b, 4 * m)) % 1
    raise ValueError(f"unknown generator {gen!r}")


def swaps(gen: str) -> bool:
    return gen in ("tau", "tauphi")


def act_generator(p: BiPoly, gd: GroupData, gen: str) -> list:
    if gen not in gd.generators:
        raise ValueError(f"{gen} is not a generator of D_{{{gd.n},{gd.q}}}")
    out = []
    half = Fraction(1, 2)
    for (a, b), c in p.terms.items():
        c = Fraction(c)
        rot = generator_rotation(gd, gen, a, b)
        if c < 0:
            rot = (rot + half) % 1
        base = (b, a) if swaps(gen) else (a, b)
        out.append(RotatedTerm(base, abs(c), rot))
    return sorted(out, key=lambda t: t.base)


def is_relative_invariant(p: BiPoly, gd: GroupData, chi: Character) -> bool:
    if p.is_zero():
        return False
    half = Fraction(1, 2)
    for gen in gd.generators:
        image = {t.base: (t.magnitude, t.rotation) for t in act_generator(p, gd, gen)}
        # chi(g) * p keeps the terms of p, each rotated by chi(g) (plus 1/2 for a negative sign)
        want = {}
        for base, c in p.terms.items():
            c = Fraction(c)
            want[base] = (abs(c), (chi[gen] + (half if c < 0 else 0)) % 1)
        if image != want:
            return False
    return True


# ---------------------------------------------------------------- relative invariant spaces


def _antidiagonal(gd: GroupData) -> str:
    return "tau" if gd.nq_odd else "tauphi"


def _diagonal_ok(gd: GroupData, chi: Character, a: int, b: int) -> bool:
    """Congruences for the diagonal (index two) subgroup."""
    if generator_rotation(gd, "psi", a, b) != chi["psi"]:
        return False
    if gd.nq_odd:
        return generator_rotation(gd, "phi", a, b) == chi["phi"]
    # the square of tauphi is the scalar exp(2 pi i (m+1)/2m)
    sq = Fraction((a + b) * (gd.m + 1), 2 * gd.m) % 1
    return sq == (2 * chi["tauphi"]) % 1


def _pair_sign(gd: GroupData, chi: Character, a: int, b: int) -> int:
    """Sign s with x^a y^b + s x^b y^a an eigenvector of the antidiagonal generator for chi."""
    sigma = _antidiagonal(gd)
    rot = (generator_rotation(gd, sigma, a, b) - chi[sigma]) % 1
    if rot == 0:
        return 1
    if rot == Fraction(1, 2):
        return -1
    raise ValueError(f"character {chi} is not a character of D_{{{gd.n},{gd.q}}}")


def _candidates(gd: GroupData, chi: Character, degree: int):
    sigma = _antidiagonal(gd)
    for a in range(degree // 2 + 1):
        b = degree - a
        if not _diagonal_ok(gd, chi, a, b):
            continue
        if a == b:
            if generator_rotation(gd, sigma, a, b) == chi[sigma]:
                yield a, b, 0
        else:
            if not _diagonal_ok(gd, chi, b, a):
                continue
            yield a, b, _pair_sign(gd, chi, a, b)


def relative_invariant_dim(gd: GroupData, chi: Character, degree: int) -> int:
    if degree < 0:
        return 0
    return sum(1 for _ in _candidates(gd, chi, degree))


def relative_invariant_basis(gd: GroupData, chi: Character, degree: int) -> list:
    out = []
    for a, b, s in _candidates(gd, chi, degree):
        if a == b:
            out.append(BiPoly({(a, b): 1}))
        else:
            out.append(BiPoly({(b, a): 1, (a, b): s}))
    return out


# ---------------------------------------------------------------- linear algebra


class RowSpace:
    """Incremental exact row echelon form over Q for sparse vectors (dict column -> value)."""

    def __init__(self):
        self.pivots: dict = {}  # pivot column -> row (normalised to 1 at pivot)

    def reduce(self, vec: dict) -> dict:
        vec = {k: Fraction(v) for k, v in vec.items() if v}
        while vec:
            col = max(vec)
            row = self.pivots.get(col)
            if row is None:
                return vec
            f = vec[col]
            for k, v in row.items():
                nv = vec.get(k, 0) - f * v
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
        return vec

    def add(self, vec: dict) -> bool:
        """Insert a vector; return True when it raised the rank."""
        vec = self.reduce(vec)
        if not vec:
            return False
        col = max(vec)
        piv = vec[col]
        self.pivots[col] = {k: v / piv for k, v in vec.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)
