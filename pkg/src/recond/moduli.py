"""Charts of the minimal resolution read off the moduli presentation.

A chart fixes a spanning tree of "distinguished" arrows out of the star
vertex, sets them to 1 and keeps three coordinate arrows as the variables
a, b, c.  Every other arrow is solved for by walking the relations: whenever
a relation contains exactly one unknown arrow, linearly and in a single path,
that arrow is the quotient of the rest (the division must be exact).  What is
left once every arrow is known is the hypersurface equation.

Chart ids: ``"U0"`` .. ``"U{N}"``, ``"U+"`` and ``"U-"``.  Ratios are
monomials in the three symbols xy, (+) = x^q + y^q and (-) = x^q - y^q and are
stored as integer exponent triples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .contfrac import DomainError
from .groupdata import GroupData
from .invgen import a2_sign, minus_poly, plus_poly
from .polyexact import BiPoly, DivisionError, RatFunc, SparsePoly
from .reconalg import (
    STAR,
    Presentation,
    anticlockwise_path,
    build_quiver,
    clockwise_path,
    label_arrows,
    relations,
)

VARS = ("a", "b", "c")
STABILITY_NOTE = "dimension vector (1,...,1), stability (-(N+2), 1, ..., 1)"


class EliminationError(RuntimeError):
    """The relation walk stalled or produced an inconsistent residual."""


def _poly3(terms) -> SparsePoly:
    return SparsePoly(terms, 3)


ONE = _poly3({(0, 0, 0): 1})
VAR = tuple(_poly3({tuple(1 if k == j else 0 for k in range(3)): 1}) for j in range(3))


# ---------------------------------------------------------------- chart layout


@dataclass(frozen=True)
class ChartLayout:
    id: str
    distinguished: tuple  # arrow ids set to 1
    coordinates: tuple  # arrow ids for a, b, c
    open_conditions: tuple  # path words required nonzero


def chart_ids(gd: GroupData) -> list:
    return [f"U{t}" for t in range(gd.N + 1)] + ["U+", "U-"]


def chart_layout(gd: GroupData, chart_id: str) -> ChartLayout:
    Q = build_quiver(gd)
    N = Q.N
    mod = Presentation.MODULI
    anti = {t: anticlockwise_path(Q, t).terms[0][1] for t in range(1, N + 1)}
    if chart_id in ("U+", "U-"):
        s, o = ("+", "-") if chart_id == "U+" else ("-", "+")
        dist = (f"c0_{s}",) + anti[1] + (f"a1_{o}",)
        coords = (f"c0_{o}", f"a1_{s}", f"a{o}_0")
        opens = ((f"c0_{s}",), anti[1], (f"a1_{o}",))
        return ChartLayout(chart_id, dist, coords, opens)
    if not chart_id.startswith("U"):
        raise DomainError(f"unknown chart {chart_id!r}")
    t = int(chart_id[1:])
    if not 0 <= t <= N:
        raise DomainError(f"chart index {t} outside 0..{N}")
    if t == N:
        dist = ("c0_+", "c0_-") + anti[1]
        return ChartLayout(chart_id, dist, ("a1_-", "a1_+", "c+_1"), (("c0_+",), ("c0_-",), anti[1]))
    j = N - t
    clock = clockwise_path(Q, j, mod).terms[0][1]
    dist = clock + ("c0_-",)
    opens = [clock, ("c0_-",)]
    if t >= 1:
        dist += anti[j + 1]
        opens.append(anti[j + 1])
    if j == N:
        coords = ("a1_-", f"c{N}_0", f"a0_{N}")
    else:
        coords = ("a1_-", f"c{j}_{j + 1}", f"a{j + 1}_{j}")
    return ChartLayout(chart_id, dist, coords, tuple(opens))


# ---------------------------------------------------------------- elimination


def _relation_terms(rel) -> list:
    out = [(c, w) for c, w in rel.lhs.terms]
    out += [(-c, w) for c, w in rel.rhs.terms]
    return out


def _value_of_word(word, values):
    p = ONE
    for aid in word:
        p = p * values[aid]
    return p


def eliminate(gd: GroupData, layout: ChartLayout) -> tuple:
    """Solve every arrow of the chart; returns (values, residual polynomials)."""
    Q = build_quiver(gd)
    rels = [_relation_terms(r) for r in relations(gd, "moduli")]
    values = {aid: ONE for aid in layout.distinguished}
    for k, aid in enumerate(layout.coordinates):
        values[aid] = VAR[k]
    unknown = {a.id for a in Q.arrows} - set(values)
    while unknown:
        best = None
        for idx, terms in enumerate(rels):
            missing = [aid for _, w in terms for aid in w if aid in unknown]
            if len(missing) != 1:
                continue
            target = missing[0]
            rest = SparsePoly({}, 3)
            coeff_poly = None
            for c, w in terms:
                if target in w:
                    others = [aid for aid in w if aid != target]
                    coeff_poly = _value_of_word(others, values).scale(c)
                else:
                    rest = rest + _value_of_word(w, values).scale(c)
            if coeff_poly is None or coeff_poly.is_zero():
                continue
            try:
                sol = (-rest).exact_div(coeff_poly)
            except DivisionError:
                continue
            if best is None or len(sol) < len(best[1]):
                best = (target, sol, idx)
        if best is None:
            raise EliminationError(
                f"D_{{{gd.n},{gd.q}}} chart {layout.id}: no relation solves any of {sorted(unknown)}"
            )
        target, sol, _ = best
        values[target] = sol
        unknown.discard(target)
    residuals = []
    for terms in rels:
        total = SparsePoly({}, 3)
        for c, w in terms:
            total = total + _value_of_word(w, values).scale(c)
        if not total.is_zero():
            residuals.append(total)
    return values, residuals


def normalize_equation(f: SparsePoly) -> SparsePoly:
    """Strip monomial and constant content, then fix the sign.

    Among the terms of top degree in a, the one with the smallest absolute
    coefficient (ties broken by graded-lex order) gets a positive coefficient.
    """
    f = f.strip_monomial().primitive()
    top = max(e[0] for e in f.terms)
    lead = [(abs(Fraction(c)), -sum(e), tuple(-x for x in e), c) for e, c in f.terms.items() if e[0] == top]
    lead.sort()
    return -f if lead[0][3] < 0 else f


def equation_from_residuals(chart_id: str, residuals: list) -> SparsePoly:
    if not residuals:
        raise EliminationError(f"chart {chart_id}: the relations leave no equation")
    cands = sorted((normalize_equation(r) for r in residuals), key=lambda p: (len(p), p.degree(), p.to_str(VARS)))
    eq = cands[0]
    for r in cands[1:]:
        try:
            r.exact_div(eq)
        except DivisionError:
            raise EliminationError(f"chart {chart_id}: residual {r.to_str(VARS)} is not a multiple of {eq.to_str(VARS)}")
    return eq


# ---------------------------------------------------------------- symbol monomials (xy, (+), (-))


@dataclass(frozen=True)
class SymbolRatio:
    """(xy)^xy * (+)^plus * (-)^minus with integer exponents."""

    xy: int
    plus: int
    minus: int

    def __mul__(self, other: "SymbolRatio") -> "SymbolRatio":
        return SymbolRatio(self.xy + other.xy, self.plus + other.plus, self.minus + other.minus)

    def __pow__(self, k: int) -> "SymbolRatio":
        return SymbolRatio(self.xy * k, self.plus * k, self.minus * k)

    def inverse(self) -> "SymbolRatio":
        return self ** -1

    def as_tuple(self) -> tuple:
        return (self.xy, self.plus, self.minus)

    def to_ratfunc(self, q: int) -> RatFunc:
        num, den = BiPoly.const(1), BiPoly.const(1)
        for base, k in ((BiPoly.xy_power(1), self.xy), (plus_poly(q), self.plus), (minus_poly(q), self.minus)):
            if k > 0:
                num = num * base ** k
            elif k < 0:
                den = den * base ** (-k)
        return RatFunc(num, den)

    def __str__(self) -> str:
        def part(sym, k):
            return "" if k == 0 else (sym if k == 1 else f"{sym}^{k}")

        num = "".join(part(s, k) for s, k in (("(xy)", self.xy), ("(+)", self.plus), ("(-)", self.minus)) if k > 0)
        den = "".join(part(s, -k) for s, k in (("(xy)", self.xy), ("(+)", self.plus), ("(-)", self.minus)) if k < 0)
        return f"{num or '1'}/{den}" if den else (num or "1")


def w_symbol(gd: GroupData, xy: int, g2: int, g3: int) -> SymbolRatio:
    """(xy)^xy w2^g2 w3^g3 in the symbols; w2 = (+) h and w3 = (-) h with h = (+) or (-)."""
    h = SymbolRatio(0, 1, 0) if a2_sign(gd) == 1 else SymbolRatio(0, 0, 1)
    return SymbolRatio(xy, g2, g3) * h ** (g2 + g3)


def coordinate_ratios(gd: GroupData, chart_id: str) -> tuple:
    """The tabulated ratio coordinates of a chart, as SymbolRatio triples.

    For U_N the fourth entry is the alternative coordinate d = (-)^2/(xy)^q.
    """
    gd.require_reduced()
    N, q, m = gd.N, gd.q, gd.m
    i, r, delta, gamma = gd.i, gd.r, gd.delta, gd.gamma
    S = SymbolRatio
    if chart_id == "U+":
        return (S(-m, -1, 1), S(m, -1, 1), S(r[2], 2, 0))
    if chart_id == "U-":
        return (S(-m, 1, -1), S(m, 1, -1), S(r[2], 0, 2))
    t = int(chart_id[1:])
    if t == N:
        return (S(m, 1, -1), S(m, -1, 1), S(-q, 2, 0), S(-q, 0, 2))
    j = N - t
    i_next = i[j + 1] if j + 1 <= N else 0
    b = w_symbol(gd, -i_next, delta[j + 1], gamma[j + 1])
    c = w_symbol(gd, i[j], delta[j], gamma[j]).inverse() * S(2 * i[j], 0, 0)
    return (S(r[3], 3, -1), b, c)


def label_symbols(gd: GroupData) -> dict:
    """Arrow labels of the moduli presentation as SymbolRatio (w2 = (+)^2, w3 = (+)(-))."""
    lq = label_arrows(gd, "moduli")
    out = {}
    for aid in lq.labels:
        if aid in lq.exponents:
            xy, g2, g3 = lq.exponents[aid]
            out[aid] = w_symbol(gd, xy, g2, g3)
    r3 = gd.r[3]
    out["c0_+"] = out["c+_1"] = SymbolRatio(0, 1, 0)
    out["c0_-"] = out["c-_1"] = SymbolRatio(0, 0, 1)
    out["a1_+"] = out["a+_0"] = SymbolRatio(r3, 0, 1)
    out["a1_-"] = out["a-_0"] = SymbolRatio(r3, 1, 0)
    return out


def gauge_ratios(gd: GroupData, layout: ChartLayout) -> tuple:
    """Coordinate arrows after rescaling vertices so the distinguished arrows become 1."""
    Q = build_quiver(gd)
    sym = label_symbols(gd)
    reach = {STAR: SymbolRatio(0, 0, 0)}
    pending = [Q.arrow(aid) for aid in layout.distinguished]
    while pending:
        progressed = False
        for a in list(pending):
            if a.tail in reach:
                reach[a.head] = reach[a.tail] * sym[a.id]
                pending.remove(a)
                progressed = True
        if not progressed:
            raise EliminationError(f"chart {layout.id}: distinguished arrows do not form a tree from the star")
    return tuple(sym[aid] * reach[Q.arrow(aid).tail] * reach[Q.arrow(aid).head].inverse() for aid in layout.coordinates)


# ---------------------------------------------------------------- charts


@dataclass(frozen=True)
class ChartExponents:
    eta_plus: int
    theta_plus: int
    eta_sum: int
    theta_sum: int

    def as_dict(self) -> dict:
        return {"eta_plus": self.eta_plus, "theta_plus": self.theta_plus,
                "eta_sum": self.eta_sum, "theta_sum": self.theta_sum}


@dataclass(frozen=True)
class Chart:
    id: str
    layout: ChartLayout
    equation: SparsePoly
    exponents: ChartExponents | None
    ratios: tuple  # SymbolRatio triple
    alt_coordinate: SymbolRatio | None
    values: dict = field(compare=False, repr=False)

    @property
    def open_conditions(self) -> tuple:
        return self.layout.open_conditions

    @property
    def coordinate_arrows(self) -> tuple:
        return self.layout.coordinates

    def ratio_funcs(self, q: int) -> tuple:
        """The ratio coordinates as rational functions in x, y."""
        return tuple(r.to_ratfunc(q) for r in self.ratios)

    def equation_str(self) -> str:
        return self.equation.to_str(VARS)

    def shape_str(self) -> str:
        """The equation written in the factored shape used in the tables."""
        return shape_string(self)


def _monomial_bc(p: SparsePoly, what: str) -> tuple:
    if not p.is_monomial():
        raise EliminationError(f"{what} is not a monomial: {p.to_str(VARS)}")
    (a, b, c), coeff = p.single_term()
    if a != 0 or coeff != 1:
        raise EliminationError(f"{what} is not a monic monomial in b, c: {p.to_str(VARS)}")
    return b, c


def build_chart(gd: GroupData, chart_id: str) -> Chart:
    gd.require_reduced()
    layout = chart_layout(gd, chart_id)
    values, residuals = eliminate(gd, layout)
    eq = equation_from_residuals(chart_id, residuals)
    exps = None
    if chart_id not in ("U+", "U-") and int(chart_id[1:]) < gd.N:
        Q = build_quiver(gd)
        eta_p, theta_p = _monomial_bc(values["a+_0"], "a+_0")
        path = _value_of_word(anticlockwise_path(Q, 1).terms[0][1], values)
        eta_s, theta_s = _monomial_bc(path, "the anticlockwise path")
        exps = ChartExponents(eta_p, theta_p, eta_s, theta_s)
    ratios = coordinate_ratios(gd, chart_id)
    alt = ratios[3] if len(ratios) == 4 else None
    return Chart(chart_id, layout, eq, exps, ratios[:3], alt, values)


def charts(gd: GroupData) -> list:
    return [build_chart(gd, cid) for cid in chart_ids(gd)]


def chart_exponents(gd: GroupData, t: int) -> ChartExponents:
    if not 0 <= t < gd.N:
        raise DomainError(f"exponents are defined for charts U0..U{gd.N - 1}")
    return build_chart(gd, f"U{t}").exponents


def _pow_str(var: str, k: int) -> str:
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


def _mono_str(*parts) -> str:
    s = "*".join(p for p in parts if p)
    return s or "1"


def shape_string(chart: Chart) -> str:
    if chart.exponents is not None:
        ex = chart.exponents
        unit = _mono_str(_pow_str("b", ex.eta_sum), _pow_str("c", ex.theta_sum))
        rhs = _mono_str(_pow_str("b", ex.eta_plus), _pow_str("c", ex.theta_plus))
        return f"a*(1-4*{unit})-{rhs}" if unit != "1" else f"a*(1-4)-{rhs}"
    return {"U+": "b*(a^2*c+4)-a*c", "U-": "b*(a^2*c-4)-a*c"}.get(chart.id, "a*(c-4)-b*c")


def expected_equation(chart: Chart) -> SparsePoly:
    """The tabulated equation for the chart, rebuilt from its exponents."""
    a, b, c = VAR
    if chart.exponents is not None:
        ex = chart.exponents
        f = a * (ONE - (b ** ex.eta_sum * c ** ex.theta_sum).scale(4)) - b ** ex.eta_plus * c ** ex.theta_plus
    elif chart.id == "U+":
        f = b * (a * a * c + 4) - a * c
    elif chart.id == "U-":
        f = b * (a * a * c - 4) - a * c
    else:
        f = a * (c - 4) - b * c
    return normalize_equation(f)


def alt_equation() -> SparsePoly:
    """Equation of U_N in the coordinates (a, b, d) with d = c - 4."""
    a, b, d = VAR
    return normalize_equation(a * d - b * (d + 4))


# ---------------------------------------------------------------- ratio checks


def evaluate_on_ratios(eq: SparsePoly, ratios: tuple, q: int) -> BiPoly:
    """eq(ratios) with denominators cleared (a polynomial in x, y)."""
    collected: dict = {}
    for e, coeff in eq.terms.items():
        sym = SymbolRatio(0, 0, 0)
        for r, k in zip(ratios, e):
            sym = sym * r ** k
        key = sym.as_tuple()
        collected[key] = collected.get(key, 0) + coeff
    collected = {k: c for k, c in collected.items() if c}
    if not collected:
        return BiPoly({})
    lows = [min(k[j] for k in collected) for j in range(3)]
    bases = (BiPoly.xy_power(1), plus_poly(q), minus_poly(q))
    total = BiPoly({})
    for key, coeff in collected.items():
        term = BiPoly.const(coeff)
        for base, k, low in zip(bases, key, lows):
            if k - low:
                term = term * base ** (k - low)
        total = total + term
    return total


@dataclass
class ChartReport:
    chart: str
    on_ratios: bool
    matches_table: bool
    gauge_agrees: bool
    smooth: bool
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.on_ratios and self.matches_table and self.gauge_agrees and self.smooth


def verify_chart_on_ratios(gd: GroupData, chart: Chart, ratios: tuple | None = None) -> bool:
    ratios = ratios if ratios is not None else chart.ratios
    if not evaluate_on_ratios(chart.equation, ratios, gd.q).is_zero():
        return False
    if chart.alt_coordinate is not None and ratios is chart.ratios:
        alt = (chart.ratios[0], chart.ratios[1], chart.alt_coordinate)
        return evaluate_on_ratios(alt_equation(), alt, gd.q).is_zero()
    return True


def verify_chart(gd: GroupData, chart: Chart) -> ChartReport:
    rep = ChartReport(chart.id, verify_chart_on_ratios(gd, chart), chart.equation == expected_equation(chart),
                      gauge_ratios(gd, chart.layout) == chart.ratios, False)
    try:
        rep.smooth = smoothness_check(chart.equation).smooth
    except DomainError as exc:
        rep.notes.append(str(exc))
    return rep


# ---------------------------------------------------------------- glues


@dataclass(frozen=True)
class GlueMap:
    """target coordinate k = prod_j source_j ** matrix[k][j]."""

    source: str
    target: str
    matrix: tuple
    source_uses_alt: bool = False  # U_N read in (a, b, d)

    def transform_str(self) -> str:
        parts = []
        for row in self.matrix:
            factors = []
            for var, k in zip(("a", "b", "d" if self.source_uses_alt else "c"), row):
                if k == 1:
                    factors.append(var)
                elif k:
                    factors.append(f"{var}^{k}")
            parts.append("*".join(factors) or "1")
        return "(" + ", ".join(parts) + ")"

    def apply_monomials(self, values: tuple):
        out = []
        for row in self.matrix:
            v = None
            for x, k in zip(values, row):
                f = x ** k
                v = f if v is None else v * f
            out.append(v)
        return tuple(out)


def _det3(m) -> int:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def inverse_matrix(m) -> tuple:
    det = _det3(m)
    if det not in (1, -1):
        raise DomainError(f"monomial map with determinant {det} is not invertible")
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            minor = [[m[r][c] for c in range(3) if c != j] for r in range(3) if r != i]
            cof[i][j] = (-1) ** (i + j) * (minor[0][0] * minor[1][1] - minor[0][1] * minor[1][0])
    return tuple(tuple(cof[j][i] * det for j in range(3)) for i in range(3))


def _matmul(x, y) -> tuple:
    return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(3)) for j in range(3)) for i in range(3))


def glue_maps(gd: GroupData) -> list:
    gd.require_reduced()
    N, alpha = gd.N, gd.alpha
    glues = []
    for t in range(N - 1):
        glues.append(GlueMap(f"U{t}", f"U{t + 1}", ((1, 0, 0), (0, 0, -1), (0, 1, alpha[N - t]))))
    glues.append(GlueMap(f"U{N - 1}", f"U{N}", ((1, 0, 1), (0, 1, alpha[1] - 1), (0, 0, -1))))
    glues.append(GlueMap(f"U{N}", "U+", ((-1, 0, 0), (0, 1, 0), (2, 0, 1)), source_uses_alt=True))
    glues.append(GlueMap(f"U{N}", "U-", ((0, -1, 0), (1, 0, 0), (0, 2, 1))))
    return glues


def _same_up_to_unit(f: SparsePoly, g: SparsePoly) -> bool:
    f, g = f.strip_monomial(), g.strip_monomial()
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    _, lf = f.leading()
    _, lg = g.leading()
    return f.scale(Fraction(1) / Fraction(lf)) == g.scale(Fraction(1) / Fraction(lg))


@dataclass
class GlueReport:
    source: str
    target: str
    transform: str
    round_trip: bool
    pullback: bool
    ratios: bool

    @property
    def passed(self) -> bool:
        return self.round_trip and self.pullback and self.ratios


def verify_glue(gd: GroupData, glue: GlueMap, by_id: dict) -> GlueReport:
    src, tgt = by_id[glue.source], by_id[glue.target]
    inv = inverse_matrix(glue.matrix)
    ident = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    round_trip = _matmul(glue.matrix, inv) == ident and _matmul(inv, glue.matrix) == ident
    src_eq = alt_equation() if glue.source_uses_alt else src.equation
    pulled = tgt.equation.substitute(glue.apply_monomials(VAR), ONE)
    pullback = _same_up_to_unit(pulled, src_eq)
    src_ratios = (src.ratios[0], src.ratios[1], src.alt_coordinate) if glue.source_uses_alt else src.ratios
    mapped = glue.apply_monomials(src_ratios)
    ratios_ok = all(
        m.to_ratfunc(gd.q) == t.to_ratfunc(gd.q) for m, t in zip(mapped, tgt.ratios)
    )
    return GlueReport(glue.source, glue.target, glue.transform_str(), round_trip, pullback, ratios_ok)


def verify_glues(gd: GroupData, chart_list: list | None = None) -> list:
    chart_list = chart_list if chart_list is not None else charts(gd)
    by_id = {c.id: c for c in chart_list}
    return [verify_glue(gd, g, by_id) for g in glue_maps(gd)]


# ---------------------------------------------------------------- smoothness


@dataclass(frozen=True)
class SmoothnessReport:
    shape: str
    smooth: bool
    reason: str


def _gradient(f: SparsePoly) -> list:
    out = []
    for k in range(3):
        terms = {}
        for e, c in f.terms.items():
            if e[k]:
                e2 = list(e)
                e2[k] -= 1
                terms[tuple(e2)] = c * e[k]
        out.append(SparsePoly(terms, 3))
    return out


def _value_at_origin(f: SparsePoly):
    return f.terms.get((0, 0, 0), 0)


def _unit_shape(f: SparsePoly):
    """Exponents ((E, F), (eta, theta)) when f = a (1 - 4 b^E c^F) - b^eta c^theta."""
    linear = {e: c for e, c in f.terms.items() if e[0] == 1}
    rest = {e: c for e, c in f.terms.items() if e[0] == 0}
    if len(linear) + len(rest) != len(f.terms) or len(rest) != 1 or len(linear) != 2:
        return None
    if linear.get((1, 0, 0)) != 1:
        return None
    (e_m, c_m), = rest.items()
    (e_u, c_u), = [(e, c) for e, c in linear.items() if e != (1, 0, 0)]
    if c_m != -1 or c_u != -4:
        return None
    return (e_u[1], e_u[2]), (e_m[1], e_m[2])


def smoothness_check(f) -> SmoothnessReport:
    """Decide smoothness of the surface f = 0 by the argument matching its shape."""
    if isinstance(f, Chart):
        f = f.equation
    a, b, c = VAR
    grad = _gradient(f)
    if _value_at_origin(f) == 0 and all(_value_at_origin(g) == 0 for g in grad):
        return SmoothnessReport("probe", False, "f and its gradient vanish at the origin")
    shape = _unit_shape(f)
    if shape is not None:
        (e_u, f_u), (eta, theta) = shape
        # u = 1 - 4 b^e_u c^f_u vanishes only where every variable it involves is nonzero,
        # while m = b^eta c^theta must vanish too; a singular point therefore sits on
        # {b = 0} (or {c = 0}) with u free of b (or c), and exists exactly when m
        # vanishes there to order at least 2
        bad = [name for name, in_u, other_in_u, in_m in (("b", e_u, f_u, eta), ("c", f_u, e_u, theta))
               if in_u == 0 and other_in_u > 0 and in_m >= 2]
        if bad:
            return SmoothnessReport("a*u - m", False, f"singular along u = 0 inside {bad[0]} = 0")
        return SmoothnessReport("a*u - m", True, "u and m have no common zero where the gradient vanishes")
    if f == normalize_equation(a * (c - 4) - b * c):
        return SmoothnessReport("a*(c-4) - b*c", True, "f_a = c - 4 and f_b = -c cannot vanish together")
    if f == alt_equation():
        return SmoothnessReport("a*d - b*(d+4)", True, "f_a = d and f_b = -(d+4) cannot vanish together")
    for sign in (4, -4):
        if f == normalize_equation(b * (a * a * c + sign) - a * c):
            return SmoothnessReport("b*(a^2*c +- 4) - a*c", True, "f_b = 0 forces a*c != 0 and then f = -a*c != 0")
    raise DomainError(f"unrecognized equation shape {f.to_str(VARS)}")


# ---------------------------------------------------------------- output


def charts_json(gd: GroupData, chart_list: list | None = None) -> str:
    chart_list = chart_list if chart_list is not None else charts(gd)
    glues = glue_maps(gd)
    out = []
    for ch in chart_list:
        rec = {
            "id": ch.id,
            "coordinates": list(ch.coordinate_arrows),
            "open_conditions": [list(w) for w in ch.open_conditions],
            "equation": ch.shape_str(),
            "equation_expanded": ch.equation_str(),
            "exponents": ch.exponents.as_dict() if ch.exponents else None,
            "ratios": [r.serialize() for r in ch.ratio_funcs(gd.q)],
            "ratio_symbols": [str(r) for r in ch.ratios],
            "glues": [{"target": g.target, "transform": g.transform_str()} for g in glues if g.source == ch.id],
        }
        if ch.alt_coordinate is not None:
            rec["alt_coordinate"] = str(ch.alt_coordinate)
        out.append(rec)
    return json.dumps(out, indent=2)
