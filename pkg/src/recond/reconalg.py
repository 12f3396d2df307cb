"""The reconstruction algebra of type D for groups with reduced fundamental cycle.

Vertices are ``"0"`` (the extending vertex, written as a star), the two horns
``"+"`` and ``"-"`` and the chain ``"1"``..``"N"``.  Arrow ids:

* horn arrows   ``c0_+ c+_1 c0_- c-_1`` (clockwise) and ``a1_+ a+_0 a1_- a-_0``
* chain arrows  ``c{t}_{t+1}``, ``a{t+1}_{t}``, ``c{N}_0`` and ``a0_{N}``
* extra arrows  ``k2 .. k{S}`` where S is the sum of (alpha_i - 2)

Paths are words read left to right: ``("c0_+", "c+_1")`` is c0_+ followed by
c+_1, a path from the star to vertex 1.  The extra arrow numbering also treats
a+_0 as k_1 and c{N}_0 as k_{S+1}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from enum import Enum

from .contfrac import DomainError
from .groupdata import GroupData, W, char_hom, character_of
from .invgen import Basis, minus_poly, plus_poly, symbol_product
from .polyexact import BiPoly, RowSpace, is_relative_invariant


class Presentation(str, Enum):
    MODULI = "moduli"
    SYMMETRIC = "symmetric"

    @classmethod
    def parse(cls, value) -> "Presentation":
        if isinstance(value, Presentation):
            return value
        return cls(str(value).lower())

    @property
    def basis(self) -> Basis:
        return Basis.W if self is Presentation.MODULI else Basis.V


STAR, PLUS, MINUS = "0", "+", "-"


# ---------------------------------------------------------------- quiver


@dataclass(frozen=True)
class Arrow:
    id: str
    tail: str
    head: str
    kind: str  # "c", "a" or "k"
    index: tuple  # (tail label, head label) for c/a arrows, (r,) for k_r


@dataclass(frozen=True)
class Quiver:
    n: int
    q: int
    N: int
    vertices: tuple
    arrows: tuple
    extra_total: int  # S = sum (alpha_i - 2); k-arrows are numbered 1..S+1
    butt: dict  # r -> tail vertex of k_r (r = 1 gives "+")
    u: dict  # vertex -> largest k index leaving it ("+" -> 1)
    v: dict  # vertex -> smallest k index leaving it
    left_k_vertex: dict  # i -> nearest vertex to the left of i with a k arrow, or "+"
    left_k_index: dict  # i -> u of that vertex

    def arrow(self, aid: str) -> Arrow:
        return self._by_id()[aid]

    def _by_id(self) -> dict:
        return {a.id: a for a in self.arrows}

    def k_id(self, r: int) -> str:
        if r == 1:
            return "a+_0"
        if r == self.extra_total + 1:
            return f"c{self.N}_0"
        return f"k{r}"

    def genuine_k(self) -> list:
        return [a for a in self.arrows if a.kind == "k"]


def _c(t, h):
    return f"c{t}_{h}"


def _a(t, h):
    return f"a{t}_{h}"


def build_quiver(gd: GroupData) -> Quiver:
    gd.require_reduced()
    N, alpha, b = gd.N, gd.alpha, gd.b
    S = sum(x - 2 for x in alpha)
    vertices = (STAR, PLUS, MINUS) + tuple(str(t) for t in range(1, N + 1))
    arrows = [
        Arrow(_c(0, "+"), STAR, PLUS, "c", ("0", "+")),
        Arrow(_c("+", 1), PLUS, "1", "c", ("+", "1")),
        Arrow(_c(0, "-"), STAR, MINUS, "c", ("0", "-")),
        Arrow(_c("-", 1), MINUS, "1", "c", ("-", "1")),
        Arrow(_a(1, "+"), "1", PLUS, "a", ("1", "+")),
        Arrow(_a("+", 0), PLUS, STAR, "a", ("+", "0")),
        Arrow(_a(1, "-"), "1", MINUS, "a", ("1", "-")),
        Arrow(_a("-", 0), MINUS, STAR, "a", ("-", "0")),
    ]
    for t in range(1, N):
        arrows.append(Arrow(_c(t, t + 1), str(t), str(t + 1), "c", (str(t), str(t + 1))))
        arrows.append(Arrow(_a(t + 1, t), str(t + 1), str(t), "a", (str(t + 1), str(t))))
    arrows.append(Arrow(_c(N, 0), str(N), STAR, "c", (str(N), "0")))
    arrows.append(Arrow(_a(0, N), STAR, str(N), "a", ("0", str(N))))

    # k_r for 2 <= r <= S leaves vertex b_r; b_r runs left to right
    butt = {1: PLUS}
    for r in range(2, S + 2):
        butt[r] = str(b[r])
    for r in range(2, S + 1):
        arrows.append(Arrow(f"k{r}", butt[r], STAR, "k", (r,)))

    u, v = {PLUS: 1}, {}
    for j in range(2, S + 2):
        i = butt[j]
        u[i] = max(u.get(i, j), j)
        v[i] = min(v.get(i, j), j)
    left_vertex, left_index = {}, {}
    for i in range(1, N + 1):
        cands = [j for j in range(1, i) if str(j) in u]
        left_vertex[str(i)] = str(max(cands)) if cands else PLUS
        left_index[str(i)] = u[left_vertex[str(i)]]
    return Quiver(gd.n, gd.q, N, vertices, tuple(arrows), S, butt, u, v, left_vertex, left_index)


# ---------------------------------------------------------------- linear combinations of paths


@dataclass(frozen=True)
class PathSum:
    """Rational linear combination of path words."""

    terms: tuple  # ((Fraction, word), ...)

    @classmethod
    def word(cls, *arrows: str, coeff=1) -> "PathSum":
        return cls(((Fraction(coeff), tuple(arrows)),))

    def __mul__(self, other: "PathSum") -> "PathSum":
        return PathSum(tuple((c1 * c2, w1 + w2) for c1, w1 in self.terms for c2, w2 in other.terms))

    def scale(self, k) -> "PathSum":
        return PathSum(tuple((c * k, w) for c, w in self.terms))

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other: "PathSum") -> "PathSum":
        return PathSum(self.terms + other.terms)

    def as_dict(self) -> dict:
        out: dict = {}
        for c, w in self.terms:
            out[w] = out.get(w, 0) + Fraction(c)
        return {w: c for w, c in out.items() if c}

    def words(self) -> list:
        return [w for _, w in self.terms]


@dataclass(frozen=True)
class Relation:
    name: str
    lhs: PathSum
    rhs: PathSum

    def difference(self) -> dict:
        """lhs - rhs as a map word -> coefficient."""
        out = self.lhs.as_dict()
        for w, c in self.rhs.as_dict().items():
            out[w] = out.get(w, 0) - c
        return {w: c for w, c in out.items() if c}

    def to_json(self) -> dict:
        def side(ps):
            return [{"coeff": f"{c.numerator}/{c.denominator}", "path": list(w)} for c, w in ps.terms]

        return {"name": self.name, "lhs": side(self.lhs), "rhs": side(self.rhs)}

    def __str__(self) -> str:
        def side(ps):
            parts = []
            for c, w in ps.terms:
                word = " ".join(w)
                parts.append(word if c == 1 else f"({c}) {word}")
            return " + ".join(parts)

        return f"{side(self.lhs)} = {side(self.rhs)}"


def path_ends(quiver: Quiver, word: tuple) -> tuple:
    arrows = quiver._by_id()
    for x, y in zip(word, word[1:]):
        if arrows[x].head != arrows[y].tail:
            raise DomainError(f"path {word} is not composable at {x}, {y}")
    return arrows[word[0]].tail, arrows[word[-1]].head


def relation_ends(quiver: Quiver, rel: Relation) -> tuple:
    ends = {path_ends(quiver, w) for w in rel.lhs.words() + rel.rhs.words()}
    if len(ends) != 1:
        raise DomainError(f"relation {rel.name} mixes paths with different ends: {sorted(ends)}")
    return ends.pop()


# ---------------------------------------------------------------- relations


def anticlockwise_path(quiver: Quiver, t: int) -> PathSum:
    """a0_N a{N}_{N-1} ... a{t+1}_{t}: the anticlockwise path from the star to vertex t."""
    N = quiver.N
    word = [_a(0, N)] + [_a(s + 1, s) for s in range(N - 1, t - 1, -1)]
    return PathSum.word(*word)


def clockwise_path(quiver: Quiver, t, presentation: Presentation) -> PathSum:
    """Clockwise path from the star to vertex t ("+" or 1..N)."""
    if t == PLUS:
        return PathSum.word(_c(0, "+"))
    plus_route = PathSum.word(_c(0, "+"), _c("+", 1))
    if presentation is Presentation.MODULI:
        first = plus_route
    else:
        first = plus_route.scale(Fraction(1, 2)) + PathSum.word(_c(0, "-"), _c("-", 1)).scale(Fraction(1, 2))
    t = int(t)
    if t == 1:
        return first
    return first * PathSum.word(*[_c(s, s + 1) for s in range(1, t)])


def relations(gd: GroupData, presentation="moduli", lam=4) -> list:
    presentation = Presentation.parse(presentation)
    lam = Fraction(lam)
    if lam == 0:
        raise DomainError("the scalar in the first relation must be nonzero")
    Q = build_quiver(gd)
    N = Q.N
    w = PathSum.word
    rels = [
        Relation("1", w(_c(0, "+"), _c("+", 1)) + -w(_c(0, "-"), _c("-", 1)),
                 anticlockwise_path(Q, 1).scale(lam)),
        Relation("2", w(_c(0, "+"), _a("+", 0)), w(_c(0, "-"), _a("-", 0))),
        Relation("3", w(_a("-", 0), _c(0, "-")), w(_c("-", 1), _a(1, "-"))),
        Relation("4", w(_a(1, "+"), _c("+", 1)), w(_a(1, "-"), _c("-", 1))),
        Relation("step 0", w(_a("+", 0), _c(0, "+")), w(_c("+", 1), _a(1, "+"))),
    ]

    def k(r):
        return w(Q.k_id(r))

    for i in range(1, N + 1):
        vi = str(i)
        name = f"step {i}"
        down = w(_a(1, "+"), _c("+", 1)) if i == 1 else w(_a(i, i - 1), _c(i - 1, i))
        up = w(_c(N, 0), _a(0, N)) if i == N else w(_c(i, i + 1), _a(i + 1, i))
        if vi not in Q.u:
            rels.append(Relation(name, up, down))
            continue
        A = anticlockwise_path(Q, i)
        C = clockwise_path(Q, i, presentation)
        V = Q.left_k_index[vi]
        rels.append(Relation(name, k(Q.v[vi]) * A, down))
        rels.append(Relation(name, A * k(Q.v[vi]), clockwise_path(Q, Q.butt[V], presentation) * k(V)))
        for t in range(Q.v[vi], Q.u[vi]):
            rels.append(Relation(name, k(t) * C, k(t + 1) * A))
            rels.append(Relation(name, C * k(t), A * k(t + 1)))
        if i < N:
            rels.append(Relation(name, k(Q.u[vi]) * C, up))
    for rel in rels:
        relation_ends(Q, rel)
    return rels


def relation_counts(gd: GroupData, rels: list) -> dict:
    Q = build_quiver(gd)
    out: dict = {}
    for rel in rels:
        key = relation_ends(Q, rel)
        out[key] = out.get(key, 0) + 1
    return out


def ext2_expected(gd: GroupData) -> dict:
    """Dimensions of Ext^2 between simples; pairs not listed are zero."""
    gd.require_reduced()
    alpha = gd.alpha
    out = {(PLUS, PLUS): 1, (MINUS, MINUS): 1, (STAR, STAR): 1 + sum(x - 2 for x in alpha), (STAR, "1"): 1}
    for i in range(1, gd.N + 1):
        out[(str(i), str(i))] = alpha[i] - 1
    return out


# ---------------------------------------------------------------- labels


def vertex_module(gd: GroupData, vertex: str):
    if vertex == STAR:
        return "trivial"
    if vertex == PLUS:
        return "W_plus"
    if vertex == MINUS:
        return "W_minus"
    return W(gd.i[int(vertex)])


@dataclass(frozen=True)
class LabeledQuiver:
    quiver: Quiver
    presentation: Presentation
    labels: dict  # arrow id -> BiPoly
    exponents: dict  # arrow id -> symbol exponents (xy, g2, g3) when the label is such a monomial


def label_arrows(gd: GroupData, presentation="moduli") -> LabeledQuiver:
    presentation = Presentation.parse(presentation)
    basis = presentation.basis
    Q = build_quiver(gd)
    N, q = Q.N, gd.q
    i, l, r, c, d = gd.i, gd.l, gd.r, gd.c, gd.d
    plus, minus = plus_poly(q), minus_poly(q)
    labels, exps = {}, {}

    def sym(aid, ex):
        exps[aid] = ex
        labels[aid] = symbol_product(gd, basis, *ex)

    labels[_c(0, "+")] = labels[_c("+", 1)] = plus
    labels[_c(0, "-")] = labels[_c("-", 1)] = minus
    labels[_a(1, "+")] = labels[_a("+", 0)] = minus.shift((r[3], r[3]))
    labels[_a(1, "-")] = labels[_a("-", 0)] = plus.shift((r[3], r[3]))
    sym(_a(0, N), (1, 0, 0))
    for t in range(1, N):
        sym(_a(t + 1, t), (i[t] - i[t + 1], 0, 0))
        sym(_c(t, t + 1), (0, c[l[t]], d[l[t]]))
    sym(_c(N, 0), (0, c[l[N]], d[l[N]]))
    for arrow in Q.genuine_k():
        t = arrow.index[0]
        sym(arrow.id, (r[t + 2], c[t + 1], d[t + 1]))
    return LabeledQuiver(Q, presentation, labels, exps)


def evaluate(labels: dict, ps: PathSum) -> BiPoly:
    total = BiPoly({})
    for coeff, word in ps.terms:
        prod = BiPoly.const(1)
        for aid in word:
            prod = prod * labels[aid]
        total = total + prod.scale(coeff)
    return total


@dataclass
class RelationReport:
    n: int
    q: int
    presentation: Presentation
    failed_relations: list = field(default_factory=list)  # relation index
    count_mismatches: list = field(default_factory=list)  # (pair, got, expected)
    bad_labels: list = field(default_factory=list)  # arrow ids
    total: int = 0
    lam: Fraction = Fraction(4)
    scalars: dict = field(default_factory=dict)
    unresolved_scalars: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (self.failed_relations or self.count_mismatches or self.bad_labels or self.unresolved_scalars)

    def summary(self) -> str:
        head = f"D_{{{self.n},{self.q}}} {self.presentation.value}"
        if self.lam != 4:
            head += f" (first relation scalar {self.lam})"
        s = (f"{head}: {self.total} relations, {len(self.failed_relations)} failed, "
             f"{len(self.count_mismatches)} count mismatches, {len(self.bad_labels)} bad labels")
        if self.unresolved_scalars:
            s += f", unresolved scalars {self.unresolved_scalars}"
        return s + (" : pass" if self.passed else " : FAIL")


def check_labels(gd: GroupData, lq: LabeledQuiver) -> list:
    bad = []
    for a in lq.quiver.arrows:
        chi = char_hom(character_of(gd, vertex_module(gd, a.tail)), character_of(gd, vertex_module(gd, a.head)))
        if not is_relative_invariant(lq.labels[a.id], gd, chi):
            bad.append(a.id)
    return bad


def verify_relations(gd: GroupData, presentation="moduli", rels: list | None = None) -> RelationReport:
    presentation = Presentation.parse(presentation)
    lq = label_arrows(gd, presentation)
    rels = rels if rels is not None else relations(gd, presentation)
    report = RelationReport(gd.n, gd.q, presentation, total=len(rels))
    for k, rel in enumerate(rels):
        if evaluate(lq.labels, rel.lhs) != evaluate(lq.labels, rel.rhs):
            report.failed_relations.append(k)
    got, want = relation_counts(gd, rels), ext2_expected(gd)
    for pair in sorted(set(got) | set(want)):
        if got.get(pair, 0) != want.get(pair, 0):
            report.count_mismatches.append((pair, got.get(pair, 0), want.get(pair, 0)))
    report.bad_labels = check_labels(gd, lq)
    return report


# ---------------------------------------------------------------- rescaling the first relation


def _scalar_of(word: tuple, kappa: dict):
    """Product of known scalars along a word and the unknown arrows (with multiplicity)."""
    known, unknown = Fraction(1), {}
    for aid in word:
        if aid in kappa:
            known *= kappa[aid]
        else:
            unknown[aid] = unknown.get(aid, 0) + 1
    return known, unknown


def rescaling_scalars(gd: GroupData, presentation, lam) -> tuple:
    """Scalars kappa per arrow making the rescaled labels satisfy the relations with lam.

    The horn arrows and the chain arrows a{t+1}_{t} keep scalar 1, a0_N takes 4/lam
    so that the first relation holds, and the remaining scalars are propagated
    through the binomial relations in order.  Returns (kappa, unresolved ids).
    """
    lam = Fraction(lam)
    Q = build_quiver(gd)
    kappa = {a.id: Fraction(1) for a in Q.arrows if a.id[0] == "a" or a.tail in (PLUS, MINUS) or a.head in (PLUS, MINUS)}
    kappa[_a(0, Q.N)] = 4 / lam
    rels = relations(gd, presentation, lam)[1:]
    progress = True
    while progress:
        progress = False
        for rel in rels:
            lk, lu = _scalar_of(rel.lhs.terms[0][1], kappa)
            rk, ru = _scalar_of(rel.rhs.terms[0][1], kappa)
            unknown = set(lu) | set(ru)
            if len(unknown) != 1:
                continue
            aid = unknown.pop()
            power = lu.get(aid, 0) - ru.get(aid, 0)
            if power not in (1, -1):
                continue
            # lk * kappa^lu = rk * kappa^ru  =>  kappa^power = rk / lk
            kappa[aid] = (rk / lk) ** power
            progress = True
    unresolved = [a.id for a in Q.arrows if a.id not in kappa]
    return kappa, unresolved


def lambda_variant(gd: GroupData, presentation="symmetric", lam=4) -> tuple:
    presentation = Presentation.parse(presentation)
    lam = Fraction(lam)
    if lam == 0:
        raise DomainError("the scalar in the first relation must be nonzero")
    rels = relations(gd, presentation, lam)
    lq = label_arrows(gd, presentation)
    kappa, unresolved = rescaling_scalars(gd, presentation, lam)
    report = RelationReport(gd.n, gd.q, presentation, total=len(rels), lam=lam, scalars=kappa,
                            unresolved_scalars=unresolved)
    if not unresolved:
        scaled = {aid: p.scale(kappa[aid]) for aid, p in lq.labels.items()}
        for k, rel in enumerate(rels):
            if evaluate(scaled, rel.lhs) != evaluate(scaled, rel.rhs):
                report.failed_relations.append(k)
    return rels, report


def swap_horns(rel: Relation) -> Relation:
    table = str.maketrans({"+": "-", "-": "+"})

    def side(ps):
        return PathSum(tuple((c, tuple(a.translate(table) for a in w)) for c, w in ps.terms))

    return Relation(rel.name, side(rel.lhs), side(rel.rhs))


def relation_spans_equal(gd: GroupData, first: list, second: list) -> bool:
    """Do two relation lists span the same space, separately for each pair of path ends?"""
    Q = build_quiver(gd)

    def spans(rels):
        out: dict = {}
        for rel in rels:
            out.setdefault(relation_ends(Q, rel), []).append(rel.difference())
        return out

    a, b = spans(first), spans(second)
    if set(a) != set(b):
        return False
    for key in a:
        sa, sab = RowSpace(), RowSpace()
        for vec in a[key]:
            sa.add(vec)
            sab.add(vec)
        sb = RowSpace()
        for vec in b[key]:
            sb.add(vec)
            sab.add(vec)
        if not (sa.rank == sb.rank == sab.rank):
            return False
    return True


# ---------------------------------------------------------------- output


VERTEX_DISPLAY = {STAR: "⋆", PLUS: "+", MINUS: "−"}


def to_dot(quiver: Quiver, labels: dict | None = None) -> str:
    lines = [f'digraph "D_{quiver.n}_{quiver.q}" {{']
    for vtx in quiver.vertices:
        lines.append(f'  "{vtx}" [label="{VERTEX_DISPLAY.get(vtx, vtx)}"];')
    for a in quiver.arrows:
        text = str(labels[a.id]) if labels else a.id
        lines.append(f'  "{a.tail}" -> "{a.head}" [label="{text}"];')
    lines.append("}")
    return "\n".join(lines)


def relations_json(rels: list) -> str:
    return json.dumps([r.to_json() for r in rels], indent=2)
