"""Special Cohen-Macaulay modules of rank one: generators, vertices and cycles.

The non-free rank one specials are W_+, W_- and W_{i_t} for nu+1 <= t <= N.
Each is generated by two relative invariants:

* W_+      : x^q + y^q  and (xy)^{n-q} (x^q - y^q)
* W_-      : x^q - y^q  and (xy)^{n-q} (x^q + y^q)
* W_{i_t}  : (xy)^{i_t} and g2^{Delta_t} g3^{Gamma_t}

where (g2, g3) is (w2, w3) or (v2, v3) depending on the basis.  The
auxiliary quiver links the trivial module R and the W_{i_t} by maps whose
labels are monomials in the symbols (xy, g2, g3); its cycles reproduce the
invariant ring generators.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .contfrac import DomainError
from .groupdata import GroupData, UnsupportedCase, W, character_of, module_name
from .invgen import Basis, invariant_generators, minus_poly, plus_poly, symbol_product
from .polyexact import BiPoly, RowSpace, is_relative_invariant, relative_invariant_basis, relative_invariant_dim


# ---------------------------------------------------------------- generator tables


@dataclass(frozen=True)
class SpecialEntry:
    module: object  # module id: "W_plus", "W_minus" or ("W", i_t)
    chain_index: int | None  # t for W_{i_t}, None for the horns
    generators: tuple  # (BiPoly, BiPoly)
    exponents: tuple | None  # symbol exponents (xy, g2, g3) of both generators for W_{i_t}

    @property
    def name(self) -> str:
        return module_name(self.module)


@dataclass(frozen=True)
class SpecialTable:
    n: int
    q: int
    basis: Basis
    entries: tuple  # of SpecialEntry: W_plus, W_minus, then W_{i_t} for t = nu+1..N

    def __len__(self) -> int:
        return len(self.entries)

    def entry(self, module) -> SpecialEntry:
        for e in self.entries:
            if e.module == module:
                return e
        raise KeyError(module)


def special_generators(gd: GroupData, basis="w") -> SpecialTable:
    basis = Basis.parse(basis)
    q, m = gd.q, gd.m
    plus, minus = plus_poly(q), minus_poly(q)
    entries = [
        SpecialEntry("W_plus", None, (plus, (minus).shift((m, m))), None),
        SpecialEntry("W_minus", None, (minus, (plus).shift((m, m))), None),
    ]
    for t in range(gd.nu + 1, gd.N + 1):
        it = gd.i[t]
        ex = ((it, 0, 0), (0, gd.delta[t], gd.gamma[t]))
        gens = (BiPoly.xy_power(it), symbol_product(gd, basis, *ex[1]))
        entries.append(SpecialEntry(W(it), t, gens, ex))
    return SpecialTable(gd.n, gd.q, basis, tuple(entries))


def check_table_invariance(gd: GroupData, table: SpecialTable) -> list:
    """Entries (name, slot) whose generator fails the relative invariance check."""
    bad = []
    for e in table.entries:
        chi = character_of(gd, e.module)
        for slot, p in enumerate(e.generators):
            if not is_relative_invariant(p, gd, chi):
                bad.append((e.name, slot))
    return bad


# ---------------------------------------------------------------- vertex assignment


def assign_vertices(gd: GroupData) -> dict:
    """Special module name -> vertex of the dual graph ("+", "-" or chain index)."""
    gd.require_reduced()
    out = {"W_+": "+", "W_-": "-"}
    for t in range(1, gd.N + 1):
        out[module_name(W(gd.i[t]))] = t
    return out


# ---------------------------------------------------------------- two-generation


@dataclass(frozen=True)
class TwoGenerationReport:
    module: str
    max_degree: int
    passed: bool
    first_failure: tuple | None  # (degree, span rank, module dimension)

    def summary(self) -> str:
        s = f"two-generation {self.module} up to degree {self.max_degree}: {'pass' if self.passed else 'FAIL'}"
        if self.first_failure:
            d, got, want = self.first_failure
            s += f" (degree {d}: span {got}, module {want})"
        return s


def default_two_generation_degree(gd: GroupData, generators) -> int:
    return max(p.degree() for p in generators) + 4 * gd.q


def verify_two_generation(gd: GroupData, module, max_degree: int | None = None,
                          basis="w", generators: tuple | None = None) -> TwoGenerationReport:
    """Check degree by degree that R-multiples of the two generators fill the module.

    ``module`` is a module id or a display name; ``generators`` overrides the
    table entry (used for mutation tests).
    """
    table = special_generators(gd, basis)
    entry = _lookup(table, module)
    gens = generators if generators is not None else entry.generators
    if max_degree is None:
        max_degree = default_two_generation_degree(gd, gens)
    chi = character_of(gd, entry.module)
    trivial = character_of(gd, "trivial")
    degs = [p.degree() for p in gens]
    for d in range(max_degree + 1):
        want = relative_invariant_dim(gd, chi, d)
        if want == 0:
            continue
        space = RowSpace()
        for g, dg in zip(gens, degs):
            if dg > d:
                continue
            for inv in relative_invariant_basis(gd, trivial, d - dg):
                space.add((inv * g).terms)
                if space.rank == want:
                    break
            if space.rank == want:
                break
        if space.rank != want:
            return TwoGenerationReport(entry.name, max_degree, False, (d, space.rank, want))
    return TwoGenerationReport(entry.name, max_degree, True, None)


def _lookup(table: SpecialTable, module) -> SpecialEntry:
    for e in table.entries:
        if e.module == module or e.name == module:
            return e
    raise DomainError(f"no special module {module!r} for D_{{{table.n},{table.q}}}")


# ---------------------------------------------------------------- auxiliary quiver


@dataclass(frozen=True)
class AuxArrow:
    tail: object  # "R" or chain index t
    head: object
    exponents: tuple  # (xy, g2, g3)
    kind: str  # "chain", "symbol", "horn" or "extra"


@dataclass(frozen=True)
class AuxQuiver:
    n: int
    q: int
    basis: Basis
    vertices: tuple  # "R", nu+1, ..., N
    arrows: tuple

    def out_arrows(self, v) -> list:
        return [a for a in self.arrows if a.tail == v]

    def vertex_name(self, v, gd: GroupData) -> str:
        return "R" if v == "R" else module_name(W(gd.i[v]))


def build_aux_quiver(gd: GroupData, basis="w") -> AuxQuiver:
    basis = Basis.parse(basis)
    nu, N = gd.nu, gd.N
    if nu >= N - 1:
        raise UnsupportedCase(
            f"D_{{{gd.n},{gd.q}}} has nu = N - 1 = {nu}; the auxiliary quiver is built only for nu < N - 1"
        )
    i, l, r, c, d = gd.i, gd.l, gd.r, gd.c, gd.d
    first = nu + 1
    arrows = []
    # anticlockwise (xy)-power chain: R -> W_{i_N} -> ... -> W_{i_{nu+1}} -> R
    arrows.append(AuxArrow("R", N, (r[l[N]], 0, 0), "chain"))
    for t in range(N - 1, first - 1, -1):
        arrows.append(AuxArrow(t + 1, t, (i[t] - i[t + 1], 0, 0), "chain"))
    arrows.append(AuxArrow(first, "R", (r[2], 0, 0), "chain"))
    # clockwise symbol maps
    arrows.append(AuxArrow("R", first, (0, 1, 0), "symbol"))
    for t in range(first, N):
        arrows.append(AuxArrow(t, t + 1, (0, c[l[t]], d[l[t]]), "symbol"))
    arrows.append(AuxArrow(N, "R", (0, c[l[N]], d[l[N]]), "symbol"))
    # the second map down from W_{i_{nu+1}}
    arrows.append(AuxArrow(first, "R", (2 * r[3], 1, 0), "horn"))
    # extra maps
    alpha = gd.alpha
    for t in range(2, alpha[first] - 1):
        arrows.append(AuxArrow(first, "R", (r[t + 2], c[t + 1], d[t + 1]), "extra"))
    for s in range(first + 1, N + 1):
        for t in range(1, alpha[s] - 1):
            base = l[s - 1]
            arrows.append(AuxArrow(s, "R", (r[t + base], c[t - 1 + base], d[t - 1 + base]), "extra"))
    vertices = ("R",) + tuple(range(first, N + 1))
    return AuxQuiver(gd.n, gd.q, basis, vertices, tuple(arrows))


def arrow_characters_ok(gd: GroupData, quiver: AuxQuiver) -> list:
    """Arrows whose label does not map the tail module into the head module."""
    def chi(v):
        return character_of(gd, "trivial" if v == "R" else W(gd.i[v]))

    bad = []
    for a in quiver.arrows:
        label = symbol_product(gd, quiver.basis, *a.exponents)
        want = chi(a.head) * chi(a.tail).inverse()
        if not is_relative_invariant(label, gd, want):
            bad.append(a)
    return bad


# ---------------------------------------------------------------- cycle realization


def _add(u, v):
    return (u[0] + v[0], u[1] + v[1], u[2] + v[2])


def _sub(u, v):
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def find_cycle(quiver: AuxQuiver, start, target: tuple):
    """A closed path at ``start`` whose exponent triples sum to ``target``, or None."""
    out = {v: [(k, a) for k, a in enumerate(quiver.arrows) if a.tail == v] for v in quiver.vertices}

    @lru_cache(maxsize=None)
    def search(v, remaining):
        # path from v back to start consuming exactly `remaining`
        if remaining == (0, 0, 0) and v == start:
            return ()
        for k, a in out[v]:
            rest = _sub(remaining, a.exponents)
            if min(rest) < 0:
                continue
            tail = search(a.head, rest)
            if tail is not None:
                return (k,) + tail
        return None

    for k, a in out[start]:
        rest = _sub(target, a.exponents)
        if min(rest) < 0:
            continue
        tail = search(a.head, rest)
        if tail is not None:
            return (k,) + tail
    return None


@dataclass
class CycleReport:
    n: int
    q: int
    basis: Basis
    cycles: dict = field(default_factory=dict)  # (vertex, generator tag) -> tuple of arrow indices
    missing: list = field(default_factory=list)  # (vertex, generator tag)
    anchor_failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.missing and not self.anchor_failures

    def summary(self) -> str:
        s = (f"cycle realization D_{{{self.n},{self.q}}} {self.basis.value}-basis: "
             f"{len(self.cycles)} realized, {len(self.missing)} missing")
        if self.anchor_failures:
            s += f", {len(self.anchor_failures)} polynomial anchor mismatches"
        return s + (" : pass" if self.passed else " : FAIL")


def verify_cycle_realization(gd: GroupData, basis="w", anchors: int = 5, seed: int = 0) -> CycleReport:
    quiver = build_aux_quiver(gd, basis)
    gens = invariant_generators(gd, quiver.basis)
    report = CycleReport(gd.n, gd.q, quiver.basis)
    for v in quiver.vertices:
        for item in gens.items:
            cyc = find_cycle(quiver, v, item.exponents)
            if cyc is None:
                report.missing.append((v, item.tag))
            else:
                report.cycles[(v, item.tag)] = cyc
    # anchor the formal symbol bookkeeping by multiplying genuine polynomials
    rng = random.Random(seed)
    found = sorted(report.cycles.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1])))
    wanted = {it.tag: it.poly for it in gens.items}
    for (v, tag), cyc in rng.sample(found, min(anchors, len(found))):
        prod = BiPoly.const(1)
        for k in cyc:
            prod = prod * symbol_product(gd, quiver.basis, *quiver.arrows[k].exponents)
        if prod != wanted[tag]:
            report.anchor_failures.append((v, tag))
    return report
