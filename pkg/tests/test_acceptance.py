"""The nine acceptance criteria, each at its stated tolerance and runtime budget.

Every test prints one line ``criterion K: PASS|FAIL ...`` to the terminal
(pytest output capture is bypassed for it).
"""

import time
from fractions import Fraction
from itertools import product

import pytest

from goldens import golden_18_5, golden_52_11, golden_diffs, normalised
from oracles import character_values, dense_relative_invariant_dim, group_elements
from recond.contfrac import duality_failures
from recond.groupdata import Character, build_group_data, series_failures, valid_pairs
from recond.invgen import GeneratorList, invariant_generators, verify_generation
from recond.moduli import (
    ONE,
    VAR,
    charts,
    glue_maps,
    normalize_equation,
    smoothness_check,
    verify_chart_on_ratios,
    verify_glues,
)
from recond.polyexact import BiPoly, relative_invariant_dim
from recond.reconalg import ext2_expected, label_arrows, lambda_variant, relation_counts, relations, verify_relations
from recond.specials import special_generators, verify_cycle_realization, verify_two_generation


@pytest.fixture
def criterion(capsys):
    """Yields a recorder; the test fills in failures and the fixture prints the verdict line."""

    class Record:
        def __init__(self):
            self.failures = []
            self.start = time.perf_counter()
            self.number = None
            self.budget = None

        def check(self, ok, label):
            if not ok:
                self.failures.append(label)

    rec = Record()
    yield rec
    elapsed = time.perf_counter() - rec.start
    over = elapsed > rec.budget
    verdict = "PASS" if not rec.failures and not over else "FAIL"
    detail = f"{len(rec.failures)} failures" + (f", first: {rec.failures[0]}" if rec.failures else "")
    with capsys.disabled():
        print(f"\ncriterion {rec.number}: {verdict} ({detail}; {elapsed:.1f} s of {rec.budget} s budget)")


def finish(rec):
    elapsed = time.perf_counter() - rec.start
    assert not rec.failures, rec.failures[:5]
    assert elapsed < rec.budget, f"{elapsed:.1f} s over the {rec.budget} s budget"


a, b, c = VAR


def unit_form(E, F, eta, theta):
    return normalize_equation(a * (ONE - (b ** E * c ** F).scale(4)) - b ** eta * c ** theta)


TOP_CHART = normalize_equation(a * (c - 4) - b * c)
PLUS_CHART = normalize_equation(b * (a * a * c + 4) - a * c)
MINUS_CHART = normalize_equation(b * (a * a * c - 4) - a * c)


def sym(q, xy, plus, minus):
    return BiPoly.xy_power(xy) * BiPoly.binomial(q, 1) ** plus * BiPoly.binomial(q, -1) ** minus


def test_criterion_1_golden_56_15(criterion):
    criterion.number, criterion.budget = 1, 5
    gd = build_group_data(56, 15)
    criterion.check(list(gd.r) == [67, 26, 11, 7, 3, 2, 1, 0], "r series")
    criterion.check(list(gd.c) == [1, 0, 1, 3, 5, 12, 19, 26], "c series")
    criterion.check(list(gd.d) == [0, 1, 1, 2, 3, 7, 11, 15], "d series")
    # invariants as (xy, w2, w3) exponents with w2 = (+)^2, w3 = (+)(-)
    expected_invariants = [(82, 0, 0), (67, 1, 0), (26, 0, 1), (11, 1, 1), (7, 3, 2), (3, 5, 3), (2, 12, 7),
                        (1, 19, 11), (0, 26, 15)]
    got = [it.poly for it in invariant_generators(gd, "w").items]
    criterion.check(got == [sym(15, xy, 2 * w2 + w3, w3) for xy, w2, w3 in expected_invariants], "invariants")
    side_table = {
        "k2": (11, 1, 1), "k3": (7, 3, 1), "k4": (3, 8, 2), "k5": (2, 13, 3), "k6": (1, 31, 7),
        "c3_0": (0, 49, 11), "c1_2": (0, 3, 1), "c2_3": (0, 13, 3), "a2_1": (11, 0, 0), "a3_2": (3, 0, 0),
        "a0_3": (1, 0, 0), "c0_+": (0, 1, 0), "c+_1": (0, 1, 0), "c0_-": (0, 0, 1), "c-_1": (0, 0, 1),
        "a1_+": (26, 0, 1), "a+_0": (26, 0, 1), "a1_-": (26, 1, 0), "a-_0": (26, 1, 0),
    }
    labels = label_arrows(gd, "moduli").labels
    criterion.check(labels == {k: sym(15, *v) for k, v in side_table.items()}, "label side table")
    got = {ch.id: ch for ch in charts(gd)}
    equations = {"U0": unit_form(4, 15, 7, 26), "U1": unit_form(1, 4, 2, 7), "U2": unit_form(0, 1, 1, 2),
                 "U3": TOP_CHART, "U+": PLUS_CHART, "U-": MINUS_CHART}
    for cid, eq in equations.items():
        criterion.check(got[cid].equation == eq, f"equation {cid}")
    ratios = {
        "U0": [(26, 3, -1), (0, 67, 15), (1, -18, -4)],
        "U1": [(26, 3, -1), (-1, 18, 4), (4, -5, -1)],
        "U2": [(26, 3, -1), (-4, 5, 1), (15, -2, 0)],
        "U3": [(41, 1, -1), (41, -1, 1), (-15, 2, 0)],
        "U+": [(-41, -1, 1), (41, -1, 1), (67, 2, 0)],
        "U-": [(-41, 1, -1), (41, 1, -1), (67, 0, 2)],
    }
    for cid, triple in ratios.items():
        criterion.check([r.as_tuple() for r in got[cid].ratios] == triple, f"ratios {cid}")
    criterion.check(got["U3"].alt_coordinate.as_tuple() == (-15, 0, 2), "alternative coordinate")
    glues = [(g.source, g.target, g.transform_str()) for g in glue_maps(gd)]
    criterion.check(glues == [
        ("U0", "U1", "(a, c^-1, b*c^4)"), ("U1", "U2", "(a, c^-1, b*c^4)"), ("U2", "U3", "(a*c, b*c^3, c^-1)"),
        ("U3", "U+", "(a^-1, b, a^2*d)"), ("U3", "U-", "(b^-1, a, b^2*c)"),
    ], "glues")
    finish(criterion)


def test_criterion_2_golden_relations(criterion):
    criterion.number, criterion.budget = 2, 5
    for n, q, pres, golden, count in [(18, 5, "symmetric", golden_18_5, 13), (52, 11, "moduli", golden_52_11, 19)]:
        gd = build_group_data(n, q)
        rels = relations(gd, pres)
        criterion.check(len(rels) == count, f"D_{n},{q} has {len(rels)} relations")
        criterion.check(normalised(r.difference() for r in rels) == golden_diffs(golden()), f"D_{n},{q} list")
        criterion.check(relation_counts(gd, rels) == ext2_expected(gd), f"D_{n},{q} Ext2 counts")
    finish(criterion)


def test_criterion_3_base_family(criterion):
    criterion.number, criterion.budget = 3, 10
    for s in range(2, 7):
        gd = build_group_data(2 * s + 1, s)
        even_plus, even_minus = BiPoly.binomial(2 * s, 1), BiPoly.binomial(2 * s, -1)
        want = [BiPoly.xy_power(2 * (s + 1)), BiPoly.xy_power(s + 2) * even_plus, BiPoly.xy_power(1) * even_minus,
                even_plus * even_minus ** s]
        criterion.check(invariant_generators(gd, "v").polys() == want, f"s={s} invariants")
        horn = {"c0_+": (0, 1, 0), "c+_1": (0, 1, 0), "c0_-": (0, 0, 1), "c-_1": (0, 0, 1),
                "a1_+": (1, 0, 1), "a+_0": (1, 0, 1), "a1_-": (1, 1, 0), "a-_0": (1, 1, 0),
                "a0_" + str(s): (1, 0, 0), f"c{s}_0": (0, 1, 1)}
        horn.update({f"c{t}_{t + 1}": (0, 1, 1) for t in range(1, s)})
        horn.update({f"a{t + 1}_{t}": (1, 0, 0) for t in range(1, s)})
        labels = label_arrows(gd, "moduli").labels
        criterion.check(labels == {k: sym(s, *v) for k, v in horn.items()}, f"s={s} labels")
        got = {ch.id: ch for ch in charts(gd)}
        for t in range(s):
            criterion.check(got[f"U{t}"].equation == unit_form(s - t - 1, s - t, 1, 1), f"s={s} U{t}")
        criterion.check(got[f"U{s}"].equation == TOP_CHART, f"s={s} U{s}")
        criterion.check(got["U+"].equation == PLUS_CHART and got["U-"].equation == MINUS_CHART, f"s={s} horns")
        transforms = [g.transform_str() for g in glue_maps(gd)]
        criterion.check(transforms[: s - 1] == ["(a, c^-1, b*c^2)"] * (s - 1), f"s={s} chain glues")
        criterion.check(transforms[s - 1:] == ["(a*c, b*c^2, c^-1)", "(a^-1, b, a^2*d)", "(b^-1, a, b^2*c)"],
                        f"s={s} end glues")
    finish(criterion)


def test_criterion_4_combinatorial_sweep(criterion):
    criterion.number, criterion.budget = 4, 60
    count = 0
    for n, q in valid_pairs(200):
        count += 1
        gd = build_group_data(n, q)
        for label in series_failures(gd) + duality_failures(n, q):
            criterion.check(False, f"D_{n},{q}: {label}")
    criterion.check(count == sum(1 for n in range(3, 201) for q in range(2, n) if Fraction(n, q).denominator == q),
                    "pair count")
    finish(criterion)


REDUCED_40 = [p for p in valid_pairs(40) if build_group_data(*p).nu == 0]


def test_criterion_5_relation_sweep(criterion):
    criterion.number, criterion.budget = 5, 300
    for n, q in REDUCED_40:
        gd = build_group_data(n, q)
        for pres in ("moduli", "symmetric"):
            report = verify_relations(gd, pres)
            criterion.check(report.passed, report.summary())
            if n <= 25:
                for lam in (1, -4, 8):
                    _, report = lambda_variant(gd, pres, lam)
                    criterion.check(report.passed, report.summary())
    finish(criterion)


def test_criterion_6_chart_sweep(criterion):
    criterion.number, criterion.budget = 6, 300
    for n, q in REDUCED_40:
        gd = build_group_data(n, q)
        chart_list = charts(gd)
        criterion.check(len(chart_list) == gd.N + 3, f"D_{n},{q} chart count")
        for ch in chart_list:
            criterion.check(verify_chart_on_ratios(gd, ch), f"D_{n},{q} {ch.id} on ratios")
            criterion.check(smoothness_check(ch).smooth, f"D_{n},{q} {ch.id} smooth")
        for glue in verify_glues(gd, chart_list):
            criterion.check(glue.passed, f"D_{n},{q} glue {glue.source}->{glue.target}")
    finish(criterion)


def test_criterion_7_generation(criterion):
    criterion.number, criterion.budget = 7, 600
    for n, q in valid_pairs(12):
        gd = build_group_data(n, q)
        for basis in ("w", "v"):
            report = verify_generation(gd, basis)
            criterion.check(report.passed and report.max_degree == min(gd.order, 200), report.summary())
            full = invariant_generators(gd, basis)
            for k in range(len(full)):
                fewer = GeneratorList(full.basis, full.items[:k] + full.items[k + 1:])
                criterion.check(not verify_generation(gd, basis, gens=fewer).passed,
                                f"D_{n},{q} {basis}: dropping generator {k} still passes")
    finish(criterion)


def test_criterion_8_specials(criterion):
    criterion.number, criterion.budget = 8, 600
    for n, q in valid_pairs(20):
        gd = build_group_data(n, q)
        if gd.nu:
            continue
        for entry in special_generators(gd).entries:
            report = verify_two_generation(gd, entry.module)
            criterion.check(report.passed, f"D_{n},{q} {report.summary()}")
    for n, q in valid_pairs(40):
        gd = build_group_data(n, q)
        if gd.nu >= gd.N - 1:
            continue
        for basis in ("w", "v"):
            report = verify_cycle_realization(gd, basis)
            criterion.check(report.passed, report.summary())
    finish(criterion)


def all_characters(n, q):
    """Every one-dimensional character, found by trying all generator images of the right orders."""
    gd = build_group_data(n, q)
    _, _, gens, _ = group_elements(n, q)
    orders = {"psi": 2 * q, "tau": 4, "phi": 2 * (n - q), "tauphi": 4 * (n - q)}
    out = []
    for combo in product(*[range(orders[g]) for g in gd.generators]):
        images = {g: Fraction(k, orders[g]) for g, k in zip(gd.generators, combo)}
        try:
            character_values(n, q, images)
        except AssertionError:
            continue
        out.append((images, Character(n, q, tuple(images[g] for g in gd.generators))))
    return out


def test_criterion_9_oracle_agreement(criterion):
    criterion.number, criterion.budget = 9, 600
    groups = [(n, q) for n, q in valid_pairs(17) if 4 * q * (n - q) <= 60]
    cases = 0
    for n, q in groups:
        for images, chi in all_characters(n, q):
            gd = build_group_data(n, q)
            for d in range(31):
                cases += 1
                got = relative_invariant_dim(gd, chi, d)
                want = dense_relative_invariant_dim(n, q, images, d)
                criterion.check(got == want, f"D_{n},{q} {chi} degree {d}: {got} vs {want}")
    criterion.check(cases > 0, "no cases")
    finish(criterion)
