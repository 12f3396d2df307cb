import pytest
from hypothesis import given, settings, strategies as st

from recond.contfrac import DomainError
from recond.groupdata import UnsupportedCase, W, build_group_data, valid_pairs
from recond.invgen import symbol_product
from recond.polyexact import BiPoly
from recond.specials import (
    arrow_characters_ok,
    assign_vertices,
    build_aux_quiver,
    check_table_invariance,
    find_cycle,
    special_generators,
    verify_cycle_realization,
    verify_two_generation,
)

PAIRS_40 = list(valid_pairs(40))
REDUCED_20 = [p for p in valid_pairs(20) if build_group_data(*p).nu == 0]


@settings(max_examples=40)
@given(st.sampled_from(PAIRS_40), st.sampled_from(["w", "v"]))
def test_table_generators_carry_their_module_character(pair, basis):
    gd = build_group_data(*pair)
    table = special_generators(gd, basis)
    assert len(table) == 2 + gd.N - gd.nu
    assert check_table_invariance(gd, table) == []


def test_table_for_56_15():
    gd = build_group_data(56, 15)
    table = special_generators(gd)
    assert [e.name for e in table.entries] == ["W_+", "W_-", "W_15", "W_4", "W_1"]
    w1 = table.entry(W(1))
    assert w1.generators[0] == BiPoly.xy_power(1)
    assert w1.exponents[1] == (0, 7, 4)
    plus, minus = BiPoly.binomial(15, 1), BiPoly.binomial(15, -1)
    assert table.entry("W_plus").generators == (plus, minus.shift((41, 41)))


def test_vertex_assignment():
    gd = build_group_data(56, 15)
    assert assign_vertices(gd) == {"W_+": "+", "W_-": "-", "W_15": 1, "W_4": 2, "W_1": 3}
    with pytest.raises(UnsupportedCase):
        assign_vertices(build_group_data(7, 4))


@pytest.mark.parametrize("pair", REDUCED_20[:12])
def test_two_generation(pair):
    gd = build_group_data(*pair)
    for entry in special_generators(gd).entries:
        assert verify_two_generation(gd, entry.module).passed, entry.name


def test_two_generation_detects_a_wrong_generator():
    gd = build_group_data(18, 5)
    entry = special_generators(gd).entry("W_plus")
    first, second = entry.generators
    report = verify_two_generation(gd, "W_+", generators=(first, second * BiPoly.xy_power(18)))
    assert not report.passed
    assert "FAIL" in report.summary()


def test_unknown_module_is_a_domain_error():
    with pytest.raises(DomainError):
        verify_two_generation(build_group_data(18, 5), "W_3")


@pytest.mark.parametrize("n, q", [(56, 15), (18, 5), (52, 11), (19, 7), (33, 10)])
def test_cycle_realization(n, q):
    gd = build_group_data(n, q)
    report = verify_cycle_realization(gd, anchors=8)
    assert report.passed, report.summary()
    assert len(report.cycles) == len(build_aux_quiver(gd).vertices) * gd.e


@pytest.mark.parametrize("n, q", [(56, 15), (18, 5), (33, 10)])
def test_aux_arrows_respect_characters(n, q):
    gd = build_group_data(n, q)
    assert arrow_characters_ok(gd, build_aux_quiver(gd)) == []


def test_cycle_search_respects_exponents():
    gd = build_group_data(56, 15)
    quiver = build_aux_quiver(gd)
    assert find_cycle(quiver, "R", (1, 0, 0)) is None
    cyc = find_cycle(quiver, 2, (11, 1, 1))
    prod = BiPoly.const(1)
    for k in cyc:
        prod = prod * symbol_product(gd, "w", *quiver.arrows[k].exponents)
    assert prod == symbol_product(gd, "w", 11, 1, 1)


def test_ratio_family_near_the_boundary_is_unsupported():
    # q = n - 1 has nu = N - 1
    gd = build_group_data(9, 8)
    assert gd.nu == gd.N - 1
    with pytest.raises(UnsupportedCase):
        build_aux_quiver(gd)
    assert check_table_invariance(gd, special_generators(gd)) == []
