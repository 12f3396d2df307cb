import pytest
from hypothesis import given, settings, strategies as st

from recond.groupdata import build_group_data, character_of, valid_pairs
from recond.invgen import (
    Basis,
    GeneratorList,
    default_max_degree,
    invariant_generators,
    subalgebra_hilbert,
    symbol_polys,
    verify_generation,
)
from recond.polyexact import BiPoly, is_relative_invariant

PAIRS_60 = list(valid_pairs(60))


def test_generators_of_the_56_15_example():
    gd = build_group_data(56, 15)
    gens = invariant_generators(gd, "w")
    assert [it.exponents for it in gens.items] == [
        (82, 0, 0), (67, 1, 0), (26, 0, 1), (11, 1, 1), (7, 3, 2),
        (3, 5, 3), (2, 12, 7), (1, 19, 11), (0, 26, 15),
    ]
    plus, minus = BiPoly.binomial(15, 1), BiPoly.binomial(15, -1)
    w2, w3 = symbol_polys(gd, "w")
    assert w2 == plus * plus
    assert w3 == plus * minus
    assert gens.items[3].poly == BiPoly.xy_power(11) * w2 * w3


def test_sign_follows_parity_of_second_dual_coefficient():
    # 7/4 has dual expansion starting [3, ...], so a_2 is odd and the sign flips
    gd = build_group_data(7, 4)
    assert gd.a[2] % 2 == 1
    v2, v3 = symbol_polys(gd, "v")
    assert v2 == BiPoly.binomial(8, -1) and v3 == BiPoly.binomial(8, 1)
    w2, _ = symbol_polys(gd, "w")
    assert w2 == BiPoly.binomial(4, 1) * BiPoly.binomial(4, -1)


@settings(max_examples=40)
@given(st.sampled_from(PAIRS_60), st.sampled_from(["w", "v"]))
def test_generators_are_invariant_with_expected_degrees(pair, basis):
    gd = build_group_data(*pair)
    trivial = character_of(gd, "trivial")
    gens = invariant_generators(gd, basis)
    assert len(gens) == gd.e
    first, *rest = gens.items
    assert first.tag == "w1_power" and first.degree == 4 * gd.m
    for it in rest:
        t = it.tag
        assert it.degree == 2 * gd.r[t] + 2 * gd.q * (gd.c[t] + gd.d[t])
    for p in gens.polys():
        assert is_relative_invariant(p, gd, trivial)


@pytest.mark.parametrize("n, q", [(5, 2), (7, 3), (7, 4), (8, 3), (9, 2), (11, 4)])
def test_both_bases_generate_the_same_hilbert_function(n, q):
    gd = build_group_data(n, q)
    top = default_max_degree(gd)
    assert subalgebra_hilbert(invariant_generators(gd, "w"), top) == subalgebra_hilbert(
        invariant_generators(gd, "v"), top
    )


@pytest.mark.parametrize("n, q", [(5, 2), (7, 3), (10, 3)])
def test_generation_passes_and_dropping_a_generator_fails(n, q):
    gd = build_group_data(n, q)
    full = invariant_generators(gd, "w")
    assert verify_generation(gd, "w").passed
    for k in range(len(full)):
        fewer = GeneratorList(full.basis, full.items[:k] + full.items[k + 1:])
        report = verify_generation(gd, "w", gens=fewer)
        assert not report.passed
        assert report.first_discrepancy[0] == full.items[k].degree


def test_low_max_degree_is_flagged():
    gd = build_group_data(5, 2)
    report = verify_generation(gd, "v", max_degree=6)
    assert report.passed and report.below_generator_degree
    assert "below the largest generator degree" in report.summary()


def test_default_degree_is_capped():
    assert default_max_degree(build_group_data(5, 2)) == 24
    assert default_max_degree(build_group_data(56, 15)) == 200


def test_basis_parsing():
    assert Basis.parse("V") is Basis.V
    with pytest.raises(ValueError):
        Basis.parse("u")
    with pytest.raises(ValueError):
        subalgebra_hilbert(invariant_generators(build_group_data(5, 2)), -1)
