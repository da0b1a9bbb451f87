from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from euclid_models import restriction_census
from weylarr.arrangement import (
    N0,
    appendix_bijection,
    card_theorem_check,
    combinatorial_deletion_check,
    decomposition_identities,
    factorization_check,
    hyperplane_restriction_size,
    local_global_check,
    neighborhood_decomposition,
    restriction_char_poly,
    restriction_size,
    three_sums_check,
    top_restriction_check,
)
from weylarr.lattice import CharPoly
from weylarr.rootsys import admissible_ids, build_root_system
from weylarr.subsystems import a12_pairs, classify_pair, is_ro_indices, pair_orbits, theta_perp_decomposition

RANK3_PLUS = [r for r in admissible_ids() if r.rank >= 3]


def rep(name, ro=None):
    rs = build_root_system(name)
    orbit = next(o for o in pair_orbits(rs) if ro is None or o.is_ro == ro)
    return rs, orbit.representative


@pytest.mark.parametrize("name", ["A3", "A5", "B3", "B4", "C4", "D4", "D5", "D6", "F4", "E6"])
def test_restriction_sizes_match_euclidean_model(name):
    rs = build_root_system(name)
    ours = Counter()
    for i, j in a12_pairs(rs):
        x = restriction_size(rs, [i, j])
        d = sorted([hyperplane_restriction_size(rs, i) - x, hyperplane_restriction_size(rs, j) - x])
        ours[(d[0], d[1], x, is_ro_indices(rs, i, j))] += 1
    assert ours == restriction_census(rs.id.family, rs.rank)


@pytest.mark.parametrize(
    "name, ro, difference",
    [("D4", True, 3), ("E8", False, 23), ("B3", None, 3), ("F4", False, 7), ("A3", True, 2), ("D5", True, 4), ("D5", False, 5)],
)
def test_card_examples(name, ro, difference):
    rs, (i, j) = rep(name, ro)
    res = card_theorem_check(rs, i, j)
    assert res.passed
    assert res.witness["|A^H1|-|A^X|"] == res.witness["|A^H2|-|A^X|"] == difference


def test_a3_restriction_size():
    rs, (i, j) = rep("A3")
    assert rs.n_positive == 6
    assert hyperplane_restriction_size(rs, i) == 3
    assert restriction_size(rs, [i, j]) == 1


@pytest.mark.parametrize("rid", [r for r in admissible_ids() if r.rank >= 2], ids=str)
def test_every_hyperplane_restriction_drops_m_l(rid):
    assert top_restriction_check(build_root_system(rid)).passed


@pytest.mark.parametrize("name", ["A3", "B3", "C3"])
def test_rank3_decomposition_collapses(name):
    rs, (i, j) = rep(name)
    nd = neighborhood_decomposition(rs, i, j)
    assert nd.counts[N0] == 1 and nd.n0[0].n_positive == rs.n_positive
    assert nd.k0 == rs.exponents[1] - 1


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_d_ro_pair_has_no_k1(n):
    rs, (i, j) = rep(f"D{n}", True)
    nd = neighborhood_decomposition(rs, i, j)
    assert nd.k1 == nd.k2 == 0


@pytest.mark.parametrize(
    "name, uniform",
    [("B4", True), ("B5", True), ("D5", True), ("E6", True), ("E7", True), ("E8", True), ("C5", False), ("F4", False)],
)
def test_non_ro_theta_pair_k_formula(name, uniform):
    # K_theta(lambda) = m_(l-1) - h/2 always; it equals h(Omega)/2 - 1 when
    # {theta, beta} is A1^2 for every beta in Omega.
    rs = build_root_system(name)
    comps, hs = theta_perp_decomposition(rs)
    t = rs.positive_index(rs.highest_root)
    big = [(o, h) for o, h in zip(comps, hs) if o.rank >= 2]
    assert len(big) == 1
    omega, h_omega = big[0]
    flags = [classify_pair(rs, t, lam).is_a12 for lam in omega.positive]
    assert all(flags) == uniform
    for lam, a12 in zip(omega.positive, flags):
        if not a12:
            continue
        nd = neighborhood_decomposition(rs, t, lam)
        assert nd.k1 == nd.k2 == rs.exponents[-2] - Fraction(rs.coxeter_number, 2)
        if uniform:
            assert nd.k1 == Fraction(h_omega, 2) - 1


def test_b4_non_ro_restriction_char_poly():
    rs, (i, j) = rep("B4", False)
    assert restriction_char_poly(rs, [i, j]) == CharPoly.from_roots([1, 3])


@pytest.mark.parametrize("name", ["A3", "A4", "B3", "B4", "C4", "D4", "D5", "F4", "A6", "E6"])
def test_factorization_on_representatives(name):
    rs = build_root_system(name)
    for o in pair_orbits(rs):
        assert factorization_check(rs, *o.representative).passed


def test_b4_combinatorial_deletion_all_pairs():
    rs = build_root_system("B4")
    for i, j in a12_pairs(rs):
        assert combinatorial_deletion_check(rs, i, j).passed, (i, j)


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "D5", "E6"])
def test_appendix_bijection(name):
    rs = build_root_system(name)
    g = [rs.positive_index(r) for r in rs.theta(rs.exponents[-2])]
    if len(g) < 2 or not classify_pair(rs, g[0], g[1]).is_a12:
        pytest.skip("no A1^2 pair at height m_(l-1)")
    res = appendix_bijection(rs, g[0], g[1])
    assert res.passed
    assert res.witness["sum(m2(Psi)-1)"] == rs.exponents[1] - 1


def test_appendix_values():
    # A3: one piece, both sides 1. E6: both sides 3. D5: both sides 2.
    for name, value in [("A3", 1), ("E6", 3), ("D5", 2)]:
        rs = build_root_system(name)
        g = [rs.positive_index(r) for r in rs.theta(rs.exponents[-2])]
        assert appendix_bijection(rs, g[0], g[1]).witness["sum(m2(Psi)-1)"] == value


def test_non_a12_pair_rejected():
    rs = build_root_system("B3")
    with pytest.raises(ValueError):
        neighborhood_decomposition(rs, 0, 1)


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(RANK3_PLUS), st.data())
def test_pair_identities_hold(rid, data):
    rs = build_root_system(rid)
    i, j = data.draw(st.sampled_from(a12_pairs(rs)))
    nd = neighborhood_decomposition(rs, i, j)
    assert card_theorem_check(rs, i, j, nd=nd).passed
    assert three_sums_check(rs, nd).passed
    assert all(r.passed for r in decomposition_identities(rs, nd).values())
    assert local_global_check(rs, nd).passed
