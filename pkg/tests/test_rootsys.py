from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylarr.rootsys import (
    RootSystemId,
    admissible_ids,
    build_root_system,
    exponents_via_cartan_eigenvalues,
    exponents_via_dual_partition,
    height_distribution,
    height_profile,
    load_catalog,
    pairing,
    reflect,
    root_core_invariants,
    structural_lemma_checks,
)

# Standard tables, typed in by hand so they do not depend on catalog.txt.
EXPONENTS = {
    "A1": (1,), "A2": (1, 2), "A3": (1, 2, 3), "A8": tuple(range(1, 9)),
    "B2": (1, 3), "B5": (1, 3, 5, 7, 9), "C3": (1, 3, 5), "C8": tuple(range(1, 16, 2)),
    "D4": (1, 3, 3, 5), "D5": (1, 3, 4, 5, 7), "D6": (1, 3, 5, 5, 7, 9), "D8": (1, 3, 5, 7, 7, 9, 11, 13),
    "E6": (1, 4, 5, 7, 8, 11), "E7": (1, 5, 7, 9, 11, 13, 17), "E8": (1, 7, 11, 13, 17, 19, 23, 29),
    "F4": (1, 5, 7, 11), "G2": (1, 5),
}


def n_positive_formula(rid):
    n = rid.rank
    return {
        "A": n * (n + 1) // 2, "B": n * n, "C": n * n, "D": n * (n - 1),
        "E": {6: 36, 7: 63, 8: 120}.get(n), "F": 24, "G": 6,
    }[rid.family]


ALL = admissible_ids()


def test_catalog_covers_admissible_ids():
    assert set(load_catalog()) == set(ALL)
    assert len(ALL) == 8 + 7 + 6 + 5 + 3 + 1 + 1


@pytest.mark.parametrize("name, exps", sorted(EXPONENTS.items()))
def test_frozen_exponents(name, exps):
    rs = build_root_system(name)
    assert tuple(exponents_via_dual_partition(rs)) == exps
    assert tuple(exponents_via_cartan_eigenvalues(rs)[0]) == exps


@pytest.mark.parametrize("rid", ALL, ids=str)
def test_counts_and_coxeter_number(rid):
    rs = build_root_system(rid)
    assert rs.n_positive == n_positive_formula(rid)
    assert 2 * rs.n_positive == rs.rank * rs.coxeter_number
    assert sum(height_distribution(rs)) == rs.n_positive


@pytest.mark.parametrize("rid", ALL, ids=str)
def test_root_core_invariants_pass(rid):
    bad = {k: w for k, (ok, w) in root_core_invariants(build_root_system(rid)).items() if not ok}
    assert not bad


@pytest.mark.parametrize("rid", [r for r in ALL if r.rank >= 3], ids=str)
def test_structural_lemmas_pass(rid):
    bad = {k: w for k, (ok, w) in structural_lemma_checks(build_root_system(rid)).items() if not ok}
    assert not bad


def test_a1():
    rs = build_root_system("A1")
    assert [r.coeffs for r in rs.positive_roots] == [(1,)]
    assert rs.coxeter_number == 2 and rs.exponents == (1,)


def test_c3_table():
    rs = build_root_system("C3")
    assert sorted(r.height for r in rs.positive_roots) == [1, 1, 1, 2, 2, 3, 3, 4, 5]
    assert rs.highest_root.coeffs == (2, 2, 1)
    assert height_distribution(rs) == [3, 2, 2, 1, 1]


def test_e8_sizes():
    rs = build_root_system("E8")
    assert rs.n_positive == 120 and rs.coxeter_number == 30
    assert len(rs.theta(23)) == 2


def test_pairings():
    a2 = build_root_system("A2")
    a1, a2_ = a2.simple_roots
    assert pairing(a2, a1, a1) == 2
    assert pairing(a2, a1, a2_) == -1
    c3 = build_root_system("C3")
    assert pairing(c3, c3.highest_root, c3.simple_roots[0]) == 2


def test_reflections():
    a2 = build_root_system("A2")
    a1, a2_ = a2.simple_roots
    assert reflect(a2, a1, a1) == -a1
    assert reflect(a2, a1, a2_).coeffs == (1, 1)
    d4 = build_root_system("D4")
    assert reflect(d4, d4.highest_root, d4.highest_root) == -d4.highest_root


@settings(max_examples=200)
@given(st.sampled_from(ALL), st.data())
def test_reflection_is_an_isometric_involution(rid, data):
    rs = build_root_system(rid)
    a = data.draw(st.sampled_from(rs.positive_roots))
    b = data.draw(st.sampled_from(rs.positive_roots))
    sb = reflect(rs, a, b)
    assert reflect(rs, a, sb) == b
    assert sb.normsq == b.normsq
    c = data.draw(st.sampled_from(rs.positive_roots))
    # <s_a b, s_a c> = <b, c>
    assert pairing(rs, sb, reflect(rs, a, c)) == pairing(rs, b, c)


def test_cartan_residuals_are_tiny():
    for rid in ALL:
        _, res = exponents_via_cartan_eigenvalues(build_root_system(rid))
        assert max(res) < 1e-9


@pytest.mark.parametrize("text", ["X5", "E9", "C2", "D", "A0", "F5"])
def test_bad_type_strings(text):
    with pytest.raises(ValueError):
        RootSystemId.parse(text)


def test_d3_aliases_a3():
    assert RootSystemId.parse("d3").canonical() == RootSystemId("A", 3)
    assert RootSystemId("D", 3) not in ALL


def test_case_tags():
    assert height_profile(build_root_system("G2")).case_tag == "CASE1"
    g2 = build_root_system("G2")
    assert g2.exponents[1] == g2.c_max + 2
    for rid in ALL:
        if rid.rank >= 3:
            rs = build_root_system(rid)
            assert height_profile(rs).case_tag == "CASE2"
            assert rs.exponents[1] == rs.c_max + 1


def test_e8_top_chain():
    rs = build_root_system("E8")
    prof = height_profile(rs)
    assert prof.m == rs.exponents[1] - 1 == 6
    # extended coefficient of -theta is 1, then the theta coefficients along the chain
    coeffs = [1] + [rs.highest_root.coeffs[r.coeffs.index(1)] for r in prof.lambda_chain[1:]]
    assert coeffs == [1, 2, 3, 4, 5, 6]


def test_a3_and_b3_top_levels():
    a3 = build_root_system("A3")
    assert a3.exponents[-2] == 2 and len(a3.theta(2)) == 2
    b3 = build_root_system("B3")
    assert any(b3.is_long(r) for r in b3.theta(3))


def test_gram_is_exact():
    rs = build_root_system("G2")
    assert all(isinstance(x, (int, Fraction)) for row in rs.gram for x in row)
