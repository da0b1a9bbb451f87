import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylarr.derivations import (
    Derivation,
    ResidualError,
    bareiss_det,
    classical_model,
    coefficient_matrix,
    d_family_example_checks,
    d_family_forms,
    defining_polynomial,
    derived_basis_check,
    flat_parametrization,
    hyperplane_restriction_check,
    is_in_D,
    model_basis_check,
    project_forms,
    restrict_derivation,
    restrict_on,
    saito_check,
    verify_basis_restriction_theorem,
)
from weylarr.poly import Poly
from weylarr.rootsys import build_root_system
from weylarr.subsystems import pair_orbits


def laplace(m):
    """Cofactor expansion along the first row."""
    if len(m) == 1:
        return m[0][0]
    n = m[0][0].n
    total = Poly(n)
    for c in range(len(m)):
        minor = [row[:c] + row[c + 1:] for row in m[1:]]
        term = m[0][c] * laplace(minor)
        total = total + term if c % 2 == 0 else total - term
    return total


def d4_basis():
    return classical_model("D4").basis


@st.composite
def poly_matrix(draw, size=3, n=2):
    entry = st.lists(st.tuples(st.lists(st.integers(0, 2), min_size=n, max_size=n), st.integers(-3, 3)), max_size=3)
    return [[Poly.from_exps(n, draw(entry)) for _ in range(size)] for _ in range(size)]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda k: poly_matrix(size=k)))
def test_bareiss_matches_laplace(m):
    assert bareiss_det(m) == laplace(m)


def test_euler_is_in_every_D():
    for name in ("B3", "D4", "A3"):
        model = classical_model(name)
        assert is_in_D(Derivation.euler(model.n), model.forms)


def test_tau2_in_D_of_D4():
    assert is_in_D(Derivation.power(4, 3), d_family_forms(4))


def test_cubic_field_on_b2():
    phi = Derivation.power(2, 3)
    assert is_in_D(phi, [(1, 0), (0, 1), (1, -1), (1, 1)])
    assert not is_in_D(phi, [(1, 0), (0, 1), (1, -1), (1, 2)])


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_boolean_saito(n):
    basis = [Derivation([Poly.var(n, i) if i == k else Poly(n) for i in range(n)]) for k in range(n)]
    forms = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    res = saito_check(basis, forms)
    assert res.passed and res.det == defining_polynomial(forms)


def test_d4_basis_passes():
    res = saito_check(d4_basis(), d_family_forms(4))
    assert res.passed
    assert sorted(res.degrees) == [1, 3, 3, 5] and sum(res.degrees) == 12 == res.n_forms


def test_d4_power_sums_fail():
    basis = [Derivation.power(4, p) for p in (1, 3, 5, 7)]
    res = saito_check(basis, d_family_forms(4))
    assert not res.passed
    assert sum(res.degrees) == 16 != res.n_forms
    assert not res.degree_count_ok


def test_dependent_candidates():
    res = saito_check([Derivation.euler(2), Derivation.euler(2)], [(1, 0), (0, 1)])
    assert not res.passed and res.det.is_zero()


@pytest.mark.parametrize(
    "name, degrees",
    [("A3", [1, 2, 3]), ("B2", [1, 3]), ("B3", [1, 3, 5]), ("C3", [1, 3, 5]), ("D3", [1, 2, 3]), ("D4", [1, 3, 3, 5]),
     ("D5", [1, 3, 4, 5, 7]), ("A4", [1, 2, 3, 4])],
)
def test_classical_bases(name, degrees):
    model = classical_model(name)
    res = model_basis_check(model)
    assert res.passed
    assert sorted(res.degrees) == degrees
    assert sum(res.degrees) == len(model.forms)


def test_euler_restricts_to_euler():
    for forms, n in [([(1, 1, 0, 0), (1, -1, 0, 0)], 4), ([(1, 2, 3)], 3)]:
        e_x, P = restrict_derivation(Derivation.euler(n), forms)
        assert e_x == Derivation.euler(len(P[0]))


def test_d4_eta_and_tau1_on_ro_subspace():
    forms = [(1, 1, 0, 0), (1, -1, 0, 0)]
    eta = next(phi for phi in d4_basis() if phi.name == "eta")
    eta_x, P = restrict_derivation(eta, forms)
    assert eta_x.is_zero()
    tau1_x = restrict_on(Derivation.power(4, 1), P)
    assert tau1_x == Derivation.euler(2)


def test_restriction_residual_detected():
    with pytest.raises(ResidualError):
        restrict_derivation(Derivation([Poly.const(2, 1), Poly(2)]), [(1, 0)])


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([0, 1, 2, 3]), st.sampled_from([0, 1, 2, 3]),
       st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_restriction_is_semilinear(a, b, lin):
    basis = d4_basis()
    P = flat_parametrization([(1, 1, 0, 0), (1, -1, 0, 0)], 4)
    f = Poly.linear(lin) + 1
    lhs = restrict_on(basis[a].scale(f) + basis[b], P)
    f_x = f.subs_linear([Poly.linear(row) if any(row) else Poly(2) for row in P])
    rhs = restrict_on(basis[a], P).scale(f_x) + restrict_on(basis[b], P)
    assert lhs == rhs


def _rep_coeffs(name, ro):
    rs = build_root_system(name)
    o = next(o for o in pair_orbits(rs) if o.is_ro == ro)
    i, j = o.representative
    return rs.positive_roots[i].coeffs, rs.positive_roots[j].coeffs


@pytest.mark.parametrize(
    "name, ro, degrees",
    [("D4", True, [1, 3]), ("B4", False, [1, 3]), ("D5", False, [1, 3, 4]), ("D5", True, [1, 3, 5]), ("C4", False, [1, 3]),
     ("A4", False, [1, 2]), ("A3", True, [1])],
)
def test_basis_restriction_theorem(name, ro, degrees):
    b1, b2 = _rep_coeffs(name, ro)
    res = verify_basis_restriction_theorem(name, b1, b2, ro)
    assert res.passed, res.reason
    assert sorted(res.degrees) == degrees == res.expected_degrees


def test_d4_triality_images():
    # every D4 orbit is RO; eta^X vanishes only on the orbit with equal Euclidean support
    rs = build_root_system("D4")
    flags = []
    for o in pair_orbits(rs):
        i, j = o.representative
        res = verify_basis_restriction_theorem("D4", rs.positive_roots[i].coeffs, rs.positive_roots[j].coeffs, True)
        assert res.passed
        flags.append((res.details["standard_ro"], res.details["eta_X_zero"]))
    assert sorted(flags) == [(False, False), (False, False), (True, True)]


@pytest.mark.parametrize("l", [3, 4, 5])
def test_d_family_examples(l):
    bad = {k: msg for k, (ok, msg) in d_family_example_checks(l).items() if not ok}
    assert not bad


def test_derived_basis_on_b3():
    model = classical_model("B3")
    dd = derived_basis_check(model.basis, model.forms, model.forms[0])
    assert dd["passed"]
    assert hyperplane_restriction_check(model, build_root_system("B3").highest_root.coeffs)["top_droppable"]


def test_project_forms_dedupes():
    P = flat_parametrization([(1, -1, 0)], 3)
    forms = project_forms([(1, 0, 1), (0, 1, 1), (1, 0, 0)], P)
    assert len(forms) == 2


def test_coefficient_matrix_shape():
    m = coefficient_matrix(d4_basis())
    assert len(m) == 4 and all(len(r) == 4 for r in m)
