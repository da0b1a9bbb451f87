"""Polynomial vector fields, Saito's criterion and restriction to flats.

Everything here works in Euclidean coordinates.  The classical families are
realized in their standard models (A inside the sum-zero hyperplane of
Q^{l+1}, B/C/D in Q^l) and root systems given by simple-root coefficients are
mapped into those models by :class:`Embedding`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import integer_nullspace, primitive, rref
from .poly import Poly
from .rootsys import RootSystem, RootSystemId, build_root_system

CLASSICAL = ("A", "B", "C", "D")


class ResidualError(ArithmeticError):
    """The restricted vector field does not solve P g = f(P t) exactly."""


class DependentBasis(ArithmeticError):
    """The candidate basis has zero determinant."""


# ---------------------------------------------------------------------------
# derivations


class Derivation:
    """The vector field sum_i coords[i] d/dx_i."""

    __slots__ = ("coords", "name")

    def __init__(self, coords: Sequence[Poly], name: str = ""):
        self.coords = tuple(coords)
        self.name = name
        if len({c.n for c in self.coords}) > 1:
            raise ValueError("coordinates live in different rings")

    @property
    def n(self) -> int:
        return len(self.coords)

    @classmethod
    def euler(cls, n: int) -> "Derivation":
        return cls([Poly.var(n, i) for i in range(n)], name="E")

    @classmethod
    def power(cls, n: int, p: int, name: str = "") -> "Derivation":
        return cls([Poly.var(n, i) ** p for i in range(n)], name=name or f"sum x^{p} d")

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    @property
    def degree(self):
        """Common total degree of the coordinates, or "inhomogeneous"."""
        degs = set()
        for c in self.coords:
            if c.is_zero():
                continue
            if not c.is_homogeneous():
                return "inhomogeneous"
            degs.add(c.degree())
        if len(degs) > 1:
            return "inhomogeneous"
        return degs.pop() if degs else -1

    def apply(self, f: Poly) -> Poly:
        out = Poly(f.n)
        for i, c in enumerate(self.coords):
            if not c.is_zero():
                out = out + c * f.diff(i)
        return out

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "Derivation") -> "Derivation":
        return Derivation([a - b for a, b in zip(self.coords, other.coords)])

    def scale(self, f) -> "Derivation":
        return Derivation([f * c for c in self.coords], name=self.name)

    def __eq__(self, other) -> bool:
        return isinstance(other, Derivation) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __str__(self) -> str:
        return " + ".join(f"({c}) d{i + 1}" for i, c in enumerate(self.coords) if not c.is_zero()) or "0"


def _as_poly(form, n: int | None = None) -> Poly:
    if isinstance(form, Poly):
        return form
    return Poly.linear(list(form))


def is_in_D(phi: Derivation, forms) -> bool:
    """phi(alpha) is divisible by alpha for every defining form."""
    for a in forms:
        a = _as_poly(a)
        if not phi.apply(a).divisible_by(a):
            return False
    return True


# ---------------------------------------------------------------------------
# determinants and Saito's criterion


def bareiss_det(matrix: list[list[Poly]]) -> Poly:
    """Fraction-free elimination; every division is exact in the polynomial ring."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    ring = matrix[0][0].n
    M = [list(row) for row in matrix]
    sign = 1
    prev = Poly.const(ring, 1)
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if swap is None:
                return Poly(ring)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        piv = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = piv * M[i][j] - M[i][k] * M[k][j]
                M[i][j] = num if prev.is_constant() and prev.constant_term() == 1 else num.exact_div(prev)
            M[i][k] = Poly(ring)
        prev = piv
    return M[n - 1][n - 1] * sign


def coefficient_matrix(basis: Sequence[Derivation]) -> list[list[Poly]]:
    """Row i: the coordinates of the i-th derivation."""
    return [list(phi.coords) for phi in basis]


def defining_polynomial(forms) -> Poly:
    forms = [_as_poly(a) for a in forms]
    out = Poly.const(forms[0].n, 1)
    for a in forms:
        out = out * a
    return out


@dataclass
class SaitoResult:
    passed: bool
    det: Poly
    quotient: Poly | None
    degrees: list
    n_forms: int
    all_in_D: bool
    reason: str = ""

    @property
    def degree_count_ok(self) -> bool:
        """The shortcut: independence plus sum of degrees equal to |A|."""
        if self.det.is_zero() or any(not isinstance(d, int) for d in self.degrees):
            return False
        return sum(self.degrees) == self.n_forms


def saito_check(basis: Sequence[Derivation], forms, require_in_D: bool = True) -> SaitoResult:
    """Test det M(basis) = c * Q(A) with c a nonzero constant.

    The determinant is divided successively by each defining form; the test
    passes when every division is exact and the final quotient is a nonzero
    constant.
    """
    forms = [_as_poly(a) for a in forms]
    n = forms[0].n if forms else basis[0].n
    if len(basis) != n:
        raise ValueError(f"need {n} derivations, got {len(basis)}")
    degrees = [phi.degree for phi in basis]
    in_D = all(is_in_D(phi, forms) for phi in basis)
    det = bareiss_det(coefficient_matrix(basis))
    if det.is_zero():
        return SaitoResult(False, det, None, degrees, len(forms), in_D, "determinant is zero")
    q = det
    for a in forms:
        q, r = q.divmod(a)
        if not r.is_zero():
            return SaitoResult(False, det, None, degrees, len(forms), in_D, f"determinant not divisible by {a}")
    if not q.is_constant():
        return SaitoResult(False, det, q, degrees, len(forms), in_D, f"quotient {q} is not constant")
    if require_in_D and not in_D:
        return SaitoResult(False, det, q, degrees, len(forms), in_D, "a candidate is not in D(A)")
    return SaitoResult(True, det, q, degrees, len(forms), in_D)


def saito_check_or_raise(basis, forms) -> SaitoResult:
    res = saito_check(basis, forms)
    if res.det.is_zero():
        raise DependentBasis(res.reason)
    return res


# ---------------------------------------------------------------------------
# restriction


def flat_parametrization(defining_forms, n: int) -> list[list[int]]:
    """n x d integer matrix whose columns span the common kernel of the forms."""
    rows = [list(a) for a in defining_forms]
    cols = integer_nullspace(rows, n) if rows else [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return [[c[i] for c in cols] for i in range(n)]


def _column_images(P: list[list[int]]) -> list[Poly]:
    d = len(P[0]) if P and P[0] else 0
    return [Poly.linear(row) if any(row) else Poly(d) for row in P]


def restrict_on(phi: Derivation, P: list[list[int]]) -> Derivation:
    """Restrict phi to the subspace x = P t, returning a field in the t coordinates.

    Solves P g = phi(x)(P t) on a set of pivot rows and then checks every row.
    """
    n = phi.n
    if len(P) != n:
        raise ValueError("parametrization has the wrong number of rows")
    d = len(P[0])
    images = _column_images(P)
    f = [c.subs_linear(images) if not c.is_zero() else Poly(d) for c in phi.coords]
    # pivot rows of P: the first d linearly independent rows
    red, pivots = rref([list(r) for r in zip(*P)])  # row-reduce P^T, pivots are rows of P
    piv_rows = pivots[:d]
    if len(piv_rows) < d:
        raise ValueError("parametrization columns are dependent")
    Psub = [[Fraction(P[r][c]) for c in range(d)] for r in piv_rows]
    inv = _inverse(Psub)
    g = []
    for c in range(d):
        acc = Poly(d)
        for k, r in enumerate(piv_rows):
            if inv[c][k] != 0:
                acc = acc + f[r] * inv[c][k]
        g.append(acc)
    for r in range(n):
        lhs = Poly(d)
        for c in range(d):
            if P[r][c]:
                lhs = lhs + g[c] * P[r][c]
        if lhs != f[r]:
            raise ResidualError(f"nonzero residual in coordinate {r + 1}")
    name = f"{phi.name}^X" if phi.name else ""
    return Derivation(g, name=name)


def _inverse(M: list[list[Fraction]]) -> list[list[Fraction]]:
    d = len(M)
    aug = [list(M[i]) + [Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    red, piv = rref(aug)
    if piv[:d] != list(range(d)):
        raise ValueError("singular matrix")
    return [row[d:] for row in red]


def restrict_derivation(phi: Derivation, defining_forms) -> tuple[Derivation, list[list[int]]]:
    """Restriction to X = common kernel of the forms; returns phi^X and the parametrization."""
    P = flat_parametrization(defining_forms, phi.n)
    return restrict_on(phi, P), P


def project_forms(forms, P: list[list[int]]) -> list[tuple[int, ...]]:
    """The restricted arrangement on x = P t: one primitive form per class, positive lead."""
    seen: dict[tuple[int, ...], None] = {}
    for a in forms:
        a = list(a)
        img = [sum(a[i] * P[i][c] for i in range(len(a))) for c in range(len(P[0]))]
        if any(img):
            seen.setdefault(primitive(img), None)
    return list(seen)


def reduce_mod_flat(f: Poly, P: list[list[int]]) -> Poly:
    """The image of f in S/I(X), written in the t coordinates of X."""
    return f.subs_linear(_column_images(P))


# ---------------------------------------------------------------------------
# Euclidean models of the classical families


@dataclass
class Embedding:
    """Linear map from simple-root coefficients to Euclidean coordinates."""

    rid: RootSystemId
    simple: list[list[int]]  # rank rows, each a vector in Q^dim
    dim: int

    def euclid(self, coeffs: Sequence[int]) -> list[int]:
        return [sum(c * s[k] for c, s in zip(coeffs, self.simple)) for k in range(self.dim)]


def embedding(rid) -> Embedding:
    rid = RootSystemId.parse(rid) if isinstance(rid, str) else rid
    fam, l = rid.family, rid.rank
    if fam not in CLASSICAL:
        raise ValueError(f"no classical model for family {fam}")
    dim = l + 1 if fam == "A" else l

    def e(i, j=None, s=1, scale=1):
        v = [0] * dim
        v[i] = scale
        if j is not None:
            v[j] = s
        return v

    simple = [e(i, i + 1, -1) for i in range(l - 1)]
    if fam == "A":
        simple.append(e(l - 1, l, -1))
    elif fam == "B":
        simple.append(e(l - 1))
    elif fam == "C":
        simple.append(e(l - 1, scale=2))
    else:
        if l == 3:
            # D3 is A3 with the middle node first: a1 = e2-e3, a2 = e1-e2, a3 = e2+e3
            return Embedding(rid, [e(1, 2, -1), e(0, 1, -1), e(1, 2, 1)], dim)
        simple[-1:] = [e(l - 2, l - 1, -1)]
        simple.append(e(l - 2, l - 1, 1))
    return Embedding(rid, simple, dim)


@dataclass
class ClassicalModel:
    """Reflection arrangement and a homogeneous basis of D(A) in essential coordinates."""

    rid: RootSystemId
    n: int
    ambient: int  # l+1 for A, l otherwise
    chart: list[list[int]]  # ambient x n, maps essential coordinates into the ambient space
    embed: Embedding
    basis: list[Derivation] = field(default_factory=list)
    root_system: RootSystem | None = None

    def form(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        """Essential linear form of the hyperplane orthogonal to a root."""
        v = self.embed.euclid(coeffs)
        img = [sum(v[i] * self.chart[i][c] for i in range(self.ambient)) for c in range(self.n)]
        return primitive(img)

    @property
    def forms(self) -> list[tuple[int, ...]]:
        rs = self.root_system
        return [self.form(r.coeffs) for r in rs.positive_roots]


def _d_eta(n: int) -> Derivation:
    coords = []
    for k in range(n):
        coords.append(Poly.monomial([0 if i == k else 1 for i in range(n)]))
    return Derivation(coords, name="eta")


def _tau(n: int, i: int) -> Derivation:
    return Derivation.power(n, 2 * i - 1, name=f"tau{i}")


def classical_model(rid) -> ClassicalModel:
    rid = RootSystemId.parse(rid) if isinstance(rid, str) else rid
    fam, l = rid.family, rid.rank
    if fam not in CLASSICAL:
        raise ValueError(f"explicit bases are only available for families A-D, not {fam}")
    emb = embedding(rid)
    if fam == "D" and l == 3:
        rs = build_root_system(RootSystemId("A", 3))
    else:
        rs = build_root_system(rid)
    if fam == "A":
        N = l + 1
        chart = [[int(i == c) for c in range(l)] for i in range(l)] + [[-1] * l]
        basis = []
        for p in range(1, l + 1):
            # (l+1) sum x^p d - p_p sum d is tangent to the sum-zero hyperplane; the scalar
            # factor keeps coefficients integral and does not affect Saito's criterion
            pp = sum((Poly.var(N, k) ** p for k in range(N)), Poly(N))
            field_ = Derivation([Poly.var(N, k) ** p * N - pp for k in range(N)], name=f"theta{p}")
            basis.append(restrict_on(field_, chart))
            basis[-1].name = f"theta{p}"
        return ClassicalModel(rid, l, N, chart, emb, basis, rs)
    chart = [[int(i == c) for c in range(l)] for i in range(l)]
    if fam in ("B", "C"):
        basis = [_tau(l, i) for i in range(1, l + 1)]
    else:
        basis = [_tau(l, i) for i in range(1, l)] + [_d_eta(l)]
    return ClassicalModel(rid, l, l, chart, emb, basis, rs)


def classical_basis(rs_or_id) -> list[Derivation]:
    rid = rs_or_id.id if isinstance(rs_or_id, RootSystem) else rs_or_id
    return classical_model(rid).basis


def d_family_forms(l: int) -> list[tuple[int, ...]]:
    """x_i - x_j and x_i + x_j for i < j, the D_l arrangement in Q^l."""
    out = []
    for i in range(l):
        for j in range(i + 1, l):
            a = [0] * l
            a[i], a[j] = 1, -1
            out.append(tuple(a))
            b = [0] * l
            b[i], b[j] = 1, 1
            out.append(tuple(b))
    return out


def d_family_phi(l: int) -> Derivation:
    """prod_{k>=3}(x1^2 - xk^2) d1 + prod_{k>=3}(x2^2 - xk^2) d2."""
    x = [Poly.var(l, i) for i in range(l)]
    c1 = Poly.const(l, 1)
    c2 = Poly.const(l, 1)
    for k in range(2, l):
        c1 = c1 * (x[0] * x[0] - x[k] * x[k])
        c2 = c2 * (x[1] * x[1] - x[k] * x[k])
    return Derivation([c1, c2] + [Poly(l)] * (l - 2), name="phi")


# ---------------------------------------------------------------------------
# checks built on the above


@dataclass
class BasisCheck:
    passed: bool
    case: str  # "RO" or "non-RO"
    degrees: list
    expected_degrees: list
    n_restricted_forms: int
    saito: SaitoResult | None
    details: dict = field(default_factory=dict)
    reason: str = ""


def model_basis_check(model: ClassicalModel) -> SaitoResult:
    return saito_check(model.basis, model.forms)


def lowest_degree_order(basis: Sequence[Derivation]) -> list[int]:
    """Indices sorted by degree; ties keep the construction order."""
    return sorted(range(len(basis)), key=lambda i: (basis[i].degree, i))


def verify_basis_restriction_theorem(rid, b1: Sequence[int], b2: Sequence[int], is_ro: bool,
                                     expected_size: int | None = None) -> BasisCheck:
    """Restrict the classical basis to X = H_{b1} cap H_{b2} and run Saito on A^X.

    ``b1``, ``b2`` are simple-root coefficient vectors of an orthogonal pair
    spanning an A1^2 subsystem.  For non-RO pairs the l-2 lowest-degree basis
    fields are restricted.  For RO pairs (family D) the tau_1..tau_{l-2} are
    restricted and eta^X = 0 is asserted.
    """
    model = classical_model(rid)
    rs = model.root_system
    l = model.n
    f1, f2 = model.form(b1), model.form(b2)
    P = flat_parametrization([f1, f2], l)
    forms_X = project_forms(model.forms, P)
    details: dict = {"X_forms": [f1, f2], "n_A": len(model.forms)}
    exps = rs.exponents
    if is_ro:
        if model.rid.family != "D" and not (model.rid.family == "A" and l == 3):
            return BasisCheck(False, "RO", [], [], len(forms_X), None, details, "RO pair outside family D")
        if model.rid.family == "D":
            taus = [phi for phi in model.basis if phi.name.startswith("tau")][: l - 2]
            eta = next(phi for phi in model.basis if phi.name == "eta")
            eta_X = restrict_on(eta, P)
            details["eta_X_zero"] = eta_X.is_zero()
            # eta^X = 0 holds on the W-orbit of ker(x1+x2) cap ker(x1-x2), i.e. when the two
            # roots share their Euclidean support; the other two RO orbits of D4 are its
            # images under triality and there eta^X is a nonzero field of degree 3
            v1, v2 = model.embed.euclid(b1), model.embed.euclid(b2)
            standard = {k for k, x in enumerate(v1) if x} == {k for k, x in enumerate(v2) if x}
            details["standard_ro"] = standard
            chosen = taus
        else:
            # A3 = D3: use the D3 model directly
            return _a3_ro_check(model, b1, b2, expected_size)
        expected = [2 * i - 1 for i in range(1, l - 1)]
        case = "RO"
    else:
        order = lowest_degree_order(model.basis)[: l - 2]
        chosen = [model.basis[i] for i in order]
        expected = sorted(exps)[: l - 2]
        case = "non-RO"
        details["eta_X_zero"] = None
    restricted = [restrict_on(phi, P) for phi in chosen]
    degrees = [phi.degree for phi in restricted]
    res = saito_check(restricted, forms_X)
    ok = res.passed and sorted(degrees) == sorted(expected) and sum(degrees) == len(forms_X)
    if details.get("standard_ro") and not details.get("eta_X_zero"):
        ok = False
    if expected_size is not None:
        details["size_matches_root_count"] = expected_size == len(forms_X)
        ok = ok and expected_size == len(forms_X)
    if is_ro:
        details["exp_restriction"] = sorted(degrees)
    return BasisCheck(ok, case, degrees, expected, len(forms_X), res, details, res.reason)


def _a3_ro_check(model: ClassicalModel, b1, b2, expected_size) -> BasisCheck:
    d3 = classical_model(RootSystemId("D", 3))
    return verify_basis_restriction_theorem(d3.rid, b1, b2, True, expected_size)


def d_family_example_checks(l: int) -> dict[str, tuple[bool, str]]:
    """The explicit bases around the RO subspace ker(x1+x2) cap ker(x1-x2) of D_l."""
    forms = d_family_forms(l)
    taus = [_tau(l, i) for i in range(1, l - 1)]
    eta = _d_eta(l)
    phi = d_family_phi(l)
    h1 = tuple([1, 1] + [0] * (l - 2))
    h2 = tuple([1, -1] + [0] * (l - 2))
    x1px2 = Poly.linear(list(h1))
    out: dict[str, tuple[bool, str]] = {}

    full = taus + [eta, phi.scale(x1px2)]
    r = saito_check(full, forms)
    out["basis_D(A)"] = (r.passed, f"degrees {r.degrees}, |A| = {len(forms)}")

    deleted = [a for a in forms if a != h1]
    r = saito_check(taus + [eta, phi], deleted)
    out["basis_D(A minus H1)"] = (r.passed, f"degrees {r.degrees}, |A'| = {len(deleted)}")

    P = flat_parametrization([h1, h2], l)
    eta_X = restrict_on(eta, P)
    out["eta_X_zero"] = (eta_X.is_zero(), str(eta_X))
    forms_X = project_forms(forms, P)
    restricted = [restrict_on(t, P) for t in taus]
    r = saito_check(restricted, forms_X)
    degs = sorted(d.degree for d in restricted)
    expected = [2 * i - 1 for i in range(1, l - 1)]
    out["basis_D(A^X)"] = (r.passed and degs == expected, f"degrees {degs}, |A^X| = {len(forms_X)}")

    # derived basis on A^{H1}: restrict the D(A) basis to H1 and find the element that drops
    dd = derived_basis_check(full, forms, h1)
    out["derived_basis_H1"] = (dd["passed"] and (l - 1) in dd["droppable"], f"droppable {dd['droppable']}")

    # second step inside A^{H1}: X is a hyperplane there and eta is the field that drops
    P1 = flat_parametrization([h1], l)
    forms_H1 = project_forms([a for a in forms if a != h1], P1)
    on_h1 = [restrict_on(t, P1) for t in taus + [eta]]
    r = saito_check(on_h1, forms_H1)
    out["basis_D(A^H1)"] = (r.passed, f"degrees {r.degrees}, |A^H1| = {len(forms_H1)}")
    hx = project_forms([h2], P1)[0]
    dd = derived_basis_check(on_h1, forms_H1, hx)
    out["derived_basis_X"] = (dd["passed"] and (l - 2) in dd["vanishing"], f"droppable {dd['droppable']}, vanishing {dd['vanishing']}")

    # restriction in two steps agrees with restriction in one step
    P2 = flat_parametrization([hx], l - 1)
    composite = [[sum(P1[i][k] * P2[k][c] for k in range(l - 1)) for c in range(l - 2)] for i in range(l)]
    same = all(restrict_on(a, P2) == restrict_on(t, composite) for a, t in zip(on_h1, taus + [eta]))
    out["composition"] = (same, "(phi^H1)^X = phi^X on the composite chart")
    out["restriction_is_B"] = (len(forms_X) == (l - 2) ** 2, f"|A^X| = {len(forms_X)}")
    return out


def derived_basis_check(basis: Sequence[Derivation], forms, h) -> dict:
    """Restrict a basis of D(A) to H and report which single element can be dropped.

    Returns the indices p for which the other l-1 restrictions pass Saito on A^H.
    """
    n = basis[0].n
    P = flat_parametrization([h], n)
    forms_H = project_forms([a for a in forms if tuple(a) != tuple(h)], P)
    restricted = [restrict_on(phi, P) for phi in basis]
    droppable = []
    zero = [i for i, phi in enumerate(restricted) if phi.is_zero()]
    for p in range(len(basis)):
        rest = [phi for i, phi in enumerate(restricted) if i != p]
        if any(phi.is_zero() for phi in rest):
            continue
        if saito_check(rest, forms_H).passed:
            droppable.append(p)
    return {"passed": bool(droppable), "droppable": droppable, "vanishing": zero, "n_forms_H": len(forms_H)}


def hyperplane_restriction_check(model: ClassicalModel, coeffs: Sequence[int]) -> dict:
    """The l-1 lowest basis fields restricted to one hyperplane form a basis of D(A^H)."""
    h = model.form(coeffs)
    dd = derived_basis_check(model.basis, model.forms, h)
    top = lowest_degree_order(model.basis)[-1]
    dd["top_droppable"] = top in dd["droppable"]
    dd["passed"] = dd["passed"] and dd["top_droppable"]
    return dd
