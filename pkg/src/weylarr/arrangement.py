"""Restrictions of Weyl arrangements to flats spanned by roots.

A flat X is described by the positive roots whose hyperplanes cut it out.  The
hyperplanes of A^X correspond to classes of the remaining positive roots, where
alpha ~ alpha' iff alpha' lies in span(X-roots, alpha).  Everything here works
in simple-root coordinates with the scaled integer Gram matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from .lattice import CharPoly, build_lattice, char_poly
from .linalg import integer_nullspace, rank
from .rootsys import RootSystem
from .subsystems import (
    Subsystem,
    _as_index,
    _components,
    is_ro_indices,
    local_height,
    m2_rank3,
    orthogonal_span_count,
    subsystem_from_mask,
)


def _primitive_rows(rows: np.ndarray) -> np.ndarray:
    g = np.gcd.reduce(np.abs(rows), axis=1)
    g[g == 0] = 1
    out = rows // g[:, None]
    first = np.argmax(out != 0, axis=1)
    lead = out[np.arange(len(out)), first]
    out[lead < 0] *= -1
    return out


def restriction_classes(rs: RootSystem, gens) -> list[tuple[int, ...]]:
    """Classes of positive roots outside span(gens), one per hyperplane of A^X."""
    idx = [_as_index(rs, g) for g in gens]
    rows = [[int(x) for x in rs.R[i]] for i in idx]
    if rank(rows) != len(rows):
        raise ValueError("defining roots are linearly dependent")
    Y = integer_nullspace(rows, rs.rank)
    if not Y:
        return []
    img = rs.R @ np.array(Y, dtype=np.int64).T
    inside = ~np.any(img, axis=1)
    prim = _primitive_rows(img)
    groups: dict[bytes, list[int]] = {}
    for k in np.flatnonzero(~inside):
        groups.setdefault(prim[k].tobytes(), []).append(int(k))
    return sorted(tuple(v) for v in groups.values())


def restriction_size(rs: RootSystem, gens) -> int:
    return len(restriction_classes(rs, gens))


@lru_cache(maxsize=None)
def _hyperplane_restriction_size(rs: RootSystem, i: int) -> int:
    return restriction_size(rs, [i])


def hyperplane_restriction_size(rs: RootSystem, root) -> int:
    """|A^{H_beta}| for a single root."""
    return _hyperplane_restriction_size(rs, _as_index(rs, root))


@dataclass(frozen=True)
class RestrictionPoint:
    gens: tuple[int, ...]
    hyperplane_classes: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.hyperplane_classes)


def restriction_point(rs: RootSystem, gens) -> RestrictionPoint:
    g = tuple(_as_index(rs, x) for x in gens)
    return RestrictionPoint(g, tuple(restriction_classes(rs, g)))


def flat_basis(rs: RootSystem, gens) -> list[tuple[int, ...]]:
    """Integer basis of X = {v : (g, v) = 0 for g in gens}, in simple-root coordinates."""
    rows = [[int(x) for x in rs.R[_as_index(rs, g)] @ rs.gram_int] for g in gens]
    return integer_nullspace(rows, rs.rank)


def restricted_forms(rs: RootSystem, gens, classes=None) -> list[tuple[int, ...]]:
    """One primitive integer linear form on X per hyperplane of A^X (coordinates of flat_basis)."""
    if classes is None:
        classes = restriction_classes(rs, gens)
    P = np.array(flat_basis(rs, gens), dtype=np.int64).T
    reps = np.array([c[0] for c in classes], dtype=np.int64)
    if len(reps) == 0:
        return []
    F = rs.R[reps] @ rs.gram_int @ P
    return [tuple(int(x) for x in row) for row in _primitive_rows(F)]


def restriction_char_poly(rs: RootSystem, gens, classes=None, enforce_bounds: bool = True) -> CharPoly:
    forms = restricted_forms(rs, gens, classes)
    dim = rs.rank - len(list(gens))
    return char_poly(forms, dim, enforce_bounds=enforce_bounds)


def _cos2(rs: RootSystem, i: int, k: int) -> Fraction:
    ip = int(rs.IP[i, k])
    return Fraction(ip * ip, int(rs.normsq_int[i]) * int(rs.normsq_int[k]))


N0, N1, N2, N3 = "N0", "N_b2(b1)", "N_b1(b2)", "N3"


@dataclass(frozen=True)
class Piece:
    """Phi_Y for one hyperplane Y of A^X: its positive roots and where it falls."""

    kind: str
    positive: tuple[int, ...]
    cls: tuple[int, ...]
    s1: Fraction  # sum over the class of cos^2(beta_1, delta)
    s2: Fraction


@dataclass
class NeighborhoodDecomposition:
    rs: RootSystem = field(repr=False)
    b1: int
    b2: int
    pieces: list[Piece] = field(repr=False)

    def _of(self, kind: str) -> list[Piece]:
        return [p for p in self.pieces if p.kind == kind]

    def subsystems(self, kind: str) -> list[Subsystem]:
        out = []
        for p in self._of(kind):
            mask = np.zeros(self.rs.n_positive, dtype=bool)
            mask[list(p.positive)] = True
            out.append(subsystem_from_mask(self.rs, mask))
        return out

    @cached_property
    def n0(self) -> list[Subsystem]:
        return self.subsystems(N0)

    @cached_property
    def n1(self) -> list[Subsystem]:
        return self.subsystems(N1)

    @cached_property
    def n2(self) -> list[Subsystem]:
        return self.subsystems(N2)

    @cached_property
    def n3(self) -> list[Subsystem]:
        return self.subsystems(N3)

    @property
    def counts(self) -> dict[str, int]:
        return {k: len(self._of(k)) for k in (N0, N1, N2, N3)}

    @property
    def k0_1(self) -> Fraction:
        return sum((p.s1 for p in self._of(N0)), Fraction(0))

    @property
    def k0_2(self) -> Fraction:
        return sum((p.s2 for p in self._of(N0)), Fraction(0))

    @property
    def k0(self) -> Fraction:
        return self.k0_1

    @property
    def k1(self) -> Fraction:
        """K_{b2}(b1)."""
        return sum((p.s1 for p in self._of(N1)), Fraction(0))

    @property
    def k2(self) -> Fraction:
        """K_{b1}(b2)."""
        return sum((p.s2 for p in self._of(N2)), Fraction(0))

    @property
    def size(self) -> int:
        return len(self.pieces)


def is_a12_indices(rs: RootSystem, i: int, j: int) -> bool:
    return i != j and rs.IP[i, j] == 0 and orthogonal_span_count(rs, i, j) == 2


def neighborhood_decomposition(rs: RootSystem, b1, b2) -> NeighborhoodDecomposition:
    i, j = _as_index(rs, b1), _as_index(rs, b2)
    if not is_a12_indices(rs, i, j):
        raise ValueError("the pair is not an A1^2 set")
    pieces = []
    for cls in restriction_classes(rs, [i, j]):
        pos = tuple(sorted((i, j) + cls))
        comps = _components(rs, list(pos))
        s1 = sum((_cos2(rs, i, k) for k in cls), Fraction(0))
        s2 = sum((_cos2(rs, j, k) for k in cls), Fraction(0))
        if len(comps) == 1:
            kind = N0
        elif len(comps) == 3:
            kind = N3
        elif len(comps) == 2 and [j] in comps:
            kind = N1
        elif len(comps) == 2 and [i] in comps:
            kind = N2
        else:
            raise AssertionError(f"unexpected shape of Phi_Y: components {comps}")
        pieces.append(Piece(kind, pos, cls, s1, s2))
    return NeighborhoodDecomposition(rs, i, j, pieces)


@dataclass
class CardResult:
    passed: bool
    witness: dict


def card_theorem_check(rs: RootSystem, b1, b2, nd: NeighborhoodDecomposition | None = None) -> CardResult:
    """|A^{H_bi}| - |A^X| = h/2 + K = (h/2 if RO else m_(l-1)) = m_l - K0, for i = 1, 2."""
    i, j = _as_index(rs, b1), _as_index(rs, b2)
    if nd is None:
        nd = neighborhood_decomposition(rs, i, j)
    h = rs.coxeter_number
    exps = rs.exponents
    ro = is_ro_indices(rs, i, j)
    ax = nd.size
    diffs = [hyperplane_restriction_size(rs, i) - ax, hyperplane_restriction_size(rs, j) - ax]
    expected = Fraction(h, 2) if ro else exps[-2]
    ok = True
    for d, k in zip(diffs, (nd.k1, nd.k2)):
        ok &= d == Fraction(h, 2) + k == expected
        ok &= d == exps[-1] - nd.k0_1
    ok &= nd.k0_1 == nd.k0_2
    return CardResult(
        ok,
        {
            "pair": [str(rs.positive_roots[i]), str(rs.positive_roots[j])],
            "ro": ro,
            "|A^H1|-|A^X|": diffs[0],
            "|A^H2|-|A^X|": diffs[1],
            "|A^X|": ax,
            "h/2": Fraction(h, 2),
            "m_(l-1)": exps[-2],
            "m_l": exps[-1],
            "K0": nd.k0_1,
            "K_b2(b1)": nd.k1,
            "K_b1(b2)": nd.k2,
            "expected": expected,
        },
    )


def verify_card_theorem(rs: RootSystem, b1, b2) -> CardResult:
    return card_theorem_check(rs, b1, b2)


def three_sums_check(rs: RootSystem, nd: NeighborhoodDecomposition) -> CardResult:
    h = rs.coxeter_number
    a = 2 * (nd.k0_1 + nd.k1 + 1)
    b = 2 * (nd.k0_2 + nd.k2 + 1)
    return CardResult(a == h == b and nd.k1 == nd.k2, {"2(K0+K1+1)": a, "2(K0+K2+1)": b, "h": h, "K1": nd.k1, "K2": nd.k2})


def decomposition_identities(rs: RootSystem, nd: NeighborhoodDecomposition) -> dict[str, CardResult]:
    """Partition, root-count formulas and the unweighted count identity for one pair."""
    out = {}
    N = rs.n_positive
    # disjoint cover of the positive roots
    seen = [nd.b1, nd.b2]
    for p in nd.pieces:
        seen.extend(p.cls)
    out["cor:passing"] = CardResult(sorted(seen) == list(range(N)), {"covered": len(set(seen)), "|Phi+|": N})
    total = sum(len(p.positive) - 2 for p in nd.pieces)
    out["lem:partition"] = CardResult(total == N - 2, {"sum(|Psi+|-2)": total, "|A|-2": N - 2})
    bad = []
    for p in nd.pieces:
        n = len(p.positive)
        if p.kind == N3:
            ok = n == 3
        elif p.kind == N1:
            ok = n == 1 + 2 * (p.s1 + 1)
        elif p.kind == N2:
            ok = n == 1 + 2 * (p.s2 + 1)
        else:
            ok = n == 3 * (p.s1 + 1) == 3 * (p.s2 + 1)
        if not ok:
            bad.append({"kind": p.kind, "|Psi+|": n, "s1": p.s1, "s2": p.s2})
    out["prop:2 cases"] = CardResult(not bad, {"violations": bad})
    lhs = N - nd.size
    rhs = 3 * nd.k0_1 + 2 * nd.k1 + 2 * nd.k2 + 2
    k0_local = sum((Fraction(len(p.positive), 3) - 1 for p in nd.pieces if p.kind == N0), Fraction(0))
    out["prop:X=A_1^2"] = CardResult(lhs == rhs, {"|A|-|A^X|": lhs, "3K0+2K1+2K2+2": rhs})
    out["rem:K0"] = CardResult(nd.k0_1 == k0_local, {"K0": nd.k0_1, "sum(m2(Psi)-1)": k0_local})
    out["prop:not empty"] = CardResult(nd.counts[N0] > 0, {"|N0|": nd.counts[N0]})
    return out


def top_restriction_check(rs: RootSystem) -> CardResult:
    """|A| - |A^{H_theta}| = m_l, and the same for every root."""
    bad = []
    m_l = rs.exponents[-1]
    for i in range(rs.n_positive):
        d = rs.n_positive - hyperplane_restriction_size(rs, i)
        if d != m_l:
            bad.append((str(rs.positive_roots[i]), d))
    return CardResult(not bad, {"m_l": m_l, "violations": bad[:5]})


def factorization_check(rs: RootSystem, b1, b2, enforce_bounds: bool = True) -> CardResult:
    """chi(A^X, t) equals prod(t - m) over the exponents minus the two removed ones."""
    i, j = _as_index(rs, b1), _as_index(rs, b2)
    exps = list(rs.exponents)
    ro = is_ro_indices(rs, i, j)
    h = rs.coxeter_number
    removed = [h // 2, exps[-1]] if ro else [exps[-2], exps[-1]]
    keep = list(exps)
    for r in removed:
        keep.remove(r)
    cp = restriction_char_poly(rs, [i, j], enforce_bounds=enforce_bounds)
    expected = CharPoly.from_roots(keep)
    return CardResult(cp == expected, {"chi": str(cp), "expected_roots": keep, "ro": ro})


def _essential_forms(rs: RootSystem, roots: list[int], on_perp_of: list[int] | None = None):
    """Forms of the given roots on W = span(roots) ∩ (on_perp_of)^perp, one per hyperplane."""
    rows = [[int(x) for x in rs.R[k]] for k in roots]
    # basis of span(roots)
    from .linalg import rref

    m, piv = rref(rows)
    span_basis = [[int(x) for x in _clear(r)] for r in m[: len(piv)]]
    S = np.array(span_basis, dtype=np.int64).T  # l x r
    if on_perp_of:
        cons = np.array([[int(x) for x in rs.R[k]] for k in on_perp_of], dtype=np.int64) @ rs.gram_int @ S
        T = integer_nullspace(cons.tolist(), S.shape[1])
        if not T:
            return [], 0
        W = S @ np.array(T, dtype=np.int64).T
    else:
        W = S
    F = rs.R[roots] @ rs.gram_int @ W
    nz = np.any(F, axis=1)
    prim = _primitive_rows(F[nz])
    forms = sorted({tuple(int(x) for x in row) for row in prim})
    return forms, W.shape[1]


def _clear(row):
    from .linalg import primitive

    return primitive(row)


def essential_char_poly(rs: RootSystem, roots: list[int], on_perp_of: list[int] | None = None) -> CharPoly:
    forms, dim = _essential_forms(rs, roots, on_perp_of)
    return char_poly(forms, dim)


def combinatorial_deletion_check(rs: RootSystem, b1, b2, max_local_rank: int = 4) -> CardResult:
    """Root condition of the combinatorial deletion theorem for A^{H_b1} minus X* = H_b1 ∩ H_b2.

    For every flat X of A^{X*} whose localization A_X has rank <= max_local_rank,
    |A^{H}_X| - |A^{X*}_X| must be a root of chi(A^{H}_X, t); when A_X is
    reducible the polynomial must factor over the components and the
    difference must equal the component-local difference.
    """
    i, j = _as_index(rs, b1), _as_index(rs, b2)
    classes = restriction_classes(rs, [i, j])
    forms = restricted_forms(rs, [i, j], classes)
    dim = rs.rank - 2
    lat = build_lattice(forms, dim, max_rank=max(0, min(dim, max_local_rank - 2)), enforce_bounds=False)
    checked, bad, reducible = 0, [], 0
    for flat in lat.flats():
        roots = [i, j] + [k for c in flat.hyperplanes for k in classes[c]]
        roots.sort()
        # |A^H_X|: classes of roots in Phi_X other than b1, modulo b1
        sub_classes_h = _classes_mod(rs, [r for r in roots if r != i], [i])
        diff = len(sub_classes_h) - len(flat.hyperplanes)
        chi = essential_char_poly(rs, roots, [i])
        checked += 1
        ok = chi.has_root(diff)
        comps = _components(rs, roots)
        if len(comps) > 1:
            reducible += 1
            ci = next(c for c in comps if i in c)
            prod = essential_char_poly(rs, ci, [i])
            for c in comps:
                if c is not ci:
                    prod = prod * essential_char_poly(rs, c)
            ok &= prod == chi
            cj = next(c for c in comps if j in c)
            if cj is ci:
                local = len(_classes_mod(rs, [r for r in ci if r != i], [i])) - len(_classes_mod(rs, [r for r in ci if r not in (i, j)], [i, j]))
            else:
                local = len(cj) - len(_classes_mod(rs, [r for r in cj if r != j], [j]))
            ok &= local == diff
        if not ok:
            bad.append({"flat_roots": [str(rs.positive_roots[r]) for r in roots], "diff": diff, "chi": str(chi)})
    return CardResult(not bad, {"flats_checked": checked, "reducible_localizations": reducible, "violations": bad[:5]})


def _classes_mod(rs: RootSystem, roots: list[int], gens: list[int]) -> list[tuple[int, ...]]:
    """Classes of the given roots modulo span(gens) (proportional images grouped)."""
    rows = [[int(x) for x in rs.R[g]] for g in gens]
    Y = np.array(integer_nullspace(rows, rs.rank), dtype=np.int64).T
    if not roots:
        return []
    img = rs.R[roots] @ Y
    prim = _primitive_rows(img)
    groups: dict[bytes, list[int]] = {}
    for r, row in zip(roots, prim):
        if row.any():
            groups.setdefault(row.tobytes(), []).append(r)
    return sorted(tuple(v) for v in groups.values())


def local_global_check(rs: RootSystem, nd: NeighborhoodDecomposition) -> CardResult:
    """Sum over N0 of (m2(Psi)-1) >= m2-1 and of c_max(Psi) >= c_max, equality iff l <= 4 or not RO."""
    exps = rs.exponents
    n0 = nd.n0
    a = sum(m2_rank3(p) - 1 for p in n0)
    b = sum(p.c_max for p in n0)
    ro = is_ro_indices(rs, nd.b1, nd.b2)
    eq_expected = rs.rank <= 4 or not ro
    ok = a >= exps[1] - 1 and b >= rs.c_max and ((a == exps[1] - 1) == eq_expected) and ((b == rs.c_max) == eq_expected)
    return CardResult(ok, {"sum(m2(Psi)-1)": a, "m2-1": exps[1] - 1, "sum(c_max(Psi))": b, "c_max": rs.c_max, "ro": ro, "rank": rs.rank})


def appendix_bijection(rs: RootSystem, g1: int, g2: int) -> CardResult:
    """For gamma_1, gamma_2 at height m_(l-1): U is the disjoint union of the U_Psi over N0."""
    exps = rs.exponents
    m_l1 = exps[-2]
    U = {k for k, r in enumerate(rs.positive_roots) if r.height > m_l1}
    nd = neighborhood_decomposition(rs, g1, g2)
    parts, heights_ok, m2_sum = [], True, 0
    details = []
    for psi in nd.n0:
        m2 = m2_rank3(psi)
        m2_sum += m2 - 1
        hg = [local_height(psi, g1), local_height(psi, g2)]
        heights_ok &= hg == [m2, m2]
        up = {k for k in psi.positive if local_height(psi, k) > hg[0]}
        parts.append(up)
        details.append({"type": psi.label, "m2(Psi)": m2, "ht_Psi(gamma)": hg, "|U_Psi|": len(up)})
    union = set().union(*parts) if parts else set()
    disjoint = sum(len(p) for p in parts) == len(union)
    ok = disjoint and union == U and m2_sum == exps[1] - 1 and heights_ok
    return CardResult(
        ok,
        {
            "gammas": [str(rs.positive_roots[g1]), str(rs.positive_roots[g2])],
            "|U|": len(U),
            "disjoint": disjoint,
            "union_equals_U": union == U,
            "sum(m2(Psi)-1)": m2_sum,
            "m2-1": exps[1] - 1,
            "local_heights_ok": heights_ok,
            "N0": details,
        },
    )
