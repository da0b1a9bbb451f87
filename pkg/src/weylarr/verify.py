"""Verification suite: every checked statement as a structured, citable record.

Checks run per root system in a fixed order and never abort the suite; an
exception inside a check is recorded as a failure with the error text as
witness.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from . import derivations as der
from .arrangement import (
    appendix_bijection,
    card_theorem_check,
    combinatorial_deletion_check,
    decomposition_identities,
    factorization_check,
    local_global_check,
    neighborhood_decomposition,
    restriction_size,
    three_sums_check,
    top_restriction_check,
)
from .lattice import CharPoly, LatticeBoundExceeded, char_poly
from .rootsys import (
    IdentityViolation,
    RootSystem,
    RootSystemId,
    admissible_ids,
    build_root_system,
    height_profile,
    root_core_invariants,
    structural_lemma_checks,
)
from .subsystems import (
    classify_pair,
    is_ro_indices,
    pair_orbits,
    span_subsystem,
    theta_perp_decomposition,
    type_label_str,
)

EXHAUSTIVE = "exhaustive"
REPRESENTATIVES = "representatives"
RANK_REQUIRED = "ℓ ≥ 3 required"

# statements the suite must cover over the full catalog
IN_SCOPE_LABELS = (
    "not:associated", "def:s", "def:RO", "def:A_1^2", "def:N", "def:X-bar", "def:local",
    "thm:combine", "thm:card", "thm:half1", "thm:half2", "thm:basis-main", "thm:basis-non-RO",
    "ex:basis-RO", "thm:basis-derived", "thm:Factorization", "thm:criterion", "thm:Abe",
    "thm:dual", "exponents(i)", "exponents(ii)", "exponents(iii)", "exponents(iv)",
    "exponents(v)", "exponents(vi)", "thm:OST", "thm:crucial", "prop:characterize",
    "prop:not empty", "prop:=", "prop:3sums", "prop:2 cases", "prop:X=A_1^2", "lem:coes",
    "prop:b-a", "thm:iso", "prop:long", "prop:irr", "prop:existence", "lem:eg", "lem:partition",
    "lem:compatible", "lem:Cartan", "lem:special", "lem:repeat", "lem:3roots", "lem:cases",
    "cor:passing", "cor:c-max", "cor:criterion", "cor:exactly2", "cor:differences",
    "cor:reducible", "cor:existence-D4", "cor:same-component", "cor:Local-global",
    "cor:Omega-cx", "rem:numerical", "rem:K0", "sec:app", "lem:local height", "eq:once",
)

# labels whose checks need an A1^2 pair, hence rank >= 3
PAIR_LABELS = (
    "not:associated", "def:s", "def:RO", "def:A_1^2", "def:N", "prop:=", "prop:characterize",
    "lem:compatible", "rem:numerical", "thm:card", "thm:half1", "thm:half2", "prop:3sums",
    "cor:passing", "lem:partition", "prop:2 cases", "prop:X=A_1^2", "rem:K0", "prop:not empty",
    "sec:app", "def:local", "lem:local height", "eq:once", "thm:crucial", "cor:Local-global",
    "thm:combine", "thm:Abe",
)


@dataclass
class CheckResult:
    check_id: str
    citation: str
    status: str  # "pass", "fail" or "skipped"
    witness: dict = field(default_factory=dict)
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_record(self) -> dict:
        rec = {"check_id": self.check_id, "citation": self.citation, "status": self.status, "witness": jsonable(self.witness)}
        if self.reason:
            rec["reason"] = self.reason
        return rec


def jsonable(x):
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in x]
        return sorted(items, key=str) if isinstance(x, (set, frozenset)) else items
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


class _Collector:
    def __init__(self, rid: RootSystemId):
        self.rid = rid
        self.results: list[CheckResult] = []

    def add(self, label: str, ok: bool, witness: dict | None = None, suffix: str = "", citation: str | None = None):
        cid = f"{label}/{self.rid}" + (f"/{suffix}" if suffix else "")
        self.results.append(CheckResult(cid, citation or label, "pass" if ok else "fail", witness or {}))

    def skip(self, label: str, reason: str, suffix: str = ""):
        cid = f"{label}/{self.rid}" + (f"/{suffix}" if suffix else "")
        self.results.append(CheckResult(cid, label, "skipped", {}, reason))

    def guarded(self, label: str, fn: Callable[[], None], suffix: str = ""):
        """Run fn; an exception becomes a failed check carrying the message."""
        try:
            fn()
        except Exception as e:  # noqa: BLE001 - failures are data
            self.add(label, False, {"error": f"{type(e).__name__}: {e}"}, suffix)


# ---------------------------------------------------------------------------
# expected orbit census


def expected_census(rid: RootSystemId) -> tuple[int, int] | None:
    """(number of A1^2 orbits, number of RO orbits) for rank >= 3."""
    f, l = rid.family, rid.rank
    if l < 3:
        return None
    if rid == RootSystemId("A", 3):
        return (1, 1)  # A3 = D3
    if f == "D":
        return (3, 3) if l == 4 else (2, 1)
    if f in ("B", "C"):
        return (2, 0) if l >= 4 else (1, 0)
    return (1, 0)


# ---------------------------------------------------------------------------
# check groups


def _root_core(c: _Collector, rs: RootSystem):
    for name, (ok, wit) in root_core_invariants(rs).items():
        c.add(name, ok, wit, citation={"catalog": "catalog", "closure": "root system axioms"}.get(name, name))


def _height_profile(c: _Collector, rs: RootSystem):
    if rs.rank < 2:
        return
    labels = ("lem:coes", "prop:b-a", "cor:criterion", "cor:differences")
    try:
        prof = height_profile(rs)
    except IdentityViolation as e:
        for lab in labels:
            c.add(lab, False, {"error": str(e)})
        return
    wit = dict(prof.witness)
    wit["case"] = prof.case_tag
    lam = prof.lambda_chain
    c.add("lem:coes", len(lam) == rs.c_max, {**wit, "Lambda": [str(x) for x in lam]})
    xi = [x.coeffs for x in prof.xi_sequence]
    m2 = rs.exponents[1]
    if prof.case_tag == "CASE1":
        ok = len(set(xi)) == m2 - 2
    else:
        ok = len(set(xi)) == len(xi) == m2 - 1
    c.add("prop:b-a", ok, {**wit, "Xi": [str(x) for x in prof.xi_sequence]})
    case1 = prof.case_tag == "CASE1"
    c.add(
        "cor:criterion",
        case1 == (rs.id.family == "G") == (rs.c_max == m2 - 2) and (not case1 or rs.rank == 2),
        {**wit, "note": "Case 1 implies rank 2; A2 and B2 have rank 2 and are Case 2"},
    )
    c.add("cor:differences", True, {**wit, "top_roots": [str(r) for r in prof.top_roots]})
    if rs.rank == 2:
        expect = rs.c_max + (2 if case1 else 1)
        c.add("thm:iso", m2 == expect, {**wit, "rule": "m2 = c_max + 2 in Case 1, c_max + 1 in Case 2"})


def _structural(c: _Collector, rs: RootSystem):
    checks = structural_lemma_checks(rs)
    for name, (ok, wit) in checks.items():
        if name.startswith("_"):
            continue
        c.add(name, ok, wit)
    exps = rs.exponents
    # lem:special: distinct roots of a common height above floor(m_l/2) form an A1^2 set
    bad, tested = [], 0
    for r in range(exps[-1] // 2 + 1, rs.highest_root.height + 1):
        th = [rs.positive_index(x) for x in rs.theta(r)]
        for a in range(len(th)):
            for b in range(a + 1, len(th)):
                tested += 1
                if not classify_pair(rs, th[a], th[b]).is_a12:
                    bad.append((str(rs.positive_roots[th[a]]), str(rs.positive_roots[th[b]])))
    c.add("lem:special", not bad, {"pairs_tested": tested, "violations": bad})

    comps, hs = theta_perp_decomposition(rs)
    poss = checks.get("_possibility", (True, {"possibility": None}))[1]["possibility"]
    c.add("cor:reducible", len(comps) <= 1 or poss in ("2a", "2b"), {"theta_perp": type_label_str([x.type_label[0] for x in comps]), "possibility": poss})


def _pairs(c: _Collector, rs: RootSystem, depth: str, ctx: dict):
    orbits = pair_orbits(rs)
    ctx["orbits"] = orbits
    l = rs.rank
    exps = rs.exponents
    h = rs.coxeter_number
    t = rs.positive_index(rs.highest_root)
    all_pairs = [p for o in orbits for p in o.members]
    # two independent routes to the A1^2 property
    ortho = [(i, j) for i in range(rs.n_positive) for j in range(i + 1, rs.n_positive) if rs.IP[i, j] == 0]
    general = sorted(p for p in ortho if classify_pair(rs, *p).is_a12)
    c.add("def:A_1^2", general == sorted(all_pairs), {"a12_pairs": len(all_pairs), "span_route": len(general), "orthogonal_pairs": len(ortho)})
    # RO by the definition itself versus equality of orthogonal complements
    bad = []
    for o in orbits:
        i, j = o.representative
        direct = all(
            (rs.IP[g, i] != 0 or rs.IP[g, j] == 0) and (rs.IP[g, j] != 0 or rs.IP[g, i] == 0)
            for g in range(rs.n_positive)
            if g not in (i, j)
        )
        if direct != o.is_ro:
            bad.append(o.index)
    c.add("def:RO", not bad, {"orbits": len(orbits), "mismatch": bad})
    # Phi_X of a representative is of type A1^2 and has rank 2
    bad = []
    for o in orbits:
        sub = span_subsystem(rs, list(o.representative))
        if type_label_str(sub.type_label) != "A1xA1" or sub.rank != 2:
            bad.append((o.index, sub.label))
    c.add("not:associated", not bad, {"violations": bad})
    c.add("def:s", not bad, {"type_of_X": "A1xA1", "orbits": len(orbits)})
    # W-stability and simple representatives
    simple_pairs_ok = True
    simple = [rs.positive_index(a) for a in rs.simple_roots]
    for a in range(l):
        for b in range(a + 1, l):
            if rs.cartan[a][b] == 0 and not classify_pair(rs, simple[a], simple[b]).is_a12:
                simple_pairs_ok = False
    c.add(
        "prop:characterize",
        all(o.simple_representative is not None for o in orbits) and simple_pairs_ok,
        {"orbits": len(orbits), "simple_representatives": [o.simple_representative for o in orbits], "orthogonal_simple_pairs_a12": simple_pairs_ok},
    )
    sizes = {}
    pairs_for_size = all_pairs if depth == EXHAUSTIVE else [o.representative for o in orbits]
    for o in orbits:
        members = o.members if depth == EXHAUSTIVE else (o.representative,)
        sizes[o.index] = sorted({restriction_size(rs, list(p)) for p in members})
    c.add("lem:compatible", all(len(v) == 1 for v in sizes.values()), {"|A^X| per orbit": sizes, "pairs": len(pairs_for_size)})
    exp = expected_census(rs.id)
    got = (len(orbits), sum(o.is_ro for o in orbits))
    c.add("rem:numerical", got == exp, {"orbits": got[0], "ro_orbits": got[1], "expected": exp, "orbit_sizes": [o.size for o in orbits]})
    has_ro = got[1] > 0
    c.add("thm:half1", (not has_ro) or (h % 2 == 0 and h // 2 in exps), {"ro_exists": has_ro, "h/2": Fraction(h, 2), "exponents": exps})
    # rank-specific existence statements
    non_ro_exists = any(not o.is_ro for o in orbits)
    gam = [rs.positive_index(x) for x in rs.theta(exps[-2])]
    S = [(a, b) for ai, a in enumerate(gam) for b in gam[ai + 1 :] if rs.is_long(rs.positive_roots[a]) or rs.is_long(rs.positive_roots[b])]
    S_non_ro = [p for p in S if not is_ro_indices(rs, *p)]
    c.add("prop:existence", (not non_ro_exists) or bool(S_non_ro), {"|S|": len(S), "non_RO_in_S": len(S_non_ro), "non_RO_exists": non_ro_exists})
    if l == 4:
        is_d4 = rs.id == RootSystemId("D", 4)
        c.add("cor:existence-D4", (has_ro == is_d4) and (not is_d4 or all(o.is_ro for o in orbits)), {"ro_exists": has_ro, "is_D4": is_d4})
    if l >= 4:
        lams = sorted({b if a == t else a for o in orbits if not o.is_ro for (a, b) in o.members if t in (a, b)})
        comps, _ = theta_perp_decomposition(rs)
        big = [cp for cp in comps if cp.rank >= 2]
        ok = len(lams) < 2 or (len(big) == 1 and all(x in big[0].positive for x in lams))
        c.add("cor:same-component", ok, {"non_RO_partners_of_theta": len(lams), "rank>=2_components": [cp.label for cp in big]})


def _pair_level(c: _Collector, rs: RootSystem, depth: str, ctx: dict):
    """Cardinality theorem, K-sums, decomposition identities, local-global, per orbit."""
    orbits = ctx["orbits"]
    exps = rs.exponents
    labels = ("thm:card", "prop:3sums", "cor:passing", "lem:partition", "prop:2 cases",
              "prop:X=A_1^2", "rem:K0", "prop:not empty", "def:N", "cor:Local-global")
    for o in orbits:
        members = o.members if depth == EXHAUSTIVE else (o.representative,)
        agg: dict[str, list] = {k: [] for k in labels}
        first: dict[str, dict] = {}
        for p in members:
            nd = neighborhood_decomposition(rs, *p)
            rows = {
                "thm:card": card_theorem_check(rs, *p, nd=nd),
                "prop:3sums": three_sums_check(rs, nd),
                "cor:Local-global": local_global_check(rs, nd),
            }
            rows.update(decomposition_identities(rs, nd))
            if p == o.representative:
                rows["def:N"] = _n0_by_definition(rs, p, nd)
            for k, v in rows.items():
                agg.setdefault(k, []).append(v.passed)
                if k not in first or (not v.passed and all(agg[k][:-1])):
                    first[k] = v.witness
        suffix = f"orbit{o.index}"
        n = len(members)
        for k in labels:
            if not agg.get(k):
                continue
            c.add(k, all(agg[k]), {"pairs_checked": n, "ro": o.is_ro, **first[k]}, suffix)
        if "def:N" in first:
            c.add("prop:=", all(agg["def:N"]), {"pairs_checked": 1, **first["def:N"]}, suffix)
        card = first["thm:card"]
        half = "thm:half1" if o.is_ro else "thm:half2"
        expected = Fraction(rs.coxeter_number, 2) if o.is_ro else exps[-2]
        c.add(half, all(agg["thm:card"]) and card["|A^H1|-|A^X|"] == expected, {"difference": card["|A^H1|-|A^X|"], "expected": expected, "pairs_checked": n}, suffix)


def _n0_by_definition(rs: RootSystem, p, nd):
    """N0 as all irreducible rank-3 subsystems containing the pair, found by spanning with every root."""
    i, j = p
    found = set()
    for d in range(rs.n_positive):
        if d in (i, j):
            continue
        sub = span_subsystem(rs, [i, j, d])
        if sub.rank == 3 and sub.is_irreducible:
            found.add(tuple(sorted(sub.positive)))
    pieces = {tuple(sorted(s.positive)) for s in nd.n0}
    from .arrangement import CardResult

    return CardResult(found == pieces, {"N0_by_definition": len(found), "N0_from_restriction": len(pieces)})


def _appendix(c: _Collector, rs: RootSystem):
    exps = rs.exponents
    gam = [rs.positive_index(x) for x in rs.theta(exps[-2])]
    pairs = [(a, b) for ai, a in enumerate(gam) for b in gam[ai + 1 :]]
    if not pairs:
        c.add("sec:app", False, {"error": "fewer than two roots at height m_(l-1)"})
        return
    app_ok, heights_ok, once_ok, crucial_ok = True, True, True, True
    wit = {}
    for p in pairs:
        r = appendix_bijection(rs, *p)
        w = r.witness
        app_ok &= r.passed
        heights_ok &= w["local_heights_ok"]
        once_ok &= w["disjoint"] and w["union_equals_U"] and w["sum(m2(Psi)-1)"] == w["m2-1"]
        cr = card_theorem_check(rs, *p)
        crucial_ok &= cr.witness["|A^H1|-|A^X|"] == exps[-2] == cr.witness["|A^H2|-|A^X|"]
        if not wit or not r.passed:
            wit = w
    common = {"pairs": len(pairs), **wit}
    c.add("sec:app", app_ok, common)
    c.add("eq:once", once_ok, common)
    c.add("lem:local height", heights_ok, common)
    c.add("def:local", heights_ok, {"pairs": len(pairs), "N0": wit.get("N0")})
    c.add("thm:crucial", crucial_ok, {"pairs": len(pairs), "m_(l-1)": exps[-2]})


def _theta_perp(c: _Collector, rs: RootSystem):
    comps, hs = theta_perp_decomposition(rs)
    simply_laced = len({r.normsq for r in rs.positive_roots}) == 1
    if not simply_laced:
        return
    m2 = rs.exponents[1]
    target = rs.coxeter_number - 2 * m2 + 2
    ok = all((cp.rank >= 2 and hc == target) or (cp.rank == 1 and hc == 2) for cp, hc in zip(comps, hs))
    c.add("cor:Omega-cx", ok, {"components": [cp.label for cp in comps], "coxeter_numbers": hs, "h-2m2+2": target})


def _char_poly(c: _Collector, rs: RootSystem, depth: str, ctx: dict, max_rank: int):
    exps = rs.exponents
    r = c.add
    c.guarded("thm:OST", lambda: r("thm:OST", *_cr(top_restriction_check(rs))))
    if rs.rank <= max_rank:
        def full():
            forms = [tuple(int(x) for x in row) for row in rs.R @ rs.gram_int]
            cp = char_poly(forms, rs.rank)
            r("thm:Factorization", cp == CharPoly.from_roots(exps), {"chi": str(cp), "exponents": exps})
        c.guarded("thm:Factorization", full)
    else:
        c.skip("thm:Factorization", f"ambient rank {rs.rank} above the lattice bound {max_rank}")
    if rs.rank < 3:
        return
    for o in ctx["orbits"]:
        sfx = f"orbit{o.index}"
        members = o.members if depth == EXHAUSTIVE and rs.rank < 6 else (o.representative,)
        try:
            res = [factorization_check(rs, *p) for p in members]
            bad = next((x for x in res if not x.passed), None)
            c.add("thm:combine", bad is None, {"pairs_checked": len(members), **(bad or res[0]).witness}, sfx)
        except LatticeBoundExceeded as e:
            c.skip("thm:combine", str(e), sfx)
        # only localizations of rank <= 4 are enumerated, so this is cheap at every rank
        res = [combinatorial_deletion_check(rs, *p) for p in members]
        bad = next((x for x in res if not x.passed), None)
        c.add("thm:Abe", bad is None, {"pairs_checked": len(members), **(bad or res[0]).witness}, sfx)


def _cr(res):
    return res.passed, res.witness


def _saito(c: _Collector, rs: RootSystem, depth: str, ctx: dict, max_rank: int):
    rid = rs.id
    if rid.family not in der.CLASSICAL:
        return
    if rid.rank > max_rank:
        c.skip("thm:criterion", f"Saito determinants are only expanded up to rank {max_rank}")
        return
    model = der.classical_model(rid)
    res = der.model_basis_check(model)
    c.add("thm:criterion", res.passed, {"degrees": res.degrees, "|A|": res.n_forms, "quotient": str(res.quotient), "degree_count_ok": res.degree_count_ok, "reason": res.reason})
    # restriction of vector fields: the Euler field restricts to the Euler field
    def euler():
        P = der.flat_parametrization([model.form(rs.highest_root.coeffs)], model.n)
        e = der.restrict_on(der.Derivation.euler(model.n), P)
        c.add("def:X-bar", e == der.Derivation.euler(model.n - 1), {"restricted": str(e)})
    c.guarded("def:X-bar", euler)
    if 2 <= rid.rank <= 5:
        def ost():
            hc = der.hyperplane_restriction_check(model, rs.highest_root.coeffs)
            c.add("thm:basis-derived", hc["passed"], hc, "theta")
        c.guarded("thm:basis-derived", ost, "theta")
    if rid.rank < 3:
        return
    for o in ctx["orbits"]:
        sfx = f"orbit{o.index}"
        members = o.members if depth == EXHAUSTIVE and rid.rank <= 4 else (o.representative,)
        results = []
        for p in members:
            b1, b2 = rs.positive_roots[p[0]].coeffs, rs.positive_roots[p[1]].coeffs
            results.append(der.verify_basis_restriction_theorem(rid, b1, b2, o.is_ro, restriction_size(rs, list(p))))
        bad = next((x for x in results if not x.passed), None)
        x = bad or results[0]
        wit = {"pairs_checked": len(members), "case": x.case, "degrees": x.degrees, "expected": x.expected_degrees, "|A^X|": x.n_restricted_forms, "reason": x.reason, **{k: v for k, v in x.details.items() if k != "X_forms"}}
        c.add("thm:basis-main", bad is None, wit, sfx)
        if not o.is_ro:
            c.add("thm:basis-non-RO", bad is None, wit, sfx)
    if (rid.family == "D" and 4 <= rid.rank <= 6) or rid == RootSystemId("A", 3):
        l = 3 if rid.family == "A" else rid.rank
        for key, (ok, msg) in der.d_family_example_checks(l).items():
            label = {"derived_basis_H1": "thm:basis-derived", "derived_basis_X": "thm:basis-derived", "composition": "def:X-bar"}.get(key, "ex:basis-RO")
            c.add(label, ok, {"D_rank": l, "detail": msg}, key)


# ---------------------------------------------------------------------------


def check_system(rid, depth: str = EXHAUSTIVE, max_lattice_rank: int = 6) -> list[CheckResult]:
    rid = RootSystemId.parse(rid) if isinstance(rid, str) else rid
    c = _Collector(rid)
    try:
        rs = build_root_system(rid)
    except Exception as e:  # noqa: BLE001
        c.add("catalog", False, {"error": str(e)})
        return c.results
    ctx: dict = {}
    c.guarded("root-core", lambda: _root_core(c, rs))
    c.guarded("height-profile", lambda: _height_profile(c, rs))
    if rs.rank >= 3:
        c.guarded("structural", lambda: _structural(c, rs))
        c.guarded("pairs", lambda: _pairs(c, rs, depth, ctx))
        if "orbits" in ctx:
            c.guarded("pair-level", lambda: _pair_level(c, rs, depth, ctx))
        c.guarded("sec:app", lambda: _appendix(c, rs))
    else:
        for lab in PAIR_LABELS:
            c.skip(lab, RANK_REQUIRED)
    if rs.rank >= 2:
        c.guarded("cor:Omega-cx", lambda: _theta_perp(c, rs))
    c.guarded("char-poly", lambda: _char_poly(c, rs, depth, ctx, max_lattice_rank))
    c.guarded("saito", lambda: _saito(c, rs, depth, ctx, max_lattice_rank))
    return c.results


def _job(args):
    rid, depth, max_rank = args
    return check_system(rid, depth, max_rank)


def worker_count() -> int:
    env = os.environ.get("WEYLARR_WORKERS")
    if env:
        return max(1, int(env))
    return max(1, os.cpu_count() or 1)


def run_suite(scope: Iterable | None = None, depth: str = EXHAUSTIVE, max_lattice_rank: int = 6,
              workers: int | None = None) -> list[CheckResult]:
    """Run every check for every system in scope; results ordered by system, then by check group."""
    if depth not in (EXHAUSTIVE, REPRESENTATIVES):
        raise ValueError(f"unknown depth {depth!r}")
    ids = sorted({(RootSystemId.parse(s) if isinstance(s, str) else s).canonical() for s in (scope or admissible_ids())})
    workers = workers or worker_count()
    jobs = [(rid, depth, max_lattice_rank) for rid in ids]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as ex:
            chunks = list(ex.map(_job, jobs))
    else:
        chunks = [_job(j) for j in jobs]
    return [r for chunk in chunks for r in chunk]


def appendix_bijection_check(rs: RootSystem) -> CheckResult:
    c = _Collector(rs.id)
    _appendix(c, rs)
    return next(r for r in c.results if r.check_id.startswith("sec:app/"))


def summarize(results: list[CheckResult]) -> dict[str, int]:
    out = {"pass": 0, "fail": 0, "skipped": 0}
    for r in results:
        out[r.status] += 1
    return out


def write_report(results: list[CheckResult], path: str, extra: dict | None = None):
    with open(path, "w", encoding="utf-8") as fh:
        for r in results:
            fh.write(json.dumps({**(extra or {}), **r.to_record()}, sort_keys=True, ensure_ascii=False) + "\n")


def labels_covered(results: list[CheckResult]) -> set[str]:
    return {r.check_id.split("/")[0] for r in results}
