"""Irreducible crystallographic root systems built from Cartan data.

Roots are integer coefficient vectors over the simple roots (Bourbaki
numbering).  Inner products come from the Gram matrix of the simple roots,
normalized so that long roots have squared length 2.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from importlib import resources
from math import lcm

import numpy as np

FAMILIES = "ABCDEFG"


class IdentityViolation(AssertionError):
    """A structural identity that must hold for every root system failed."""


@dataclass(frozen=True, order=True)
class RootSystemId:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or self.rank < 1:
            raise ValueError(f"rank must be a positive integer, got {self.rank!r}")
        f, n = self.family, self.rank
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 3,
            "D": n >= 3,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }[f]
        if not ok:
            raise ValueError(f"inadmissible root system {f}{n}")

    @classmethod
    def parse(cls, text: str) -> "RootSystemId":
        m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", text)
        if not m:
            raise ValueError(f"cannot parse root system type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def canonical(self) -> "RootSystemId":
        """D3 is the same root system as A3."""
        if self.family == "D" and self.rank == 3:
            return RootSystemId("A", 3)
        return self

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def admissible_ids(max_rank: int = 8) -> list[RootSystemId]:
    """The catalog of irreducible types up to ``max_rank`` (D3 excluded as an alias)."""
    out = []
    for n in range(1, max_rank + 1):
        for f in FAMILIES:
            if f == "D" and n == 3:
                continue
            try:
                out.append(RootSystemId(f, n))
            except ValueError:
                pass
    return sorted(out)


def _chain(n: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(n - 1)]


def gram_matrix(rid: RootSystemId) -> list[list[Fraction]]:
    """Inner products of the simple roots, Bourbaki numbering, long roots of length 2."""
    rid = rid.canonical()
    f, n = rid.family, rid.rank
    norms = [Fraction(2)] * n
    edges: dict[tuple[int, int], Fraction] = {}
    if f == "A":
        edges = {e: Fraction(-1) for e in _chain(n)}
    elif f == "B":
        norms[-1] = Fraction(1)
        edges = {e: Fraction(-1) for e in _chain(n)}
    elif f == "C":
        norms = [Fraction(1)] * (n - 1) + [Fraction(2)]
        edges = {e: Fraction(-1, 2) for e in _chain(n - 1)}
        edges[(n - 2, n - 1)] = Fraction(-1)
    elif f == "D":
        edges = {e: Fraction(-1) for e in _chain(n - 1)}
        edges[(n - 3, n - 1)] = Fraction(-1)
    elif f == "E":
        # 1-3-4-5-6-7-8 with 2 attached to 4
        edges = {(0, 2): Fraction(-1), (1, 3): Fraction(-1)}
        for i in range(2, n - 1):
            edges[(i, i + 1)] = Fraction(-1)
    elif f == "F":
        norms = [Fraction(2), Fraction(2), Fraction(1), Fraction(1)]
        edges = {(0, 1): Fraction(-1), (1, 2): Fraction(-1), (2, 3): Fraction(-1, 2)}
    elif f == "G":
        norms = [Fraction(2, 3), Fraction(2)]
        edges = {(0, 1): Fraction(-1)}
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = norms[i]
    for (i, j), v in edges.items():
        g[i][j] = g[j][i] = v
    return g


def cartan_from_gram(gram) -> list[list[int]]:
    n = len(gram)
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            v = 2 * Fraction(gram[i][j]) / Fraction(gram[j][j])
            if v.denominator != 1:
                raise ValueError("Gram matrix is not crystallographic")
            c[i][j] = int(v)
    return c


def cartan_matrix(rid: RootSystemId) -> list[list[int]]:
    return cartan_from_gram(gram_matrix(rid))


@dataclass(frozen=True)
class Root:
    coeffs: tuple[int, ...]
    height: int = field(compare=False)
    normsq: Fraction = field(compare=False)

    @property
    def is_positive(self) -> bool:
        return self.height > 0

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coeffs), -self.height, self.normsq)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs, start=1):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            terms.append(f"{sign}{mag}a{i}")
        s = "".join(terms)
        return s[1:] if s.startswith("+") else s


@dataclass(frozen=True)
class Catalog:
    cartan: tuple[tuple[int, ...], ...]
    exponents: tuple[int, ...]


@lru_cache(maxsize=None)
def load_catalog() -> dict[RootSystemId, Catalog]:
    """Pinned Bourbaki Cartan matrices and exponents (``catalog.txt``)."""
    text = resources.files("weylarr").joinpath("catalog.txt").read_text(encoding="utf-8")
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, cartan, exps = (part.strip() for part in line.split("|"))
        rows = tuple(tuple(int(x) for x in row.split()) for row in cartan.split(";"))
        out[RootSystemId.parse(name)] = Catalog(rows, tuple(int(x) for x in exps.split()))
    return out


class RootSystem:
    """Positive roots, Gram data and the numerical invariants of one irreducible type.

    Instances are immutable after :func:`build_root_system` returns them.
    """

    def __init__(self, rid: RootSystemId, gram, cartan, positive_roots: list[Root]):
        self.id = rid
        self.rank = rid.rank
        self.gram = tuple(tuple(r) for r in gram)
        self.cartan = tuple(tuple(r) for r in cartan)
        self.positive_roots = tuple(positive_roots)
        self.index = {r.coeffs: i for i, r in enumerate(positive_roots)}
        self.simple_roots = tuple(
            positive_roots[self.index[tuple(int(i == j) for j in range(self.rank))]] for i in range(self.rank)
        )
        self.highest_root = max(positive_roots, key=lambda r: r.height)
        self.coxeter_number = self.highest_root.height + 1
        self.c_max = max(self.highest_root.coeffs)

        self.gram_scale = lcm(*(Fraction(x).denominator for row in gram for x in row))
        gint = np.array([[int(Fraction(x) * self.gram_scale) for x in row] for row in gram], dtype=np.int64)
        R = np.array([r.coeffs for r in positive_roots], dtype=np.int64)
        self.R = R
        self.gram_int = gint
        self.gram_int_rows = tuple(tuple(int(x) for x in row) for row in gint)
        # scaled inner products of all positive roots: (a, b) * gram_scale
        self.IP = R @ gint @ R.T
        self.normsq_int = np.diag(self.IP).copy()
        for arr in (self.R, self.gram_int, self.IP, self.normsq_int):
            arr.flags.writeable = False

    def __repr__(self) -> str:
        return f"RootSystem({self.id})"

    @property
    def n_positive(self) -> int:
        return len(self.positive_roots)

    @cached_property
    def exponents(self) -> tuple[int, ...]:
        return tuple(exponents_via_dual_partition(self))

    @cached_property
    def long_normsq(self) -> Fraction:
        return max(r.normsq for r in self.positive_roots)

    def is_long(self, r: Root) -> bool:
        return r.normsq == self.long_normsq

    def lookup(self, coeffs) -> Root | None:
        """The root with these coefficients (positive or negative), if any."""
        coeffs = tuple(int(c) for c in coeffs)
        i = self.index.get(coeffs)
        if i is not None:
            return self.positive_roots[i]
        i = self.index.get(tuple(-c for c in coeffs))
        if i is not None:
            return -self.positive_roots[i]
        return None

    def is_root(self, coeffs) -> bool:
        return self.lookup(coeffs) is not None

    def positive_index(self, r: Root) -> int:
        """Index of ±r in ``positive_roots``."""
        i = self.index.get(r.coeffs)
        if i is None:
            i = self.index[tuple(-c for c in r.coeffs)]
        return i

    def theta(self, height: int) -> list[Root]:
        """Positive roots of the given height."""
        return [r for r in self.positive_roots if r.height == height]

    def make_root(self, coeffs) -> Root:
        r = self.lookup(coeffs)
        if r is None:
            raise ValueError(f"{tuple(coeffs)} is not a root of {self.id}")
        return r

    @cached_property
    def reflection_table(self) -> tuple[np.ndarray, np.ndarray]:
        """For each simple i and positive root k: s_i(beta_k) = sign[i,k] * beta_{idx[i,k]}."""
        n, N = self.rank, self.n_positive
        idx = np.zeros((n, N), dtype=np.int64)
        sign = np.zeros((n, N), dtype=np.int64)
        C = np.array(self.cartan, dtype=np.int64)
        pair = self.R @ C  # pair[k, i] = <beta_k, alpha_i>
        for i in range(n):
            for k in range(N):
                v = self.R[k].copy()
                v[i] -= pair[k, i]
                j = self.index.get(tuple(int(x) for x in v))
                if j is not None:
                    idx[i, k], sign[i, k] = j, 1
                else:
                    idx[i, k], sign[i, k] = self.index[tuple(int(-x) for x in v)], -1
        idx.flags.writeable = False
        sign.flags.writeable = False
        return idx, sign

    @cached_property
    def dynkin_edges(self) -> list[tuple[int, int]]:
        n = self.rank
        return [(i, j) for i in range(n) for j in range(i + 1, n) if self.cartan[i][j] != 0]


def _ip_int(rs: RootSystem, a: Root, b: Root) -> int:
    g = rs.gram_int_rows
    ac, bc = a.coeffs, b.coeffs
    return sum(x * sum(gi[j] * y for j, y in enumerate(bc) if y) for x, gi in zip(ac, g) if x)


def inner(rs: RootSystem, a: Root, b: Root) -> Fraction:
    """The invariant bilinear form (a, b)."""
    return Fraction(_ip_int(rs, a, b), rs.gram_scale)


def pairing(rs: RootSystem, a: Root, b: Root) -> int:
    """<a, b> = 2(a, b)/(b, b); an integer in {0, ±1, ±2, ±3} for roots."""
    bb = _ip_int(rs, b, b)
    if bb == 0:
        raise ValueError("pairing with the zero vector")
    q, r = divmod(2 * _ip_int(rs, a, b), bb)
    if r:
        raise IdentityViolation(f"non-integral pairing <{a},{b}>")
    return q


def reflect(rs: RootSystem, a: Root, b: Root) -> Root:
    """s_a(b) = b - <b, a> a."""
    k = pairing(rs, b, a)
    coeffs = tuple(y - k * x for x, y in zip(a.coeffs, b.coeffs))
    r = rs.lookup(coeffs)
    if r is None:
        raise IdentityViolation(f"s_{a}({b}) = {coeffs} is not a root of {rs.id}")
    return r


def _generate_positive_roots(gram, cartan) -> list[Root]:
    n = len(cartan)
    norms = [Fraction(gram[i][i]) for i in range(n)]

    def normsq(coeffs):
        return sum(
            (coeffs[i] * coeffs[j] * Fraction(gram[i][j]) for i in range(n) for j in range(n)),
            Fraction(0),
        )

    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    known = set(simple)
    levels = [simple]
    while True:
        nxt = []
        for g in levels[-1]:
            for i in range(n):
                # p = largest m with g - m*alpha_i a root
                p = 0
                v = list(g)
                while True:
                    v[i] -= 1
                    if tuple(v) in known:
                        p += 1
                    else:
                        break
                pair = sum(g[j] * cartan[j][i] for j in range(n))
                if p - pair >= 1:
                    b = list(g)
                    b[i] += 1
                    b = tuple(b)
                    if b not in known:
                        known.add(b)
                        nxt.append(b)
        if not nxt:
            break
        levels.append(nxt)
    roots = [Root(c, sum(c), normsq(c)) for lvl in levels for c in lvl]
    roots.sort(key=lambda r: (r.height, r.coeffs))
    for r in roots:
        if r.height == 1 and r.normsq != norms[r.coeffs.index(1)]:
            raise IdentityViolation("simple root length mismatch")
    return roots


@lru_cache(maxsize=None)
def build_root_system(rid: RootSystemId | str) -> RootSystem:
    if isinstance(rid, str):
        rid = RootSystemId.parse(rid)
    rid = rid.canonical()
    gram = gram_matrix(rid)
    cartan = cartan_from_gram(gram)
    roots = _generate_positive_roots(gram, cartan)
    return RootSystem(rid, gram, cartan, roots)


def height_distribution(rs: RootSystem) -> list[int]:
    """t_r = number of positive roots of height r, for r = 1 .. h-1."""
    counts = [0] * (rs.coxeter_number - 1)
    for r in rs.positive_roots:
        counts[r.height - 1] += 1
    return counts


def exponents_via_dual_partition(rs: RootSystem) -> list[int]:
    t = height_distribution(rs)
    if any(a < b for a, b in zip(t, t[1:])):
        raise IdentityViolation(f"height distribution of {rs.id} is not weakly decreasing: {t}")
    ext = [rs.rank] + t + [0]
    out = []
    for r in range(len(ext) - 1):
        out.extend([r] * (ext[r] - ext[r + 1]))
    return sorted(out)


def exponents_via_cartan_eigenvalues(rs: RootSystem, tol: float = 1e-9) -> tuple[list[int], list[float]]:
    """Exponents recovered from the Cartan spectrum 2 + 2cos(m pi / h).

    Returns the rounded exponents and, per eigenvalue, the distance of the
    unrounded value h/pi * arccos((e-2)/2) from its integer.
    """
    n = rs.rank
    g = np.array([[float(x) for x in row] for row in rs.gram])
    d = np.sqrt(np.diag(g))
    # C = 2 G N^-1 is similar to the symmetric 2 N^-1/2 G N^-1/2
    sym = 2 * g / np.outer(d, d)
    eig = np.linalg.eigvalsh(sym)
    h = rs.coxeter_number
    ms, residuals = [], []
    for e in eig:
        x = h / math.pi * math.acos(max(-1.0, min(1.0, (e - 2) / 2)))
        m = round(x)
        res = abs(x - m)
        back = abs(e - (2 + 2 * math.cos(m * math.pi / h)))
        if res >= tol or back >= tol:
            raise IdentityViolation(f"{rs.id}: eigenvalue {e} not of the form 2+2cos(m pi/h) (residual {res:.2e})")
        ms.append(m)
        residuals.append(res)
    if len(ms) != n:
        raise IdentityViolation("wrong number of eigenvalues")
    return sorted(ms), residuals


@dataclass(frozen=True)
class HeightProfile:
    theta_counts: tuple[int, ...]
    dual_partition: tuple[int, ...]
    top_roots: tuple[Root, ...]
    xi_sequence: tuple[Root, ...]
    lambda_chain: tuple[Root, ...]
    case_tag: str
    witness: dict = field(compare=False, default_factory=dict)

    @property
    def m(self) -> int:
        return len(self.top_roots)


def _check(cond: bool, msg: str):
    if not cond:
        raise IdentityViolation(msg)


def _lambda_chain(rs: RootSystem) -> list[Root]:
    """Shortest chain -theta = l0, l1, ..., lq in the extended diagram ending at a c_max vertex."""
    theta = rs.highest_root
    n = rs.rank
    c = theta.coeffs
    if rs.c_max == 1:
        return [-theta]
    # vertices: -1 for -theta, i for simple root i
    def adjacent(u: int, v: int) -> bool:
        if u == -1:
            return inner(rs, theta, rs.simple_roots[v]) > 0
        return rs.cartan[u][v] != 0 and u != v

    prev = {-1: None}
    frontier = [-1]
    target = None
    while frontier and target is None:
        nxt = []
        for u in frontier:
            for v in range(n):
                if v not in prev and adjacent(u, v):
                    prev[v] = u
                    nxt.append(v)
        for v in sorted(nxt):
            if c[v] == rs.c_max:
                target = v
                break
        frontier = sorted(nxt)
    path = []
    v = target
    while v is not None:
        path.append(v)
        v = prev[v]
    path.reverse()
    return [-theta if v == -1 else rs.simple_roots[v] for v in path]


def height_profile(rs: RootSystem) -> HeightProfile:
    """Top-of-poset structure U, Xi, Lambda with the identities relating them checked."""
    if rs.rank < 2:
        raise ValueError("height profile needs rank >= 2")
    n = rs.rank
    exps = list(rs.exponents)
    t = height_distribution(rs)
    dp = exponents_via_dual_partition(rs)
    m_l1 = exps[-2]
    top = sorted((r for r in rs.positive_roots if r.height > m_l1), key=lambda r: -r.height)
    m = len(top)
    _check(m == exps[-1] - exps[-2] == exps[1] - 1, f"|U| = {m} but m_l - m_(l-1) = {exps[-1] - exps[-2]}, m_2 - 1 = {exps[1] - 1}")
    _check([r.height for r in top] == list(range(rs.coxeter_number - 1, m_l1, -1)), "U is not a chain with one root per height")
    simple_set = {r.coeffs for r in rs.simple_roots}
    xis = [-top[0]]
    for i in range(m - 1):
        d = tuple(a - b for a, b in zip(top[i].coeffs, top[i + 1].coeffs))
        _check(d in simple_set, f"theta_{i + 1} - theta_{i + 2} = {d} is not simple")
        xis.append(rs.positive_roots[rs.index[d]])
    case1 = [i for i in range(1, m) if pairing(rs, top[i - 1], xis[i]) == 3]
    case = "CASE1" if case1 else "CASE2"
    lam = _lambda_chain(rs)
    q = len(lam) - 1
    theta_c = rs.highest_root.coeffs
    for s, l in enumerate(lam):
        cs = 1 if s == 0 else theta_c[l.coeffs.index(1)]
        _check(cs == s + 1, f"coefficient of theta at lambda_{s} is {cs}, expected {s + 1}")
    _check(len(lam) == rs.c_max, "|Lambda| != c_max")
    xi_keys = [x.coeffs for x in xis]
    if case == "CASE1":
        _check(case1 == [m - 2], f"Case 1 index {case1} != m-2")
        _check(len(set(xi_keys)) == m - 1 == exps[1] - 2, "Case 1 multiset Xi has wrong base size")
        _check(xi_keys[m - 1] == xi_keys[m - 2], "Case 1: xi_(m-1) should repeat xi_(m-2)")
        _check(q == m - 2, f"Case 1: q = {q}, expected m-2 = {m - 2}")
        _check(exps[1] == rs.c_max + 2, "Case 1: m_2 != c_max + 2")
    else:
        _check(len(set(xi_keys)) == m == exps[1] - 1, "Case 2: xi not pairwise distinct")
        _check(q == m - 1, f"Case 2: q = {q}, expected m-1 = {m - 1}")
        _check(exps[1] == rs.c_max + 1, "Case 2: m_2 != c_max + 1")
    for i in range(1, q + 1):
        _check(lam[i].coeffs == xis[i].coeffs, f"lambda_{i} != xi_{i}")
    _check(set(xi_keys) == {l.coeffs for l in lam}, "base set of Xi differs from Lambda")
    # Case 1 forces rank 2, but A2 and B2 are rank 2 and in Case 2
    _check((case == "CASE1") == (rs.id.family == "G"), "Case 1 must coincide with G2")
    _check(case == "CASE2" or n == 2, "Case 1 outside rank 2")
    _check((case == "CASE1") == (rs.c_max == exps[1] - 2), "Case 1 iff c_max = m_2 - 2")
    # differences of top roots
    for i in range(m):
        for j in range(i + 1, m):
            d = tuple(a - b for a, b in zip(top[i].coeffs, top[j].coeffs))
            if case == "CASE1" and (i, j) == (m - 3, m - 1):
                _check(all(x % 2 == 0 for x in d) and tuple(x // 2 for x in d) in simple_set, "theta_(m-2) - theta_m not in 2*Delta")
            else:
                _check(d in rs.index, f"theta_{i + 1} - theta_{j + 1} not a positive root")
    return HeightProfile(
        theta_counts=tuple(t),
        dual_partition=tuple(dp),
        top_roots=tuple(top),
        xi_sequence=tuple(xis),
        lambda_chain=tuple(lam),
        case_tag=case,
        witness={"m": m, "q": q, "c_max": rs.c_max, "m2": exps[1]},
    )


def _connected(vertices, edges) -> bool:
    vs = set(vertices)
    if not vs:
        return False
    start = next(iter(vs))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for a, b in edges:
            for x, y in ((a, b), (b, a)):
                if x == u and y in vs and y not in seen:
                    seen.add(y)
                    stack.append(y)
    return seen == vs


def sum_identity_check(rs: RootSystem) -> tuple[bool, dict]:
    """h = 2 * sum over positive mu of cos^2 angle(gamma, mu), for every positive gamma."""
    IP = rs.IP
    N = rs.normsq_int
    h = rs.coxeter_number
    bad = []
    for g in range(rs.n_positive):
        s = sum(Fraction(int(IP[g, k]) ** 2, int(N[g]) * int(N[k])) for k in range(rs.n_positive))
        if 2 * s != h:
            bad.append((str(rs.positive_roots[g]), str(2 * s)))
    return not bad, {"h": h, "violations": bad[:5]}


def root_core_invariants(rs: RootSystem) -> dict[str, tuple[bool, dict]]:
    """Catalog-level identities of a root system, keyed by short names."""
    out: dict[str, tuple[bool, dict]] = {}
    n, h, N = rs.rank, rs.coxeter_number, rs.n_positive
    exps = list(rs.exponents)
    cat = load_catalog().get(rs.id)
    out["catalog"] = (
        cat is not None and list(cat.exponents) == exps and [list(r) for r in cat.cartan] == [list(r) for r in rs.cartan],
        {"exponents": exps, "pinned": list(cat.exponents) if cat else None},
    )
    out["exponents(i)"] = (all(exps[j] + exps[n - 1 - j] == h for j in range(n)), {"exponents": exps, "h": h})
    out["exponents(ii)"] = (sum(exps) * 2 == n * h, {"sum": sum(exps), "lh/2": Fraction(n * h, 2)})
    strict = exps[0] == 1 and exps[-1] == h - 1 and (n == 1 or (exps[0] < exps[1] and exps[-2] < exps[-1]))
    out["exponents(iii)"] = (strict, {"m1": exps[0], "ml": exps[-1], "h-1": h - 1})
    out["exponents(iv)"] = (2 * N == n * h, {"|Phi+|": N, "lh/2": Fraction(n * h, 2)})
    out["exponents(v)"] = (h == rs.highest_root.height + 1, {"h": h, "ht(theta)": rs.highest_root.height})
    out["exponents(vi)"] = sum_identity_check(rs)
    dp = exponents_via_dual_partition(rs)
    out["thm:dual"] = (dp == exps and (cat is None or dp == list(cat.exponents)), {"dual_partition": dp})
    try:
        eig, res = exponents_via_cartan_eigenvalues(rs)
        out["lem:Cartan"] = (eig == exps, {"eigen_exponents": eig, "max_residual": max(res)})
    except IdentityViolation as e:
        out["lem:Cartan"] = (False, {"error": str(e)})
    # closure under all reflections: b - <b,a> a must be a root for all positive a, b
    pair = 2 * rs.IP // rs.normsq_int[None, :]  # pair[b, a] = <b, a>
    exact = np.all((2 * rs.IP) % rs.normsq_int[None, :] == 0)
    roots = set(all_roots(rs))
    closed = bool(exact)
    for a in range(N):
        imgs = rs.R - pair[:, a : a + 1] * rs.R[a]
        if not all(tuple(int(x) for x in v) in roots for v in imgs):
            closed = False
            break
    out["closure"] = (closed, {"n_roots": 2 * N})
    # support connectivity and connected-subgraph sums
    edges = rs.dynkin_edges
    supp_ok = all(_connected([i for i, c in enumerate(r.coeffs) if c], edges) for r in rs.positive_roots)
    sums_ok = True
    if n <= 10:
        for mask in range(1, 1 << n):
            vs = [i for i in range(n) if mask >> i & 1]
            if _connected(vs, edges) and not rs.is_root(tuple(int(mask >> i & 1) for i in range(n))):
                sums_ok = False
    out["lem:eg"] = (supp_ok and sums_ok, {"support_connected": supp_ok, "connected_sums_are_roots": sums_ok})
    m2_half = n >= 2 and 2 * exps[1] == h
    out["lem:repeat"] = (
        (not m2_half) or (n <= 4 and (n < 4 or rs.id.family == "D")),
        {"m2": exps[1] if n >= 2 else None, "h/2": Fraction(h, 2)},
    )
    out["rem:well-known"] = (all(exps.count(e) <= 2 for e in exps), {"exponents": exps})
    return out


def structural_lemma_checks(rs: RootSystem) -> dict[str, tuple[bool, dict]]:
    """Statements about the roots at height m_(l-1) and the highest-root neighbourhood."""
    if rs.rank < 3:
        raise ValueError("structural lemma checks need rank >= 3")
    out: dict[str, tuple[bool, dict]] = {}
    n = rs.rank
    exps = list(rs.exponents)
    m_l1 = exps[-2]
    gam = rs.theta(m_l1)
    prof = height_profile(rs)
    U = prof.top_roots
    out["prop:long"] = (any(rs.is_long(g) for g in gam), {"Theta(m_(l-1))": [str(g) for g in gam]})
    irr_ok, bad = True, []
    for g in gam:
        for th in U:
            d = [a - b for a, b in zip(th.coeffs, g.coeffs)]
            if not any(all(x % k == 0 for x in d) and tuple(x // k for x in d) in rs.index for k in (1, 2, 3)):
                irr_ok = False
                bad.append((str(th), str(g)))
    out["prop:irr"] = (irr_ok, {"violations": bad})
    if n >= 5:
        out["cor:exactly2"] = (len(gam) == 2 and exps[-3] < exps[-2], {"|Theta(m_(l-1))|": len(gam), "m_(l-2)": exps[-3], "m_(l-1)": m_l1})
    if n <= 4:
        out["lem:3roots"] = three_roots_check(rs)
    out["thm:iso"] = (exps[1] == rs.c_max + 1, {"m2": exps[1], "c_max": rs.c_max, "case": prof.case_tag})
    out.update(highest_root_neighbourhood_checks(rs))
    return out


def all_roots(rs: RootSystem) -> list[tuple[int, ...]]:
    pos = [r.coeffs for r in rs.positive_roots]
    return pos + [tuple(-c for c in r) for r in pos]


def three_roots_check(rs: RootSystem) -> tuple[bool, dict]:
    """If b1+b2+b3 is a root (no b_i + b_j = 0), at least two partial sums are roots."""
    roots = all_roots(rs)
    rset = set(roots)
    zero = tuple([0] * rs.rank)
    checked = 0
    bad = []
    arr = np.array(roots, dtype=np.int64)
    for i, a in enumerate(roots):
        ab = arr + np.array(a)  # a + b for all b
        for j, b in enumerate(roots):
            s_ab = tuple(int(x) for x in ab[j])
            if s_ab == zero:
                continue
            in_ab = s_ab in rset
            for c in roots:
                s_ac = tuple(x + y for x, y in zip(a, c))
                s_bc = tuple(x + y for x, y in zip(b, c))
                if s_ac == zero or s_bc == zero:
                    continue
                total = tuple(x + y for x, y in zip(s_ab, c))
                if total not in rset:
                    continue
                checked += 1
                if in_ab + (s_ac in rset) + (s_bc in rset) < 2:
                    bad.append((a, b, c))
    return not bad, {"triples": checked, "violations": bad[:5]}


def highest_root_neighbourhood_checks(rs: RootSystem) -> dict[str, tuple[bool, dict]]:
    """The extended-diagram picture at -theta: c_max corollary and the possibilities lemma."""
    out = {}
    n = rs.rank
    theta = rs.highest_root
    c = theta.coeffs
    simple = rs.simple_roots
    nbrs = [i for i in range(n) if inner(rs, theta, simple[i]) != 0]
    degree = [sum(1 for j in range(n) if j != i and rs.cartan[i][j] != 0) for i in range(n)]
    if rs.c_max == 1:
        same_len = len({r.normsq for r in rs.positive_roots}) == 1
        chain = all(d <= 2 for d in degree) and len(rs.dynkin_edges) == n - 1
        terminal = sorted(nbrs) == sorted(i for i in range(n) if degree[i] <= 1)
        out["cor:c-max"] = (same_len and chain and terminal, {"c_max": 1, "theta_neighbours": nbrs})
        return out
    ok = len(nbrs) == 1
    lam = nbrs[0] if ok else None
    witness = {"c_max": rs.c_max, "theta_neighbours": nbrs}
    if ok:
        p = pairing(rs, theta, simple[lam])
        ok = p in (1, 2) and c[lam] == 2
        witness["<theta,lambda>"] = p
        for i in range(n):
            for j in range(n):
                if i != j and rs.cartan[i][j] != 0 and c[i] == 1 and c[j] >= 2:
                    if not (degree[i] == 1 and rs.cartan[j][i] == -1):
                        ok = False
    out["cor:c-max"] = (ok, witness)
    if lam is None:
        return out
    gammas = [j for j in range(n) if j != lam and rs.cartan[lam][j] != 0]
    cg = sorted((c[j] for j in gammas), reverse=True)
    p = pairing(rs, theta, simple[lam])
    if p == 2:
        poss = "1" if len(gammas) == 1 and cg[0] in (1, 2) else None
    else:
        if len(gammas) == 3 and cg == [1, 1, 1]:
            poss = "2a"
        elif len(gammas) == 2 and cg == [2, 1]:
            g2 = next(j for j in gammas if c[j] == 1)
            poss = "2b" if degree[g2] == 1 and rs.is_long(simple[g2]) else None
        elif len(gammas) == 1 and cg == [3]:
            poss = "2c"
        else:
            poss = None
    cases_ok = poss is not None and (poss != "2a" or rs.id == RootSystemId("D", 4)) and (p != 1 or rs.is_long(simple[lam]))
    out["lem:cases"] = (cases_ok, {"possibility": poss, "<theta,lambda>": p, "neighbour_coeffs": cg})
    out["_possibility"] = (True, {"possibility": poss, "lambda": lam, "gammas": gammas})
    return out
