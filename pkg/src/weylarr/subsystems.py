"""Parabolic subsystems, Dynkin type recognition, and W-orbits of orthogonal root pairs.

Subsystems and pairs refer to roots by their index in
``RootSystem.positive_roots``; a pair of roots is always taken up to sign.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .linalg import integer_nullspace, solve
from .rootsys import Root, RootSystem, RootSystemId, pairing


def _as_index(rs: RootSystem, r) -> int:
    if isinstance(r, (int, np.integer)):
        return int(r)
    if isinstance(r, Root):
        return rs.positive_index(r)
    return rs.positive_index(rs.make_root(r))


def span_mask(rs: RootSystem, gens) -> np.ndarray:
    """Boolean mask over positive roots: which lie in span(gens)."""
    rows = [list(rs.R[i]) for i in gens]
    Y = integer_nullspace(rows, rs.rank)
    if not Y:
        return np.ones(rs.n_positive, dtype=bool)
    Y = np.array(Y, dtype=np.int64).T
    return ~np.any(rs.R @ Y, axis=1)


def identify_type(cartan, normsq) -> RootSystemId:
    """Dynkin type of a connected Cartan matrix (vertex lengths used for B vs C)."""
    n = len(cartan)
    weights = {}
    for i in range(n):
        for j in range(i + 1, n):
            if cartan[i][j] != 0:
                weights[(i, j)] = cartan[i][j] * cartan[j][i]
    adj = {i: [] for i in range(n)}
    for i, j in weights:
        adj[i].append(j)
        adj[j].append(i)
    if n == 1:
        return RootSystemId("A", 1)
    if len(weights) != n - 1:
        raise ValueError("Dynkin diagram is not a tree")
    w = sorted(weights.values())
    if 3 in w:
        if n != 2:
            raise ValueError("triple bond outside rank 2")
        return RootSystemId("G", 2)
    if 2 in w:
        if w.count(2) != 1 or any(len(a) > 2 for a in adj.values()):
            raise ValueError("not a classical/F4 diagram")
        if n == 2:
            return RootSystemId("B", 2)
        ends = [i for i in range(n) if len(adj[i]) == 1]
        order = [ends[0]]
        while len(order) < n:
            order.append(next(j for j in adj[order[-1]] if j not in order))
        (a, b), = [e for e, v in weights.items() if v == 2]
        pos = sorted((order.index(a), order.index(b)))
        long_n = max(normsq)
        n_short = sum(1 for x in normsq if x != long_n)
        if n == 4 and pos == [1, 2]:
            return RootSystemId("F", 4)
        if pos not in ([0, 1], [n - 2, n - 1]):
            raise ValueError("double bond in the interior of a chain")
        if n_short == 1:
            return RootSystemId("B", n)
        if n_short == n - 1:
            return RootSystemId("C", n)
        raise ValueError("inconsistent root lengths")
    degrees = sorted(len(a) for a in adj.values())
    if degrees[-1] <= 2:
        return RootSystemId("A", n)
    if degrees[-1] > 3 or degrees.count(3) > 1:
        raise ValueError("not a Dynkin diagram")
    centre = next(i for i in range(n) if len(adj[i]) == 3)
    arms = []
    for start in adj[centre]:
        length, prev, cur = 1, centre, start
        while True:
            nxt = [j for j in adj[cur] if j != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return RootSystemId("D", n)
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return RootSystemId("E", n)
    raise ValueError(f"not a Dynkin diagram (arms {arms})")


def type_label_str(labels) -> str:
    return "x".join(str(t) for t in labels) if labels else "empty"


def _n_positive(rid: RootSystemId) -> int:
    f, n = rid.family, rid.rank
    return {
        "A": n * (n + 1) // 2,
        "B": n * n,
        "C": n * n,
        "D": n * (n - 1),
        "E": {6: 36, 7: 63, 8: 120}.get(n, 0),
        "F": 24,
        "G": 6,
    }[f]


@dataclass(frozen=True, eq=False)
class Subsystem:
    ambient: RootSystem = field(repr=False)
    positive: tuple[int, ...]
    base: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    type_label: tuple[RootSystemId, ...]

    @property
    def rank(self) -> int:
        return len(self.base)

    @property
    def n_positive(self) -> int:
        return len(self.positive)

    @property
    def roots(self) -> list[Root]:
        pos = [self.ambient.positive_roots[i] for i in self.positive]
        return pos + [-r for r in pos]

    @property
    def label(self) -> str:
        return type_label_str(self.type_label)

    @property
    def is_irreducible(self) -> bool:
        return len(self.components) == 1

    @cached_property
    def coxeter_number(self) -> int:
        """h = 2|Psi+|/rank, meaningful for irreducible subsystems."""
        return 2 * self.n_positive // self.rank

    def key(self) -> tuple[int, ...]:
        return self.positive

    def __eq__(self, other):
        return isinstance(other, Subsystem) and self.ambient is other.ambient and self.positive == other.positive

    def __hash__(self):
        return hash((id(self.ambient), self.positive))

    @cached_property
    def _base_rows(self) -> list[list[int]]:
        return [[int(x) for x in self.ambient.R[b]] for b in self.base]

    def local_coeffs(self, idx: int) -> list[int]:
        """Coefficients of a root of this subsystem over its base."""
        rows = self._base_rows
        target = [int(x) for x in self.ambient.R[idx]]
        # solve target = sum c_b b  => columns are base vectors
        cols = [list(col) for col in zip(*rows)]
        sol = solve(cols, target)
        if sol is None:
            raise ValueError(f"{self.ambient.positive_roots[idx]} is not in this subsystem")
        if any(x.denominator != 1 for x in sol):
            raise ValueError("non-integral local coefficients")
        return [int(x) for x in sol]

    @cached_property
    def highest_root(self) -> int:
        """Index of the root of maximal local height (irreducible subsystems)."""
        return max(self.positive, key=lambda i: sum(self.local_coeffs(i)))

    @cached_property
    def c_max(self) -> int:
        return max(self.local_coeffs(self.highest_root))


def _indecomposables(rs: RootSystem, pos: list[int]) -> list[int]:
    sub = rs.R[pos]
    keys = {tuple(int(x) for x in v): i for v, i in zip(sub, pos)}
    dec = set()
    for a in range(len(pos)):
        sums = sub[a] + sub[a + 1 :]
        for v in sums:
            k = tuple(int(x) for x in v)
            if k in keys:
                dec.add(keys[k])
    return [i for i in pos if i not in dec]


def _components(rs: RootSystem, idx: list[int]) -> list[list[int]]:
    """Connected components of the non-orthogonality graph on the given roots."""
    parent = {i: i for i in idx}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if rs.IP[idx[a], idx[b]] != 0:
                ra, rb = find(idx[a]), find(idx[b])
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for i in idx:
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def subsystem_from_mask(rs: RootSystem, mask) -> Subsystem:
    pos = [int(i) for i in np.flatnonzero(mask)]
    base = _indecomposables(rs, pos)
    comps = _components(rs, base)
    labels = []
    for comp in comps:
        cartan = [[pairing(rs, rs.positive_roots[i], rs.positive_roots[j]) for j in comp] for i in comp]
        labels.append(identify_type(cartan, [int(rs.normsq_int[i]) for i in comp]))
    order = sorted(range(len(comps)), key=lambda k: (labels[k], comps[k]))
    return Subsystem(
        ambient=rs,
        positive=tuple(pos),
        base=tuple(base),
        components=tuple(tuple(comps[k]) for k in order),
        type_label=tuple(labels[k] for k in order),
    )


def span_subsystem(rs: RootSystem, gens) -> Subsystem:
    """Phi ∩ span(gens), with its base, components and Dynkin type."""
    idx = [_as_index(rs, g) for g in gens]
    if not idx:
        raise ValueError("empty generating set")
    return subsystem_from_mask(rs, span_mask(rs, idx))


def component_subsystems(sub: Subsystem) -> list[Subsystem]:
    return [span_subsystem(sub.ambient, comp) for comp in sub.components]


def check_subsystem(sub: Subsystem) -> bool:
    """Root counts agree with the labeled types and the base spans the subsystem."""
    per_comp = [span_subsystem(sub.ambient, c) for c in sub.components]
    return sum(c.n_positive for c in per_comp) == sub.n_positive and all(
        c.n_positive == _n_positive(t) for c, t in zip(per_comp, sub.type_label)
    )


def local_height(sub: Subsystem, root) -> int:
    """Sum of the coefficients of a root of ``sub`` over the base of ``sub``."""
    idx = _as_index(sub.ambient, root)
    if idx not in sub.positive:
        raise ValueError(f"{sub.ambient.positive_roots[idx]} is not a positive root of the subsystem")
    return sum(sub.local_coeffs(idx))


def pair_key(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class PairClassification:
    pair: tuple[Root, Root]
    indices: tuple[int, int]
    is_orthogonal: bool
    is_a12: bool
    is_ro: bool
    span_type: tuple[RootSystemId, ...]

    @property
    def span_label(self) -> str:
        return type_label_str(self.span_type)


def perp_set(rs: RootSystem, i: int) -> frozenset[int]:
    return frozenset(int(k) for k in np.flatnonzero(rs.IP[i] == 0))


def is_ro_indices(rs: RootSystem, i: int, j: int) -> bool:
    if rs.IP[i, j] != 0:
        return False
    return perp_set(rs, i) - {j} == perp_set(rs, j) - {i}


def span_count(rs: RootSystem, i: int, j: int) -> int:
    return int(span_mask(rs, [i, j]).sum())


def classify_pair(rs: RootSystem, b1, b2) -> PairClassification:
    i, j = _as_index(rs, b1), _as_index(rs, b2)
    if i == j:
        raise ValueError("the two roots are proportional")
    i, j = pair_key(i, j)
    sub = span_subsystem(rs, [i, j])
    orth = bool(rs.IP[i, j] == 0)
    return PairClassification(
        pair=(rs.positive_roots[i], rs.positive_roots[j]),
        indices=(i, j),
        is_orthogonal=orth,
        is_a12=sub.n_positive == 2,
        is_ro=is_ro_indices(rs, i, j),
        span_type=sub.type_label,
    )


def orthogonal_span_count(rs: RootSystem, i: int, j: int) -> int:
    """Positive roots in span{b_i, b_j} for an orthogonal pair, by orthogonal projection."""
    n1, n2 = int(rs.normsq_int[i]), int(rs.normsq_int[j])
    lhs = rs.R * (n1 * n2)
    rhs = np.outer(rs.IP[:, i] * n2, rs.R[i]) + np.outer(rs.IP[:, j] * n1, rs.R[j])
    return int(np.all(lhs == rhs, axis=1).sum())


def a12_pairs(rs: RootSystem) -> list[tuple[int, int]]:
    """All A1^2 sets as sorted index pairs."""
    out = []
    N = rs.n_positive
    for i in range(N):
        for j in range(i + 1, N):
            if rs.IP[i, j] == 0 and orthogonal_span_count(rs, i, j) == 2:
                out.append((i, j))
    return out


@dataclass(frozen=True)
class PairOrbit:
    index: int
    representative: tuple[int, int]
    members: tuple[tuple[int, int], ...]
    is_ro: bool
    simple_representative: tuple[int, int] | None

    @property
    def size(self) -> int:
        return len(self.members)


def pair_orbits(rs: RootSystem) -> list[PairOrbit]:
    """W-orbits of A1^2 sets, found by closing each pair under the simple reflections."""
    if rs.rank < 3:
        raise ValueError("pair orbits need rank >= 3")
    pairs = a12_pairs(rs)
    pair_set = set(pairs)
    idx, _ = rs.reflection_table
    simple_idx = {rs.positive_index(a) for a in rs.simple_roots}
    seen: set[tuple[int, int]] = set()
    orbits = []
    for p in pairs:
        if p in seen:
            continue
        orbit = {p}
        queue = deque([p])
        while queue:
            a, b = queue.popleft()
            for s in range(rs.rank):
                q = pair_key(int(idx[s, a]), int(idx[s, b]))
                if q not in orbit:
                    if q not in pair_set:
                        raise AssertionError(f"reflection of an A1^2 set {q} is not A1^2")
                    orbit.add(q)
                    queue.append(q)
        seen |= orbit
        members = tuple(sorted(orbit))
        ro_flags = {is_ro_indices(rs, a, b) for a, b in members}
        if len(ro_flags) != 1:
            raise AssertionError("RO property is not constant on a W-orbit")
        simple = next((m for m in members if m[0] in simple_idx and m[1] in simple_idx), None)
        orbits.append(PairOrbit(len(orbits), members[0], members, ro_flags.pop(), simple))
    return orbits


def theta_perp_decomposition(rs: RootSystem) -> tuple[list[Subsystem], list[int]]:
    """Irreducible components of the roots orthogonal to the highest root and their Coxeter numbers."""
    if rs.rank < 2:
        raise ValueError("rank >= 2 required")
    t = rs.positive_index(rs.highest_root)
    mask = rs.IP[t] == 0
    whole = subsystem_from_mask(rs, mask)
    if not np.array_equal(span_mask(rs, list(whole.positive)) if whole.positive else mask, mask):
        raise AssertionError("theta-perp is not parabolic")
    comps = component_subsystems(whole) if whole.positive else []
    return comps, [c.coxeter_number for c in comps]


def m2_rank3(sub: Subsystem) -> int:
    """Second exponent of a rank-3 irreducible subsystem, h/2 = |Psi+|/3."""
    if sub.rank != 3:
        raise ValueError("rank-3 subsystem required")
    q, r = divmod(sub.n_positive, 3)
    if r:
        raise AssertionError("|Psi+| not divisible by 3")
    return q
