"""Independent Euclidean models of the root systems, used only as test oracles.

Roots are integer vectors scaled by 2 so that the half-integer E8/F4 roots
stay integral.
"""

from itertools import combinations, product

import numpy as np


def _pm_pairs(n):
    out = []
    for i, j in combinations(range(n), 2):
        for si, sj in product((2, -2), repeat=2):
            v = [0] * n
            v[i], v[j] = si, sj
            out.append(v)
    return out


def _units(n, size):
    out = []
    for i in range(n):
        for s in (size, -size):
            v = [0] * n
            v[i] = s
            out.append(v)
    return out


def _e8():
    roots = _pm_pairs(8)
    for signs in product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.append(list(signs))
    return roots


def euclidean_roots(family: str, n: int) -> np.ndarray:
    if family == "A":
        roots = []
        for i in range(n + 1):
            for j in range(n + 1):
                if i != j:
                    v = [0] * (n + 1)
                    v[i], v[j] = 2, -2
                    roots.append(v)
    elif family == "B":
        roots = _pm_pairs(n) + _units(n, 2)
    elif family == "C":
        roots = _pm_pairs(n) + _units(n, 4)
    elif family == "D":
        roots = _pm_pairs(n)
    elif family == "F":
        roots = _pm_pairs(4) + _units(4, 2) + [list(s) for s in product((1, -1), repeat=4)]
    elif family == "G":
        roots = []
        for i in range(3):
            for j in range(3):
                if i != j:
                    v = [0] * 3
                    v[i], v[j] = 2, -2
                    roots.append(v)
                    w = [-2] * 3
                    w[i], w[j] = 4, -2
                    roots.append(w)
        roots = [list(r) for r in {tuple(r) for r in roots} | {tuple(-x for x in r) for r in roots}]
    elif family == "E":
        e8 = np.array(_e8())
        if n == 8:
            return e8
        a = np.array([0, 0, 0, 0, 0, 0, 2, 2])
        keep = e8 @ a == 0
        if n == 6:
            b = np.array([0, 0, 0, 0, 0, 2, -2, 0])
            keep &= e8 @ b == 0
        return e8[keep]
    else:
        raise ValueError(family)
    return np.array(roots)


def positive_half(roots: np.ndarray) -> np.ndarray:
    """Roots positive for a generic linear functional."""
    rng = np.random.default_rng(7)
    f = rng.normal(size=roots.shape[1])
    return roots[roots @ f > 0]


def pair_census(family: str, n: int) -> tuple[int, int]:
    """(number of A1^2 sets, number of those that are RO) computed in the Euclidean model."""
    allr = euclidean_roots(family, n)
    pos = positive_half(allr)
    G = pos @ pos.T
    a12 = ro = 0
    N = len(pos)
    for i in range(N):
        for j in range(i + 1, N):
            if G[i, j] != 0:
                continue
            a, b = pos[i], pos[j]
            na, nb = G[i, i], G[j, j]
            # r lies in span(a, b) iff r = (r.a/na) a + (r.b/nb) b
            lhs = pos * (na * nb)
            rhs = np.outer(G[:, i] * nb, a) + np.outer(G[:, j] * na, b)
            if np.all(lhs == rhs, axis=1).sum() != 2:
                continue
            a12 += 1
            pi = set(np.flatnonzero(G[i] == 0)) - {j}
            pj = set(np.flatnonzero(G[j] == 0)) - {i}
            ro += pi == pj
    return a12, ro


def _distinct_lines(vectors: np.ndarray) -> int:
    vectors = vectors[np.any(vectors != 0, axis=1)]
    if len(vectors) == 0:
        return 0
    g = np.gcd.reduce(np.abs(vectors), axis=1)
    v = vectors // g[:, None]
    first = v[np.arange(len(v)), np.argmax(v != 0, axis=1)]
    v[first < 0] *= -1
    return len({tuple(r) for r in v})


def restriction_census(family: str, n: int) -> dict:
    """Counter of (|A^{H_a}| - |A^X|, |A^{H_b}| - |A^X|, |A^X|, RO) over A1^2 sets {a, b}."""
    from collections import Counter

    pos = positive_half(euclidean_roots(family, n))
    G = pos @ pos.T
    N = len(pos)

    def proj(idx):
        # integer multiple of the orthogonal projection onto the complement of the given roots
        P = pos.copy()
        for i in idx:
            P = P * G[i, i] - np.outer(P @ pos[i], pos[i])
        return P

    h_size = [_distinct_lines(proj([i])) for i in range(N)]
    out = Counter()
    for i in range(N):
        for j in range(i + 1, N):
            if G[i, j] != 0:
                continue
            lhs = pos * (G[i, i] * G[j, j])
            rhs = np.outer(G[:, i] * G[j, j], pos[i]) + np.outer(G[:, j] * G[i, i], pos[j])
            if np.all(lhs == rhs, axis=1).sum() != 2:
                continue
            x = _distinct_lines(proj([i, j]))
            ro = set(np.flatnonzero(G[i] == 0)) - {j} == set(np.flatnonzero(G[j] == 0)) - {i}
            out[(h_size[i] - x, h_size[j] - x, x, bool(ro))] += 1
    return out
