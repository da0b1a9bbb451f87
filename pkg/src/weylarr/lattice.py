"""Intersection lattices of central arrangements and their characteristic polynomials.

An arrangement is a list of integer linear forms on Q^n.  Flats are keyed by
the bitmask of hyperplanes containing them and carry an integer basis of the
flat as a subspace, so covers are found by restricting every form to the flat
and grouping the nonzero restrictions up to scalar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

MAX_AMBIENT_RANK = 6
MAX_HYPERPLANES = 80


class LatticeBoundExceeded(Exception):
    """The arrangement is larger than the engine is willing to enumerate."""


@dataclass(frozen=True)
class CharPoly:
    """Integer polynomial; ``coeffs[d]`` is the coefficient of t^d."""

    coeffs: tuple[int, ...]

    @classmethod
    def from_roots(cls, roots) -> "CharPoly":
        c = [1]
        for r in roots:
            nxt = [0] * (len(c) + 1)
            for d, a in enumerate(c):
                nxt[d + 1] += a
                nxt[d] -= r * a
            c = nxt
        return cls(tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        return sum(a * t**d for d, a in enumerate(self.coeffs))

    def __mul__(self, other: "CharPoly") -> "CharPoly":
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return CharPoly(tuple(out))

    def has_root(self, r: int) -> bool:
        return self(r) == 0

    def __str__(self) -> str:
        terms = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[d]
            if a == 0:
                continue
            mono = "" if d == 0 else ("t" if d == 1 else f"t^{d}")
            if mono and abs(a) == 1:
                s = mono
            else:
                s = f"{abs(a)}{'*' + mono if mono else ''}"
            terms.append(("-" if a < 0 else "+") + s)
        if not terms:
            return "0"
        out = " ".join(terms)
        return out[1:] if out.startswith("+") else out


@dataclass
class Flat:
    mask: int
    dim: int
    basis: np.ndarray = field(repr=False)  # n x dim integer columns
    parents: list[int] = field(default_factory=list, repr=False)
    mu: int = 0

    @property
    def hyperplanes(self) -> list[int]:
        m, i, out = self.mask, 0, []
        while m:
            if m & 1:
                out.append(i)
            m >>= 1
            i += 1
        return out


def _normalize_rows(rows: np.ndarray) -> np.ndarray:
    """Primitive integer rows with first nonzero entry positive; zero rows kept."""
    g = np.gcd.reduce(np.abs(rows), axis=1)
    g[g == 0] = 1
    out = rows // g[:, None]
    nz = out != 0
    first = np.argmax(nz, axis=1)
    lead = out[np.arange(len(out)), first]
    out[lead < 0] *= -1
    return out


def _normalize_cols(P: np.ndarray) -> np.ndarray:
    g = np.gcd.reduce(np.abs(P), axis=0)
    g[g == 0] = 1
    return P // g[None, :]


def _kernel_basis(c: np.ndarray) -> np.ndarray:
    """Integer basis (columns) of {t : c . t = 0} for a nonzero integer vector c."""
    d = len(c)
    p = int(np.flatnonzero(c)[0])
    cols = []
    for j in range(d):
        if j == p:
            continue
        v = np.zeros(d, dtype=object)
        v[j] = int(c[p])
        v[p] = -int(c[j])
        g = gcd(*(int(x) for x in v))
        cols.append(v // g)
    return np.array(cols, dtype=object).T.reshape(d, d - 1)


def _rank(forms: np.ndarray) -> int:
    from .linalg import rank

    return rank([[int(x) for x in row] for row in forms])


@dataclass
class Lattice:
    n: int
    forms: np.ndarray
    levels: list[dict[int, Flat]]
    complete: bool

    @property
    def rank(self) -> int:
        return len(self.levels) - 1

    def flats(self):
        for lvl in self.levels:
            yield from lvl.values()

    def char_poly(self) -> CharPoly:
        if not self.complete:
            raise ValueError("lattice was truncated; characteristic polynomial unavailable")
        c = [0] * (self.n + 1)
        for f in self.flats():
            c[f.dim] += f.mu
        return CharPoly(tuple(c))

    @property
    def size(self) -> int:
        return sum(len(lvl) for lvl in self.levels)


def check_forms(forms, n: int) -> np.ndarray:
    F = np.array([[int(x) for x in f] for f in forms], dtype=object).reshape(len(forms), n)
    if len(F):
        prim = _normalize_rows(F.astype(object))
        if any(not any(row) for row in prim):
            raise ValueError("zero linear form")
        keys = [tuple(row) for row in prim]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate (proportional) hyperplanes")
    return F


def build_lattice(forms, n: int, max_rank: int | None = None, enforce_bounds: bool = True) -> Lattice:
    """Enumerate flats level by level (codimension 0, 1, ...), with Moebius values.

    With ``max_rank`` the enumeration stops after that codimension.
    """
    F = check_forms(forms, n)
    m = len(F)
    if enforce_bounds:
        r = _rank(F) if m else 0
        if r > MAX_AMBIENT_RANK or m > MAX_HYPERPLANES:
            raise LatticeBoundExceeded(f"rank {r}, {m} hyperplanes exceeds bound ({MAX_AMBIENT_RANK}, {MAX_HYPERPLANES})")
    top = Flat(mask=0, dim=n, basis=np.eye(n, dtype=object), mu=1)
    levels = [{0: top}]
    complete = True
    while True:
        k = len(levels) - 1
        if max_rank is not None and k >= max_rank:
            complete = not any(_has_cover(F, f) for f in levels[-1].values())
            break
        nxt: dict[int, Flat] = {}
        for z in levels[-1].values():
            if z.dim == 0:
                continue
            restricted = F.dot(z.basis)
            prim = _normalize_rows(restricted)
            groups: dict[tuple, int] = {}
            for i in range(m):
                if z.mask >> i & 1:
                    continue
                key = tuple(prim[i])
                groups[key] = groups.get(key, 0) | (1 << i)
            for key, gmask in groups.items():
                xmask = z.mask | gmask
                x = nxt.get(xmask)
                if x is None:
                    B = _kernel_basis(np.array(key, dtype=object))
                    P = _normalize_cols(z.basis.dot(B))
                    x = Flat(mask=xmask, dim=z.dim - 1, basis=P)
                    nxt[xmask] = x
                x.parents.append(z.mask)
        if not nxt:
            break
        prev = levels[-1]
        for x in nxt.values():
            low = x.mask & -x.mask
            x.mu = -sum(prev[y].mu for y in x.parents if not (y & low))
        levels.append(nxt)
    return Lattice(n=n, forms=F, levels=levels, complete=complete)


def _has_cover(F, z: Flat) -> bool:
    if z.dim == 0:
        return False
    m = len(F)
    return any(not (z.mask >> i & 1) for i in range(m))


def char_poly(forms, n: int, enforce_bounds: bool = True) -> CharPoly:
    """chi(A, t) = sum over flats of mu(X) t^dim X."""
    if len(forms) == 0:
        return CharPoly(tuple([0] * n + [1]))
    return build_lattice(forms, n, enforce_bounds=enforce_bounds).char_poly()
