"""Sparse multivariate polynomials with exact rational coefficients.

Monomials are packed into a single integer, one fixed-width field per
variable with variable 0 in the most significant field.  Integer order on the
packed keys is then lexicographic order on exponent vectors, products of
monomials are integer sums, and each field carries a guard bit so
divisibility of monomials is a single subtraction.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Sequence

FIELD = 12  # bits per variable, the top one is the guard bit
_LOW = (1 << (FIELD - 1)) - 1
MAX_DEGREE = _LOW


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


class Poly:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms = {k: _norm(v) for k, v in (terms or {}).items() if v != 0}

    # construction -----------------------------------------------------
    @staticmethod
    def _shift(n: int, i: int) -> int:
        return FIELD * (n - 1 - i)

    @classmethod
    def pack(cls, exps: Sequence[int]) -> int:
        n = len(exps)
        key = 0
        for i, e in enumerate(exps):
            if e < 0 or e > MAX_DEGREE:
                raise ValueError("exponent out of range")
            key |= e << cls._shift(n, i)
        return key

    def unpack(self, key: int) -> tuple[int, ...]:
        return tuple((key >> self._shift(self.n, i)) & _LOW for i in range(self.n))

    @classmethod
    def const(cls, n: int, c) -> "Poly":
        return cls(n, {0: c})

    @classmethod
    def var(cls, n: int, i: int) -> "Poly":
        return cls(n, {1 << cls._shift(n, i): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "Poly":
        return cls(len(exps), {cls.pack(exps): c})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "Poly":
        n = len(coeffs)
        return cls(n, {1 << cls._shift(n, i): c for i, c in enumerate(coeffs) if c != 0})

    @classmethod
    def from_exps(cls, n: int, items: Iterable[tuple[Sequence[int], object]]) -> "Poly":
        out: dict[int, object] = {}
        for e, c in items:
            k = cls.pack(e)
            out[k] = out.get(k, 0) + c
        return cls(n, out)

    # basic predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(k == 0 for k in self.terms)

    def constant_term(self):
        return self.terms.get(0, 0)

    def total_degree_of(self, key: int) -> int:
        s = 0
        while key:
            s += key & _LOW
            key >>= FIELD
        return s

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(self.total_degree_of(k) for k in self.terms)

    def is_homogeneous(self) -> bool:
        return len({self.total_degree_of(k) for k in self.terms}) <= 1

    def __len__(self) -> int:
        return len(self.terms)

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.n != self.n:
                raise ValueError("polynomials in different numbers of variables")
            return other
        return Poly.const(self.n, other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Poly(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if other == 0:
                return Poly(self.n)
            return Poly(self.n, {k: v * other for k, v in self.terms.items()})
        other = self._coerce(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, object] = {}
        get = out.get
        for kb, vb in b.items():
            for ka, va in a.items():
                k = ka + kb
                out[k] = get(k, 0) + va * vb
        return Poly(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        result = Poly.const(self.n, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            other = Poly.const(self.n, other)
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    # calculus and substitution -------------------------------------------
    def diff(self, i: int) -> "Poly":
        sh = self._shift(self.n, i)
        unit = 1 << sh
        out = {}
        for k, v in self.terms.items():
            e = (k >> sh) & _LOW
            if e:
                out[k - unit] = v * e
        return Poly(self.n, out)

    def subs_linear(self, images: Sequence["Poly"]) -> "Poly":
        """Substitute x_i -> images[i] (polynomials in a common, possibly different, ring)."""
        if len(images) != self.n:
            raise ValueError("one image per variable required")
        m = images[0].n
        powers: list[dict[int, Poly]] = [{0: Poly.const(m, 1)} for _ in range(self.n)]

        def pw(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = pw(i, e - 1) * images[i]
            return cache[e]

        acc: dict[int, object] = {}
        for k, v in self.terms.items():
            term = Poly.const(m, v)
            for i, e in enumerate(self.unpack(k)):
                if e:
                    term = term * pw(i, e)
            for kk, vv in term.terms.items():
                acc[kk] = acc.get(kk, 0) + vv
        return Poly(m, acc)

    def evaluate(self, point: Sequence):
        total = 0
        for k, v in self.terms.items():
            t = v
            for x, e in zip(point, self.unpack(k)):
                if e:
                    t = t * x**e
            total += t
        return total

    # division ---------------------------------------------------------
    def _guard(self) -> int:
        g = 0
        for i in range(self.n):
            g |= 1 << (self._shift(self.n, i) + FIELD - 1)
        return g

    def divmod(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Division with remainder in lex order (variable 0 largest)."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lt = max(divisor.terms)
        lc = divisor.terms[lt]
        G = self._guard()
        rest = {k: v for k, v in divisor.terms.items() if k != lt}
        f = dict(self.terms)
        heap = [-k for k in f]
        heapq.heapify(heap)
        q: dict[int, object] = {}
        r: dict[int, object] = {}
        while heap:
            k = -heapq.heappop(heap)
            v = f.pop(k, 0)
            if v == 0:
                continue
            while heap and -heap[0] == k:
                heapq.heappop(heap)
            if ((k | G) - lt) & G == G:
                m = k - lt
                c = _norm(Fraction(v) / lc)
                q[m] = c
                for kr, vr in rest.items():
                    kk = kr + m
                    if kk not in f:
                        heapq.heappush(heap, -kk)
                    f[kk] = f.get(kk, 0) - c * vr
            else:
                r[k] = v
        return Poly(self.n, q), Poly(self.n, r)

    def exact_div(self, divisor: "Poly") -> "Poly":
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def divisible_by(self, divisor: "Poly") -> bool:
        return self.divmod(divisor)[1].is_zero()

    # output -----------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            mono = "*".join(f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(self.unpack(k)) if e)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono:
                s = mono if a == 1 else f"{a}*{mono}"
            else:
                s = str(a)
            parts.append(f"{sign} {s}")
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    __repr__ = __str__
