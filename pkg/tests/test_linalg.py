from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylarr.linalg import det, in_span, integer_nullspace, nullspace, primitive, rank, rref, solve


def small_matrix(max_rows=4, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def leibniz(m):
    n = len(m)
    total = 0
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = -1 if inv % 2 else 1
        for i in range(n):
            term *= m[i][p[i]]
        total += term
    return total


def test_rref_known():
    m, piv = rref([[1, 2, 3], [2, 4, 7]])
    assert piv == [0, 2]
    assert m == [[1, 2, 0], [0, 0, 1]]


@pytest.mark.parametrize(
    "vec, expected",
    [([2, -4, 6], (1, -2, 3)), ([Fraction(-1, 2), Fraction(1, 3)], (3, -2)), ([0, -5, 0], (0, 1, 0))],
)
def test_primitive(vec, expected):
    assert primitive(vec) == expected


def test_primitive_rejects_zero():
    with pytest.raises(ValueError):
        primitive([0, 0])


@given(small_matrix())
def test_rank_nullity(m):
    n = len(m[0])
    ns = nullspace(m)
    assert rank(m) + len(ns) == n
    for v in ns:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in m)


@given(small_matrix())
def test_integer_nullspace_is_integral_and_primitive(m):
    for v in integer_nullspace(m):
        assert all(isinstance(x, int) for x in v)
        assert primitive(v) == v
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in m)


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_leibniz(m):
    assert det(m) == leibniz(m)


@given(small_matrix(), st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_solve_consistent_rhs(m, x):
    x = x[: len(m[0])]
    b = [sum(a * y for a, y in zip(row, x)) for row in m]
    sol = solve(m, b)
    assert sol is not None
    assert [sum(a * y for a, y in zip(row, sol)) for row in m] == b


def test_solve_inconsistent():
    assert solve([[1, 1], [1, 1]], [0, 1]) is None


def test_in_span():
    assert in_span([[1, 0, 1], [0, 1, 1]], [2, 3, 5])
    assert not in_span([[1, 0, 1], [0, 1, 1]], [0, 0, 1])
