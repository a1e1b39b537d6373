"""Exact linear algebra against brute-force oracles.

The oracles expand determinants over permutations and take ranks as the
largest nonzero minor, so they share no code path with the elimination
in the package.
"""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torograd import (NoSolution, RatMatrix, RowSpan, Singular, ZeroVector,
                      dot, primitive, solve)


def det_oracle(rows):
    n = len(rows)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = Fraction(sign)
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


def rank_oracle(rows):
    if not rows or not rows[0]:
        return 0
    nr, nc = len(rows), len(rows[0])
    for k in range(min(nr, nc), 0, -1):
        for ri in itertools.combinations(range(nr), k):
            for ci in itertools.combinations(range(nc), k):
                minor = [[rows[i][j] for j in ci] for i in ri]
                if det_oracle(minor) != 0:
                    return k
    return 0


small_entry = st.integers(min_value=-6, max_value=6)


def matrix_strategy(max_n=4, square=False):
    def build(n, m):
        shape = st.lists(st.lists(small_entry, min_size=m, max_size=m),
                         min_size=n, max_size=n)
        return shape
    if square:
        return st.integers(1, max_n).flatmap(lambda n: build(n, n))
    return st.tuples(st.integers(1, max_n), st.integers(1, max_n)).flatmap(
        lambda nm: build(*nm))


# ---------------------------------------------------------------------------
# vectors

def test_dot_and_vector_ops():
    assert dot((1, 2, 3), (4, -1, 0)) == 2
    assert dot((), ()) == 0
    with pytest.raises(ValueError):
        dot((1, 2), (1, 2, 3))


@pytest.mark.parametrize("vec,expected", [
    ((4, -6), (2, -3)),
    ((-3, 0), (-1, 0)),
    ((2, 4, -6), (1, 2, -3)),
    ((0, -5), (0, -1)),
    ((7,), (1,)),
    ((-3, -6, -9), (-1, -2, -3)),
    ((Fraction(1, 2), Fraction(3, 2)), None),
])
def test_primitive(vec, expected):
    if expected is None:
        with pytest.raises(ValueError):
            primitive(vec)
        return
    assert primitive(vec) == expected


def test_primitive_zero_rejected():
    with pytest.raises(ZeroVector):
        primitive((0, 0, 0))


@given(st.lists(small_entry, min_size=1, max_size=5))
def test_primitive_idempotent(v):
    if all(x == 0 for x in v):
        return
    p = primitive(tuple(v))
    assert primitive(p) == p
    # same ray: v is a positive multiple of its primitive part
    k = next(x for x in v if x)
    pk = p[v.index(k)]
    assert all(x * pk == y * k for x, y in zip(v, p))


# ---------------------------------------------------------------------------
# determinants, ranks, inverses

def test_rank_frozen_colinear_points():
    # three points on a line parallel to (1,1,1): rank of the span is 2
    rows = [[1, 2, 0], [0, 1, -1], [-1, 0, -2]]
    m = RatMatrix([[Fraction(x) for x in r] for r in rows])
    assert m.rank() == 2
    assert rank_oracle(rows) == 2


def test_inverse_frozen():
    m = RatMatrix([[Fraction(0), Fraction(1)], [Fraction(-1), Fraction(-1)]])
    inv = m.inverse()
    assert inv.rows == ((Fraction(-1), Fraction(-1)), (Fraction(1), Fraction(0)))


def test_det_frozen():
    m = RatMatrix([[Fraction(2), Fraction(1)], [Fraction(7), Fraction(4)]])
    assert m.det() == 1
    assert m.det() == det_oracle(m.rows)


def test_singular_inverse_raises():
    m = RatMatrix([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])
    with pytest.raises(Singular):
        m.inverse()


@settings(max_examples=60, deadline=None)
@given(matrix_strategy(max_n=4, square=True))
def test_det_matches_permutation_expansion(rows):
    m = RatMatrix([[Fraction(x) for x in r] for r in rows])
    assert m.det() == det_oracle(m.rows)


@settings(max_examples=60, deadline=None)
@given(matrix_strategy(max_n=4))
def test_rank_matches_minor_oracle(rows):
    m = RatMatrix([[Fraction(x) for x in r] for r in rows])
    assert m.rank() == rank_oracle(m.rows)


@settings(max_examples=60, deadline=None)
@given(matrix_strategy(max_n=4, square=True))
def test_inverse_roundtrip(rows):
    m = RatMatrix([[Fraction(x) for x in r] for r in rows])
    if m.det() == 0:
        with pytest.raises(Singular):
            m.inverse()
        return
    n = m.nrows
    assert (m @ m.inverse()).rows == RatMatrix.identity(n).rows
    assert (m.inverse() @ m).rows == RatMatrix.identity(n).rows


@settings(max_examples=40, deadline=None)
@given(matrix_strategy(max_n=3, square=True), matrix_strategy(max_n=3, square=True))
def test_rank_of_product_bounded(a_rows, b_rows):
    n = min(len(a_rows), len(b_rows))
    a = RatMatrix([[Fraction(x) for x in r[:n]] for r in a_rows[:n]])
    b = RatMatrix([[Fraction(x) for x in r[:n]] for r in b_rows[:n]])
    assert (a @ b).rank() <= min(a.rank(), b.rank())


# ---------------------------------------------------------------------------
# solve

def test_solve_unique():
    a = RatMatrix([[Fraction(2), Fraction(0)], [Fraction(1), Fraction(1)]])
    x = solve(a, [Fraction(4), Fraction(5)])
    assert x == (Fraction(2), Fraction(3))


def test_solve_overdetermined_consistent():
    a = RatMatrix([[Fraction(1), Fraction(0)],
                   [Fraction(0), Fraction(1)],
                   [Fraction(1), Fraction(1)]])
    x = solve(a, [Fraction(2), Fraction(3), Fraction(5)])
    assert x == (Fraction(2), Fraction(3))


def test_solve_inconsistent():
    a = RatMatrix([[Fraction(1), Fraction(0)],
                   [Fraction(1), Fraction(0)]])
    with pytest.raises(NoSolution):
        solve(a, [Fraction(1), Fraction(2)])


def test_solve_underdetermined_rejected():
    # solution exists but is not unique; treated as failure
    a = RatMatrix([[Fraction(1), Fraction(1)]])
    with pytest.raises(NoSolution):
        solve(a, [Fraction(1)])


@settings(max_examples=50, deadline=None)
@given(matrix_strategy(max_n=4, square=True),
       st.lists(small_entry, min_size=4, max_size=4))
def test_solve_recovers_known_solution(rows, xs):
    m = RatMatrix([[Fraction(v) for v in r] for r in rows])
    if m.det() == 0:
        return
    x = tuple(Fraction(v) for v in xs[:m.nrows])
    rhs = [dot(row, x) for row in m.rows]
    assert solve(m, rhs) == x


# ---------------------------------------------------------------------------
# RowSpan

def test_rowspan_incremental():
    span = RowSpan(3)
    assert span.add([Fraction(1), Fraction(2), Fraction(0)]) is True
    assert span.add([Fraction(2), Fraction(4), Fraction(0)]) is False
    assert span.add([Fraction(0), Fraction(1), Fraction(-1)]) is True
    assert span.rank == 2
    # a combination of the first two inserted rows reduces to zero
    assert all(x == 0 for x in span.reduce([Fraction(1), Fraction(3), Fraction(-1)]))


def test_rowspan_prefix_reduction():
    span = RowSpan(2)
    span.add([Fraction(1), Fraction(0)])
    span.add([Fraction(0), Fraction(1)])
    # against the first row only, the second coordinate survives
    r = span.reduce([Fraction(3), Fraction(4)], upto=1)
    assert r[0] == 0 and r[1] != 0
    r = span.reduce([Fraction(3), Fraction(4)])
    assert all(x == 0 for x in r)


@settings(max_examples=50, deadline=None)
@given(matrix_strategy(max_n=4))
def test_rowspan_rank_matches_matrix_rank(rows):
    frows = [[Fraction(x) for x in r] for r in rows]
    span = RowSpan(len(frows[0]))
    for r in frows:
        span.add(list(r))
    assert span.rank == rank_oracle(frows)
