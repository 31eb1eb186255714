from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wmbkit import exactlin as xl

small = st.integers(-3, 3).map(Fraction)


@st.composite
def matrices(draw, max_r=5, max_c=5):
    r = draw(st.integers(1, max_r))
    c = draw(st.integers(1, max_c))
    return [[draw(small) for _ in range(c)] for _ in range(r)]


@given(matrices())
def test_rank_nullity(m):
    cols = len(m[0])
    assert xl.rank(m) + xl.kernel(m, cols).dim == cols


@given(matrices())
def test_kernel_vectors_are_killed(m):
    for v in xl.kernel(m, len(m[0])).basis:
        assert not any(xl.matvec(m, v))


@given(matrices(), st.data())
def test_solve_recovers_consistent_rhs(m, data):
    x = [data.draw(small) for _ in m[0]]
    b = xl.matvec(m, x)
    sol, unique = xl.solve(m, b)
    assert xl.matvec(m, sol) == b
    assert unique == (xl.rank(m) == len(m[0]))


def test_solve_inconsistent():
    assert xl.solve([[1, 0], [1, 0]], [1, 2]) is None


@given(matrices(4, 4))
@settings(max_examples=50)
def test_split_idempotent_of_projection(m):
    # the projection onto the row space, built as rref-based idempotent
    n = len(m[0])
    sub = xl.span(m, n)
    # P sends e_i to its component along the pivot coordinates
    cols = []
    for i in range(n):
        e = [Fraction(int(j == i)) for j in range(n)]
        c = [e[p] for p in sub.pivots]
        cols.append([sum((ci * b[j] for ci, b in zip(c, sub.basis)), Fraction(0)) for j in range(n)])
    p = xl.transpose(cols, n)
    assert xl.matmul(p, p) == p
    inj, surj = xl.split_idempotent(p)
    assert xl.matmul(inj, surj, cols=n) == p
    assert xl.matmul(surj, inj) == xl.identity(len(surj))


def test_split_rejects_non_idempotent():
    with pytest.raises(xl.NotIdempotent):
        xl.split_idempotent([[1, 1], [0, 2]])


def test_subspaces_are_canonical():
    a = xl.span([[1, 2, 0], [0, 1, 1]], 3)
    b = xl.span([[1, 3, 1], [2, 4, 0]], 3)
    assert xl.subspace_equal(a, b)
    assert a.contains([1, 1, -1])
    assert not a.contains([0, 0, 1])
    assert xl.image([[1, 0], [0, 0]]).dim == 1
