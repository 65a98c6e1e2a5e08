from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilcent import exact_linalg as la

# values frozen from tests/oracles/sympy_oracle.py
M6 = [[-2, -3, 4, -4, -3, 4], [-2, 4, 1, -4, -3, 0], [-4, -2, -4, -3, -1, -1],
      [-1, 3, -2, 3, 1, 0], [3, 3, -1, 2, 3, 2], [-2, -1, -2, 0, 2, -1]]
M6_DET = -6733


def naive_rank(M):
    """Plain rational Gaussian elimination, the reference for the fraction-free route."""
    A = [[Fraction(x) for x in row] for row in M]
    rank, cols = 0, len(A[0]) if A else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(A)) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for r in range(len(A)):
            if r != rank and A[r][c]:
                f = A[r][c] / A[rank][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)))


def test_kernel_of_identity_is_empty():
    assert la.kernel_basis(la.identity(3)) == []


def test_kernel_of_zero_matrix():
    assert len(la.kernel_basis([[0, 0, 0], [0, 0, 0]])) == 3


def test_kernel_of_single_row():
    (v,) = la.kernel_basis([[1, 1]])
    assert v[0] == -v[1] != 0


def test_solve_identity():
    r, x = la.rank_and_solve([[1, 0], [0, 1]], [2, 3])
    assert r == 2 and x == [2, 3]


def test_inconsistent_system():
    with pytest.raises(la.Inconsistent):
        la.rank_and_solve([[1, 1], [2, 2]], [1, 3])


def test_oracle_matrix_has_full_rank():
    assert la.det(M6) == M6_DET
    assert la.rank(M6) == 6


def test_rref_pivots():
    rows, piv = la.rref([[0, 2, 4], [1, 1, 1]])
    assert piv == [0, 1]
    assert rows == [[1, 0, -1], [0, 1, 2]]


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_matches_naive_elimination(M):
    assert la.rank(M) == naive_rank(M)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_of_transpose(M):
    assert la.rank(M) == la.rank(la.transpose(M))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_kernel_vectors_are_independent_solutions(M):
    ker = la.kernel_basis(M, len(M[0]))
    assert len(ker) == len(M[0]) - la.rank(M)
    for v in ker:
        assert all(x == 0 for x in la.matvec(M, v))
    if ker:
        assert la.rank(ker) == len(ker)


@settings(max_examples=40, deadline=None)
@given(matrices, st.lists(st.integers(-5, 5), min_size=5, max_size=5))
def test_solution_satisfies_system(M, rhs):
    b = rhs[:len(M)]
    try:
        r, x = la.rank_and_solve(M, b)
    except la.Inconsistent:
        aug = [row + [c] for row, c in zip(M, b)]
        assert la.rank(aug) > la.rank(M)
        return
    assert la.matvec(M, x) == [Fraction(c) for c in b]
