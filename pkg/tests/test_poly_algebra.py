import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilcent import exact_linalg as la
from nilcent.poly_algebra import (
    NotAntisymmetric,
    OddDimension,
    SparsePoly,
    Var,
    charpoly_coeffs,
    from_text,
    graded_components,
    min_degree_component,
    pfaffian,
    principal_minor_sums,
    to_text,
    xi,
)

x, y, z = (SparsePoly.var(Var(n)) for n in "xyz")

# values frozen from tests/oracles/sympy_oracle.py
M4 = [[-3, 0, 2, 5], [-5, -4, 0, 5], [-5, -2, 3, 1], [5, -5, -2, 4]]
M4_DELTAS = [0, -13, 236, 638]
A6 = [[0, 3, 4, 3, 4, -4], [-3, 0, 2, 1, -4, 4], [-4, -2, 0, 1, 4, 0],
      [-3, -1, -1, 0, -2, -1], [-4, 4, -4, 2, 0, -3], [4, -4, 0, 1, 3, 0]]
A6_DET = 17689


def small_polys():
    coef = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    mono = st.lists(st.sampled_from([Var("x"), Var("y"), Var("z")]), max_size=3)
    return st.dictionaries(mono.map(lambda m: tuple(sorted(m))), coef, max_size=4).map(SparsePoly)


def points():
    return st.fixed_dictionaries({Var(n): st.fractions(-3, 3, max_denominator=3) for n in "xyz"})


def test_difference_of_squares():
    assert (x + y) * (x - y) == x * x - y * y


def test_substitute_zero():
    p = x * x * y + x
    assert p.subs({Var("y"): 0}) == x


def test_evaluate_rational():
    assert (x * x + 1).evaluate({Var("x"): Fraction(3, 2)}) == Fraction(13, 4)


def test_no_zero_coefficients_stored():
    p = x + y - x
    assert p == y and all(c for c in p.terms.values())


@settings(max_examples=60, deadline=None)
@given(small_polys(), small_polys(), small_polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == SparsePoly()


@settings(max_examples=60, deadline=None)
@given(small_polys(), small_polys(), points())
def test_evaluation_is_a_ring_map(p, q, pt):
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


@settings(max_examples=60, deadline=None)
@given(small_polys())
def test_text_round_trip(p):
    assert from_text(to_text(p)) == p


def test_text_format_of_labels():
    p = SparsePoly.var(xi(1, 2, 0)).scale(Fraction(-3, 2)) * SparsePoly.var(xi(2, 1, 3))
    text = to_text(p)
    assert "xi[1,2,0]" in text and "3/2" in text
    assert from_text("  -3/2*xi[1,2,0] *  xi[2,1,3] ") == p


def test_graded_components_total_degree():
    p = x + x * x * y
    comps = graded_components(p)
    assert comps == [(1, x), (3, x * x * y)]
    assert min_degree_component(p) == (1, x)


def test_homogeneous_is_single_component():
    p = x * y + z * z
    assert graded_components(p) == [(2, p)]


def test_weighted_components_match_term_scan():
    weight = {Var("x"): 1, Var("y"): -1, Var("z"): 2}
    p = x * y + z + x * x + y * z * z
    comps = graded_components(p, weight.__getitem__)
    scan = {}
    for mono, c in p.terms.items():
        w = sum(weight[v] for v in mono)
        scan[w] = scan.get(w, SparsePoly()) + SparsePoly({mono: c})
    assert dict(comps) == scan
    assert sum((q for _, q in comps), SparsePoly()) == p


def test_charpoly_two_by_two():
    a, b, c, d = (SparsePoly.var(Var(n)) for n in "abcd")
    d1, d2 = charpoly_coeffs([[a, b], [c, d]])
    assert d1 == a + d and d2 == a * d - b * c


def test_charpoly_nilpotent_block():
    N = [[int(j == i + 1) for j in range(4)] for i in range(4)]
    assert all(not c for c in charpoly_coeffs(N))


def test_charpoly_matches_oracle():
    assert [c.constant_term() for c in charpoly_coeffs(M4)] == M4_DELTAS
    assert [c.constant_term() for c in principal_minor_sums(M4)] == M4_DELTAS


def test_truncated_charpoly_keeps_low_degree_part():
    rng = random.Random(5)
    v = [SparsePoly.var(Var("t", k)) for k in range(4)]
    M = [[sum((v[k].scale(rng.randint(-2, 2)) for k in range(4)), SparsePoly()) + rng.randint(-1, 1)
          for _ in range(4)] for _ in range(4)]
    full = charpoly_coeffs(M)
    cut = charpoly_coeffs(M, maxdeg=2)
    assert [f.truncate(2) for f in full] == cut


def test_minor_sums_agree_with_berkowitz():
    rng = random.Random(1)
    v = [SparsePoly.var(Var("t", k)) for k in range(3)]
    M = [[v[rng.randrange(3)].scale(rng.randint(-2, 2)) + rng.randint(-2, 2) for _ in range(5)]
         for _ in range(5)]
    assert charpoly_coeffs(M) == principal_minor_sums(M)


def test_charpoly_conjugation_invariant():
    rng = random.Random(2)
    for _ in range(5):
        M = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(4)]
        while True:
            B = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(4)]
            if la.det(B):
                break
        C = la.matmul(la.matmul(B, M), la.inverse(B))
        assert charpoly_coeffs(M) == charpoly_coeffs(C)


def test_pfaffian_small_cases():
    a = SparsePoly.var(Var("a"))
    assert pfaffian([[0, a], [-a, 0]]) == a
    J = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
    assert pfaffian(J) == SparsePoly.const(1)
    # a12 a34 - a13 a24 + a14 a23 for the block form [[0, I], [-I, 0]]
    K = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
    assert pfaffian(K) == SparsePoly.const(-1)


def test_pfaffian_squares_to_determinant():
    pf = pfaffian(A6).constant_term()
    assert pf * pf == A6_DET == la.det(A6)


def test_pfaffian_transforms_by_determinant():
    rng = random.Random(3)
    for _ in range(5):
        A = [[0] * 4 for _ in range(4)]
        for i, j in itertools.combinations(range(4), 2):
            A[i][j] = rng.randint(-3, 3)
            A[j][i] = -A[i][j]
        B = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(4)]
        BAB = la.matmul(la.matmul(B, A), la.transpose(B))
        assert pfaffian(BAB).constant_term() == la.det(B) * pfaffian(A).constant_term()


def test_pfaffian_errors():
    with pytest.raises(NotAntisymmetric):
        pfaffian([[0, 1], [1, 0]])
    with pytest.raises(OddDimension):
        pfaffian([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
