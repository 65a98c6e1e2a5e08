from fractions import Fraction

import pytest

from nilcent.centralizer import build_algebra
from nilcent.model_space import AlgebraKind, IndexOutOfRange, admissible_partitions, build_model
from nilcent.invariants import (
    bb_symbol,
    bb_translate,
    build_slice,
    expected_degree,
    hweight_grading,
    independence_check,
    invariant_keys,
    is_invariant,
    monomial_invariant,
    proportionality,
    psi_expected_label,
    psi_restriction,
    restricted_invariant,
    restricted_invariants,
)
from nilcent.poly_algebra import SparsePoly, graded_components, xi
from nilcent.varieties import nonradical_witness


def alg_of(parts, kind):
    return build_algebra(build_model(parts, kind))


def algebras(max_n, kinds=tuple(AlgebraKind)):
    for kind in kinds:
        for n in range(1, max_n + 1):
            for p in admissible_partitions(n, kind):
                yield build_algebra(build_model(p, kind))


def alg_id(alg):
    return f"{alg.kind.name}{alg.model.partition}"


def test_slice_has_one_variable_per_basis_element():
    alg = alg_of((4, 2), "GL")
    sl = build_slice(alg)
    assert len(sl.variables) == 10 and len(sl.gf_basis) == 10


@pytest.mark.parametrize("parts,kind", [((4, 2), "GL"), ((3, 2, 2), "SO"), ((4, 2), "SP")])
def test_slice_dual_basis_and_base_point(parts, kind):
    alg = alg_of(parts, kind)
    sl = build_slice(alg)
    n = alg.model.n
    for a, g in enumerate(alg.basis):
        for b, D in enumerate(sl.dual_basis):
            tr = sum((v * D[c][r] for (r, c), v in g.matrix.items()), Fraction(0))
            assert tr == int(a == b)
    zero = {v: 0 for v in sl.variables}
    at_zero = [[sl.generic_matrix[r][c].subs(zero).constant_term() for c in range(n)] for r in range(n)]
    assert at_zero == [list(row) for row in alg.model.Emat]


def test_first_invariant_is_the_diagonal_sum():
    alg = alg_of((3, 2, 1), "GL")
    m, p = restricted_invariant(alg, 1)
    diag = sum((SparsePoly.var(xi(i, i, 0)) for i in range(1, 4)), SparsePoly())
    assert m == 1 and proportionality(p, diag) is not None


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_single_block_invariants_are_coordinates(n):
    alg = alg_of((n,), "GL")
    for ell, m, p in restricted_invariants(alg).items:
        assert m == 1 and proportionality(p, SparsePoly.var(xi(1, 1, ell - 1))) is not None


def test_four_two_degrees_and_display():
    alg = alg_of((4, 2), "GL")
    # frozen from tests/oracles/sympy_oracle.py
    assert restricted_invariants(alg).degrees == [1, 1, 1, 1, 2, 2]
    assert nonradical_witness().matches_display


@pytest.mark.parametrize("ell,label", [(5, (1, 2, 0)), (6, (1, 2, 1))])
def test_fingerprint_of_quadratic_invariants(ell, label):
    alg = alg_of((4, 2), "GL")
    m, p = restricted_invariant(alg, ell)
    assert psi_expected_label(alg.model, ell, m) == label
    assert proportionality(psi_restriction(alg, p), SparsePoly.var(xi(*label))) is not None


def test_expected_degree_range():
    model = build_model((4, 2), "GL")
    assert [expected_degree(model, ell) for ell in range(1, 7)] == [1, 1, 1, 1, 2, 2]
    with pytest.raises(IndexOutOfRange):
        expected_degree(model, 7)


def test_translation_between_indexings():
    model = build_model((4, 2), "GL")
    assert bb_translate(model, 1, 2, 0) == (2, 1, 2)
    assert bb_translate(model, 2, 1, 2) == (1, 2, 0)
    assert bb_translate(model, 1, 1, 3) == (1, 1, 3)
    with pytest.raises(IndexOutOfRange):
        bb_translate(model, 2, 1, 0)
    with pytest.raises(IndexOutOfRange):
        bb_translate(model, 3, 1, 0)


@pytest.mark.parametrize("alg", list(algebras(5, (AlgebraKind.GL,))), ids=alg_id)
def test_symbol_matches_monomial_formula(alg):
    for ell in range(1, alg.model.n + 1):
        m = expected_degree(alg.model, ell)
        mono = monomial_invariant(alg, ell, m)
        assert proportionality(bb_symbol(alg, ell, m), mono) is not None


@pytest.mark.parametrize("alg", list(algebras(6, (AlgebraKind.GL,))), ids=alg_id)
def test_hweight_homogeneity(alg):
    grading = hweight_grading(alg)
    for ell, m, p in restricted_invariants(alg).items:
        assert [w for w, _ in graded_components(p, grading)] == [2 * (ell - m)]


def self_paired(alg):
    return all(alg.model.prime(i) == i for i in range(1, alg.model.k + 1))


@pytest.mark.parametrize("alg", list(algebras(6)), ids=alg_id)
def test_invariants_are_poisson_central(alg):
    assert all(is_invariant(alg, p) for p in restricted_invariants(alg).polys)


@pytest.mark.parametrize("alg", [a for a in algebras(7) if a.kind is not AlgebraKind.SO or self_paired(a)],
                         ids=alg_id)
def test_invariants_are_independent(alg):
    inv = restricted_invariants(alg)
    rep = independence_check(alg, inv.polys, inv.degrees)
    assert rep.independent
    if alg.kind is not AlgebraKind.SO:
        assert rep.degree_sum_ok


def test_paired_even_blocks_give_dependent_lowest_parts():
    # in so_4 with e = (2,2) the lowest parts of Δ_2 and the Pfaffian are both linear and proportional
    alg = alg_of((2, 2), "SO")
    inv = restricted_invariants(alg)
    assert inv.degrees == [1, 1]
    assert proportionality(inv.polys[0], inv.polys[1]) is not None


@pytest.mark.parametrize("alg", list(algebras(6)), ids=alg_id)
def test_minor_sums_and_berkowitz_agree(alg):
    a = restricted_invariants(alg, method="minors")
    b = restricted_invariants(alg, method="berkowitz")
    assert a.items == b.items


def test_truncation_does_not_change_the_result():
    alg = alg_of((3, 2, 1), "GL")
    assert restricted_invariants(alg).items == restricted_invariants(alg, truncate=False).items


def test_duplicate_generator_is_dependent():
    alg = alg_of((4, 2), "GL")
    inv = restricted_invariants(alg)
    rep = independence_check(alg, inv.polys + [inv.polys[-1]])
    assert rep.degree_sum_ok is False and not rep.independent


def test_symplectic_four_two_degree_sum():
    alg = alg_of((4, 2), "SP")
    inv = restricted_invariants(alg)
    rep = independence_check(alg, inv.polys, inv.degrees)
    assert inv.degrees == [1, 1, 2] and rep.degree_sum == 4 and rep.degree_sum_ok


def test_even_orthogonal_keys_include_pfaffian():
    model = build_model((3, 3), "SO")
    assert invariant_keys(model) == [1, 2, "pf"]
    alg = build_algebra(model)
    all_keys = restricted_invariants(alg, keys=[1, 2, 3])
    assert all(is_invariant(alg, p) for p in all_keys.polys)


def test_formula_routes_need_general_linear():
    alg = alg_of((4, 2), "SP")
    with pytest.raises(ValueError):
        monomial_invariant(alg, 1, 1)
    with pytest.raises(ValueError):
        psi_restriction(alg, SparsePoly.const(1))


def test_unknown_coefficient_method():
    with pytest.raises(ValueError):
        restricted_invariants(alg_of((2, 1), "GL"), method="qr")
