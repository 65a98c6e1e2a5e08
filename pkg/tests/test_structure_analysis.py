import random
from fractions import Fraction

import pytest

from nilcent import exact_linalg as la
from nilcent.centralizer import build_algebra
from nilcent.invariants import proportionality, restricted_invariants
from nilcent.model_space import AlgebraKind, admissible_partitions, build_model
from nilcent.poly_algebra import xi
from nilcent.structure_analysis import (
    Verdict,
    alpha_point,
    ambient_rank,
    centre,
    corank,
    directional_derivative,
    element_centraliser,
    estimate_index,
    functional_vector,
    gamma_point,
    gamma_stabiliser_basis,
    index_and_stabiliser,
    is_nilpotent,
    jacobian_rank,
    linear_element,
    nilpotent_pair,
    random_vector,
    regularity_certificates,
    rho_action,
    shift_family,
    stabiliser,
    strange_condition,
)
from nilcent.varieties import generic_fibre_check


def alg_of(parts, kind):
    return build_algebra(build_model(parts, kind))


def algebras(max_n, kinds=tuple(AlgebraKind)):
    for kind in kinds:
        for n in range(1, max_n + 1):
            for p in admissible_partitions(n, kind):
                yield build_algebra(build_model(p, kind))


def alg_id(alg):
    return f"{alg.kind.name}{alg.model.partition}"


# centre dimensions frozen from tests/oracles/sympy_oracle.py
@pytest.mark.parametrize("parts,kind,dim", [((4, 2), "GL", 4), ((5, 3), "SO", 3), ((4, 2), "SP", 2),
                                            ((3,), "GL", 3)])
def test_centre_matches_oracle(parts, kind, dim):
    assert centre(alg_of(parts, kind)).dim == dim


def test_orthogonal_extra_central_element():
    alg = alg_of((5, 3), "SO")
    res = centre(alg)
    assert res.extra is not None
    assert la.span_rank(res.basis + [res.extra], alg.dim) == res.dim
    assert la.span_rank(res.E_basis + [res.extra], alg.dim) == res.dim


@pytest.mark.parametrize("alg", list(algebras(7)), ids=alg_id)
def test_centre_formula_and_contents(alg):
    res = centre(alg)
    assert res.dim == res.expected_dim
    for v in res.basis:
        for b in range(alg.dim):
            assert not any(alg.bracket_vec(v, [int(a == b) for a in range(alg.dim)]))
    assert la.span_rank(res.basis + res.E_basis, alg.dim) == res.dim


def test_generic_alpha_stabiliser_is_diagonal_span():
    alg = alg_of((4, 2), "GL")
    stab, dim = index_and_stabiliser(alg, alpha_point(alg, [2, 7]))
    diag = [[Fraction(int(lab[0] == lab[1] and a == b)) for a, lab in enumerate(alg.labels)]
            for b in range(alg.dim) if alg.labels[b][0] == alg.labels[b][1]]
    assert dim == 6 and la.same_span(stab, diag, alg.dim)


def test_zero_functional_stabiliser_is_everything():
    alg = alg_of((3, 2, 1), "GL")
    assert len(stabiliser(alg, [0] * alg.dim)) == alg.dim


# index values frozen from tests/oracles/sympy_oracle.py
@pytest.mark.parametrize("parts,kind,ind", [((3, 2, 1), "GL", 6), ((4, 2), "SP", 3), ((3, 2, 2), "SO", 3)])
def test_index_matches_oracle(parts, kind, ind):
    alg = alg_of(parts, kind)
    assert estimate_index(alg) == ind == ambient_rank(alg.model)


@pytest.mark.parametrize("parts,kind", [((4, 2), "GL"), ((3, 2, 2), "SO"), ((4, 2, 2), "SP"),
                                        ((2, 2, 1, 1), "GL")])
def test_corank_never_below_index(parts, kind):
    alg = alg_of(parts, kind)
    ind = ambient_rank(alg.model)
    rng = random.Random(11)
    for _ in range(100):
        alpha = random_vector(alg.dim, rng, bound=3)
        assert corank(alg, alpha) >= ind


@pytest.mark.parametrize("parts,kind", [((4, 2), "GL"), ((3, 2, 1), "GL"), ((4, 2), "SP"),
                                        ((3, 3, 2), "SP"), ((4, 4, 2), "SP")])
def test_generic_stabiliser_contains_torus(parts, kind):
    chk = generic_fibre_check(alg_of(parts, kind))
    assert chk.ok


@pytest.mark.parametrize("alg", list(algebras(6, (AlgebraKind.GL, AlgebraKind.SP))), ids=alg_id)
def test_degree_sum_identity(alg):
    degrees = restricted_invariants(alg).degrees
    assert sum(degrees) == (alg.dim + ambient_rank(alg.model)) // 2


def test_gamma_stabiliser_shape():
    alg = alg_of((4, 2), "GL")
    stab = stabiliser(alg, gamma_point(alg))
    assert len(stab) == 6
    assert la.same_span(stab, gamma_stabiliser_basis(alg), alg.dim)


def test_scaling_at_one_is_identity():
    alg = alg_of((3, 2, 1), "GL")
    rng = random.Random(0)
    v = random_vector(alg.dim, rng)
    assert rho_action(alg, v, 1) == v


def test_plane_points_are_regular():
    rep = regularity_certificates(alg_of((3, 2, 1), "GL"), samples=50)
    assert len(rep.plane_coranks) == 50 and set(rep.plane_coranks) == {6}
    assert rep.ok


def test_three_point_certificate_needs_general_linear():
    with pytest.raises(ValueError):
        regularity_certificates(alg_of((4, 2), "SP"))


def test_pair_element_general_linear():
    r = nilpotent_pair(alg_of((3, 2, 2, 1), "GL"))
    assert r.nilpotent and r.dim == r.expected == 8


def test_pair_single_block():
    r = nilpotent_pair(alg_of((5,), "GL"))
    assert not any(r.x) and r.dim == 5


@pytest.mark.parametrize("alg", list(algebras(8)), ids=alg_id)
def test_pair_dimension_equals_rank(alg):
    r = nilpotent_pair(alg)
    assert r.dim == ambient_rank(alg.model)


def test_is_nilpotent_helper():
    assert is_nilpotent({(1, 0): 1, (2, 1): 1}, 3)
    assert not is_nilpotent({(1, 0): 1, (0, 1): -1}, 2)


def test_shift_family_without_shift_is_h():
    alg = alg_of((4, 2), "SP")
    H = restricted_invariants(alg).polys
    fam = shift_family(alg, H, [0] * alg.dim)
    assert fam.generators == H and fam.commuting


def test_shift_family_two_one():
    # generator count and Jacobian rank frozen from tests/oracles/sympy_oracle.py
    alg = alg_of((2, 1), "GL")
    H = restricted_invariants(alg).polys
    rng = random.Random(1)
    a = random_vector(alg.dim, rng)
    assert corank(alg, a) == 3
    fam = shift_family(alg, H, a)
    assert fam.commuting
    assert len(fam.generators) == 4 and fam.jacobian_rank == 4 == fam.target


def test_shift_derivative_on_symplectic_four_two():
    alg = alg_of((4, 2), "SP")
    H = restricted_invariants(alg).polys
    rng = random.Random(2)
    a = random_vector(alg.dim, rng)
    assert corank(alg, a) == 3
    x = linear_element(alg, directional_derivative(alg, H[2], a))
    assert len(element_centraliser(alg, x)) > 3
    b = functional_vector(alg, {xi(1, 1, 1): 3, xi(1, 2, 0): -2, xi(2, 2, 1): 5})
    assert proportionality(directional_derivative(alg, H[2], b), H[1]) is not None


def test_jacobian_rank_detects_duplicates():
    alg = alg_of((4, 2), "GL")
    H = restricted_invariants(alg).polys
    assert jacobian_rank(alg, H) == 6
    assert jacobian_rank(alg, H + [H[0]]) == 6


@pytest.mark.parametrize("parts", [(4, 2), (6, 2), (8, 2)])
def test_strange_condition_holds(parts):
    assert strange_condition(alg_of(parts, "SP")).verdict is Verdict.HOLDS_ON_SAMPLES


def test_strange_condition_fails_when_abelian():
    res = strange_condition(alg_of((4,), "GL"))
    assert res.verdict is Verdict.FAILS_WITH_WITNESS and res.witness is not None
