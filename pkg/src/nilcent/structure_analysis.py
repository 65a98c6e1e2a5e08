"""Centre, index, stabilisers, regularity certificates, commuting pairs, shifts."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Mapping, Sequence

from . import exact_linalg as la
from .centralizer import (
    CentralizerAlgebra,
    label_matrix,
    label_valid,
    partner,
    poisson_bracket,
    sp_add,
    sp_mul,
)
from .model_space import AlgebraKind, ModelSpace
from .poly_algebra import SparsePoly, Var


COORD_RANGE = 1000


def ambient_rank(model: ModelSpace) -> int:
    """Rank of gl_n (n), sp_n (n/2) or so_n (floor(n/2))."""
    n = model.n
    return n if model.kind is AlgebraKind.GL else n // 2


# ---------------------------------------------------------------------------
# functionals


def functional_vector(alg: CentralizerAlgebra, alpha) -> list[Fraction]:
    """Coordinates of a functional given as ``{label or Var: value}`` or a sequence."""
    if isinstance(alpha, Mapping):
        out = [Fraction(0)] * alg.dim
        for key, v in alpha.items():
            lab = tuple(key.idx) if isinstance(key, Var) else tuple(key)
            out[alg.index_of[lab]] += Fraction(v)
        return out
    vec = [Fraction(x) for x in alpha]
    if len(vec) != alg.dim:
        raise ValueError("functional has the wrong length")
    return vec


def random_vector(dim: int, rng: random.Random, bound: int = COORD_RANGE) -> list[Fraction]:
    return [Fraction(rng.randint(-bound, bound)) for _ in range(dim)]


def stabiliser(alg: CentralizerAlgebra, alpha) -> list[list[Fraction]]:
    """Kernel of the skew matrix ``α([ξ_a, ξ_b])``."""
    B = alg.skew_form(functional_vector(alg, alpha))
    return la.kernel_basis(B, alg.dim)


def index_and_stabiliser(alg: CentralizerAlgebra, alpha) -> tuple[list, int]:
    basis = stabiliser(alg, alpha)
    return basis, len(basis)


def corank(alg: CentralizerAlgebra, alpha) -> int:
    B = alg.skew_form(functional_vector(alg, alpha))
    return alg.dim - la.rank(B, alg.dim)


def estimate_index(alg: CentralizerAlgebra, samples: int = 20, seed: int = 0) -> int:
    rng = random.Random(seed)
    return min(corank(alg, random_vector(alg.dim, rng)) for _ in range(samples))


def element_centraliser(alg: CentralizerAlgebra, x: Sequence) -> list[list[Fraction]]:
    """Basis of ``(g_e)_x``, the kernel of ``ad x`` on ``g_e``."""
    return la.kernel_basis(alg.ad_matrix(x), alg.dim)


def element_regular_dimension(alg: CentralizerAlgebra, samples: int = 20, seed: int = 0) -> int:
    """Minimal ``dim (g_e)_x`` over seeded random elements."""
    rng = random.Random(seed)
    return min(len(element_centraliser(alg, random_vector(alg.dim, rng))) for _ in range(samples))


# ---------------------------------------------------------------------------
# centre


@dataclass
class CentreResult:
    basis: list[list[Fraction]]
    E_basis: list[list[Fraction]]
    extra: list[Fraction] | None
    expected_dim: int

    @property
    def dim(self) -> int:
        return len(self.basis)


def has_extra_central_element(model: ModelSpace) -> bool:
    """The orthogonal case with an extra central element beyond powers of e."""
    d = model.d
    if model.kind is not AlgebraKind.SO or model.k < 2:
        return False
    d3 = d[2] if model.k > 2 else -1
    return d[1] > d3 and d[0] % 2 == 0 and d[1] % 2 == 0


def centre_dimension_formula(model: ModelSpace) -> int:
    d1 = model.d[0]
    if model.kind is AlgebraKind.GL:
        return d1 + 1
    odd = sum(1 for s in range(d1 + 1) if s % 2 == 1)
    return odd + int(has_extra_central_element(model))


def _in_algebra(alg: CentralizerAlgebra, X: Mapping) -> list[Fraction] | None:
    """Coordinates of ``X`` if it lies in g_e, else None."""
    coords = alg.coordinates(X)
    back = alg.element(coords)
    clean = {k: v for k, v in X.items() if v}
    return coords if back == clean else None


def power_of_e(model: ModelSpace, s: int) -> dict:
    out: dict = {}
    for i in range(1, model.k + 1):
        if s <= model.d[i - 1]:
            out = sp_add(out, label_matrix(model, (i, i, s)))
    return out


def centre(alg: CentralizerAlgebra) -> CentreResult:
    rows: dict = {}
    for (a, b), terms in alg.structure.items():
        for c, coef in terms:
            rows.setdefault((b, c), {})[a] = coef
    ech = la.RowEchelon(alg.dim)
    for key in sorted(rows):
        ech.add(rows[key])
    basis = ech.kernel()
    model = alg.model
    E_basis = []
    for s in range(model.d[0] + 1):
        v = _in_algebra(alg, power_of_e(model, s))
        if v is not None:
            E_basis.append(v)
    extra = None
    if has_extra_central_element(model):
        d = model.d
        X = sp_add(label_matrix(model, (1, 2, d[1])), label_matrix(model, (2, 1, d[0])), -1)
        extra = _in_algebra(alg, X)
    return CentreResult(basis, E_basis, extra, centre_dimension_formula(model))


# ---------------------------------------------------------------------------
# regularity in type A


def alpha_point(alg: CentralizerAlgebra, a: Sequence | None = None) -> list[Fraction]:
    """``α = Σ a_i (ξ_i^{i,d_i})^*``, default ``a_i = i``."""
    d = alg.model.d
    k = alg.model.k
    a = list(range(1, k + 1)) if a is None else list(a)
    return functional_vector(alg, {(i, i, d[i - 1]): a[i - 1] for i in range(1, k + 1)})


def beta_point(alg: CentralizerAlgebra) -> list[Fraction]:
    """``β = Σ_{i<k} (ξ_{i+1}^{i,d_i})^*``."""
    d = alg.model.d
    return functional_vector(alg, {(i + 1, i, d[i - 1]): 1 for i in range(1, alg.model.k)})


def gamma_point(alg: CentralizerAlgebra) -> list[Fraction]:
    """``γ = Σ_{i<k} (ξ_i^{i+1,d_{i+1}})^*``."""
    d = alg.model.d
    return functional_vector(alg, {(i, i + 1, d[i]): 1 for i in range(1, alg.model.k)})


def gamma_stabiliser_basis(alg: CentralizerAlgebra, literal: bool = False) -> list[list[Fraction]]:
    """Chains ``η_{i,s} = ξ_i^{1,s} + ξ_{i+1}^{2,s_1} + ξ_{i+2}^{3,s_2} + …``.

    Here ``d_1-d_i <= s <= d_1`` and ``s_{r+1} = s_r + d_{r+2} - d_{i+r+1}``, the
    shift forced by ``γ([ξ, ·]) = 0``; terms outside the legal range are dropped.
    With ``literal=True`` every term keeps the same ``s``, which only agrees
    with the stabiliser when the shifts vanish (e.g. two blocks, equal blocks).
    """
    model = alg.model
    k, d = model.k, model.d
    out = []
    for i in range(1, k + 1):
        for s in range(d[0] - d[i - 1], d[0] + 1):
            v = [Fraction(0)] * alg.dim
            u = s
            for r in range(k - i + 1):
                lab = (i + r, 1 + r, u)
                if label_valid(model, lab):
                    v[alg.index_of[lab]] = Fraction(1)
                if not literal and r + 1 < k - i + 1:
                    u += d[r + 1] - d[i + r]
            out.append(v)
    return out


def rho_action(alg: CentralizerAlgebra, gamma: Sequence, t) -> list[Fraction]:
    """``ρ(t)`` on g_e^*: the dual coordinate of ``(i, j, s)`` scales by ``t^{i-j+1}``."""
    t = Fraction(t)
    return [Fraction(g) * t ** w for g, w in zip(gamma, alg.rhoweight)]


def rho_action_by_matrices(alg: CentralizerAlgebra, gamma: Sequence, t) -> list[Fraction]:
    """``(ρ(t)γ)(ξ) = t γ(a(t)^{-1} ξ a(t))`` with ``a(t) w_i = t^i w_i``."""
    t = Fraction(t)
    model = alg.model
    a, ainv = {}, {}
    for i in range(1, model.k + 1):
        for s in range(model.d[i - 1] + 1):
            p = model.index(i, s)
            a[(p, p)] = t ** i
            ainv[(p, p)] = t ** (-i)
    out = []
    for g in alg.basis:
        conj = sp_mul(sp_mul(ainv, g.matrix), a)
        coords = alg.coordinates(conj)
        out.append(t * sum((Fraction(x) * y for x, y in zip(gamma, coords)), Fraction(0)))
    return out


@dataclass
class RegularityReport:
    expected: int
    coranks: dict = field(default_factory=dict)
    gamma_basis_matches: bool = False
    gamma_basis_literal: bool = False
    plane_coranks: list = field(default_factory=list)
    span_coranks: list = field(default_factory=list)
    scaling_ok: bool = False
    rho_matches_matrices: bool = False

    @property
    def ok(self) -> bool:
        return (
            all(c == self.expected for c in self.coranks.values())
            and self.gamma_basis_matches
            and all(c == self.expected for c in self.plane_coranks)
            and all(c == self.expected for c in self.span_coranks)
            and self.scaling_ok
            and self.rho_matches_matrices
        )


def regularity_certificates(alg: CentralizerAlgebra, samples: int = 50, t_samples: int = 10,
                            seed: int = 0) -> RegularityReport:
    if alg.kind is not AlgebraKind.GL:
        raise ValueError("the three-point certificate is for the general linear kind")
    rng = random.Random(seed)
    rep = RegularityReport(expected=alg.model.n)
    al, be, ga = alpha_point(alg), beta_point(alg), gamma_point(alg)
    for name, pt in (("alpha", al), ("beta", be), ("gamma", ga)):
        rep.coranks[name] = corank(alg, pt) if any(pt) else alg.dim
    stab = stabiliser(alg, ga)
    rep.gamma_basis_matches = la.same_span(stab, gamma_stabiliser_basis(alg), alg.dim)
    rep.gamma_basis_literal = la.same_span(stab, gamma_stabiliser_basis(alg, literal=True), alg.dim)

    def comb(x, y, z):
        return [x * p + y * q + z * r for p, q, r in zip(al, be, ga)]

    for _ in range(samples):
        x, y = (Fraction(rng.randint(-COORD_RANGE, COORD_RANGE)) for _ in range(2))
        rep.plane_coranks.append(corank(alg, comb(x, y, 1)))
    for _ in range(samples):
        x, y, z = (Fraction(rng.randint(-COORD_RANGE, COORD_RANGE)) for _ in range(3))
        if x == y == z == 0:
            z = Fraction(1)
        rep.span_coranks.append(corank(alg, comb(x, y, z)))
    ok = True
    match = True
    for _ in range(t_samples):
        t = Fraction(rng.randint(1, 50), rng.randint(1, 50)) * rng.choice((1, -1))
        x, y = (Fraction(rng.randint(-COORD_RANGE, COORD_RANGE)) for _ in range(2))
        lhs = rho_action(alg, comb(x, y, 1), t)
        ok &= lhs == comb(x * t, y * t * t, 1)
        match &= lhs == rho_action_by_matrices(alg, comb(x, y, 1), t)
    rep.scaling_ok = ok
    rep.rho_matches_matrices = match
    return rep


# ---------------------------------------------------------------------------
# nilpotent commuting pair


@dataclass
class NilpotentPair:
    x: list[Fraction]
    matrix: dict
    nilpotent: bool
    dim: int
    expected: int


def pair_element_matrix(model: ModelSpace) -> dict:
    """``Σ_{i<k} ξ_i^{i+1,0}``, symmetrised by its partner term outside type A."""
    X: dict = {}
    for i in range(1, model.k):
        lab = (i, i + 1, 0)
        X = sp_add(X, label_matrix(model, lab))
        if model.kind is not AlgebraKind.GL:
            p, sign = partner(model, lab)
            X = sp_add(X, label_matrix(model, p), sign)
    return X


def is_nilpotent(X: Mapping, n: int) -> bool:
    P = dict(X)
    for _ in range(n):
        if not P:
            return True
        P = sp_mul(P, X)
    return not P


def nilpotent_pair(alg: CentralizerAlgebra) -> NilpotentPair:
    X = pair_element_matrix(alg.model)
    x = _in_algebra(alg, X)
    if x is None:
        raise AssertionError("the pair element is not in g_e")
    dim = len(element_centraliser(alg, x))
    return NilpotentPair(x, X, is_nilpotent(X, alg.model.n), dim, ambient_rank(alg.model))


# ---------------------------------------------------------------------------
# argument shifts


def directional_derivative(alg: CentralizerAlgebra, p: SparsePoly, a: Sequence) -> SparsePoly:
    """``∂_a p`` with ``∂_a ξ = a(ξ)`` on linear elements."""
    out = SparsePoly()
    for v in p.variables():
        c = a[alg.var_index[v]]
        if c:
            out = out + p.diff(v).scale(c)
    return out


def linear_element(alg: CentralizerAlgebra, p: SparsePoly) -> list[Fraction]:
    """Element of g_e represented by a linear polynomial."""
    if p.constant_term() or p.degree() > 1:
        raise ValueError("expected a linear form")
    out = [Fraction(0)] * alg.dim
    for v, c in p.linear_coefficients().items():
        out[alg.var_index[v]] = Fraction(c)
    return out


def jacobian_rank(alg: CentralizerAlgebra, polys: Sequence[SparsePoly], seed: int = 0) -> int:
    rng = random.Random(seed)
    point = {v: Fraction(rng.randint(-COORD_RANGE, COORD_RANGE)) for v in alg.vars}
    rows = []
    for p in polys:
        rows.append([p.diff(v).evaluate(point) for v in alg.vars])
    return la.rank(rows, alg.dim) if rows else 0


@dataclass
class ShiftFamily:
    base: list[Fraction]
    generators: list[SparsePoly]
    commuting: bool
    jacobian_rank: int
    target: int


def shift_family(alg: CentralizerAlgebra, H: Sequence[SparsePoly], a, index: int | None = None,
                 seed: int = 0) -> ShiftFamily:
    a = functional_vector(alg, a)
    gens: list[SparsePoly] = []
    for h in H:
        cur = h
        while not cur.is_constant():
            if cur not in gens:
                gens.append(cur)
            cur = directional_derivative(alg, cur, a)
    commuting = all(
        poisson_bracket(alg, gens[i], gens[j]).is_zero()
        for i in range(len(gens)) for j in range(i + 1, len(gens))
    )
    if index is None:
        index = ambient_rank(alg.model)
    return ShiftFamily(a, gens, commuting, jacobian_rank(alg, gens, seed), (alg.dim + index) // 2)


# ---------------------------------------------------------------------------
# the stabiliser condition for reducibility


class Verdict(Enum):
    HOLDS_ON_SAMPLES = "HoldsOnSamples"
    FAILS_WITH_WITNESS = "FailsWithWitness"


@dataclass
class StrangeResult:
    verdict: Verdict
    index: int
    element_min: int
    witness: tuple | None = None


def strange_condition(alg: CentralizerAlgebra, trials: int = 20, seed: int = 0) -> StrangeResult:
    """Sample regular α and elements of ``(g_e)_α``; report a regular element if one is hit.

    A semi-decision: ``HOLDS_ON_SAMPLES`` is evidence only.
    """
    rng = random.Random(seed)
    ind = estimate_index(alg, seed=seed)
    emin = element_regular_dimension(alg, seed=seed)
    for _ in range(trials):
        alpha = random_vector(alg.dim, rng)
        stab = stabiliser(alg, alpha)
        if len(stab) != ind:
            continue
        coeffs = [rng.randint(-COORD_RANGE, COORD_RANGE) for _ in stab]
        x = [sum((c * v[a] for c, v in zip(coeffs, stab)), Fraction(0)) for a in range(alg.dim)]
        if len(element_centraliser(alg, x)) == emin:
            return StrangeResult(Verdict.FAILS_WITH_WITNESS, ind, emin, (alpha, x))
    return StrangeResult(Verdict.HOLDS_ON_SAMPLES, ind, emin)
