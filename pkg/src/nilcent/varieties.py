"""Commuting-variety equations, null-cone generators and their components.

Coordinates on ``g_e^*`` are the variables ``xi[i,j,s]`` of the basis.  The
null-cone is studied on the subspace ``P`` cut out by the linear invariants:
each linear invariant is solved for its leading coordinate (in ``(i, j, s)``
order) and the remaining invariants are rewritten in the other coordinates.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import exact_linalg as la
from .centralizer import CentralizerAlgebra, build_algebra, label_matrix
from .groebner import (
    Ideal,
    SizeGuardExceeded,
    check_guard,
    groebner,
    ideal_dimension,
    normal_form,
    radical_membership,
    saturate,
)
from .invariants import hweight_grading, proportionality, restricted_invariants
from .model_space import AlgebraKind, build_model
from .poly_algebra import SparsePoly, Var, principal_minor_sums, xi
from .structure_analysis import ambient_rank, corank, functional_vector, stabiliser


class UnsupportedPartitionFamily(ValueError):
    pass


class NoSubspaceFound(RuntimeError):
    pass


def _rand(rng: random.Random, bound: int = 9, nonzero: bool = False) -> Fraction:
    while True:
        v = rng.randint(-bound, bound)
        if v or not nonzero:
            return Fraction(v)


# ---------------------------------------------------------------------------
# two-block mixed commuting variety


def toeplitz(coeffs: Sequence) -> list[list]:
    """Upper-triangular Toeplitz matrix with ``coeffs[k]`` on the k-th superdiagonal."""
    n = len(coeffs)
    zero = 0 * coeffs[0] if n else 0
    return [[coeffs[c - r] if c >= r else zero for c in range(n)] for r in range(n)]


def _poly_matvec(A, x):
    return [sum((a * b for a, b in zip(row, x)), SparsePoly()) for row in A]


def two_block_variables(n_small: int) -> dict[str, list[Var]]:
    return {name: [Var(name, i) for i in range(1, n_small + 1)] for name in "abcxyz"}


def two_block_equations(m_big: int, n_small: int) -> Ideal:
    """The bilinear system ``AX = BY, CX = BZ, CY = AZ`` (3·n equations)."""
    if not m_big >= n_small >= 1:
        raise ValueError("need m_big >= n_small >= 1")
    V = two_block_variables(n_small)
    P = {k: [SparsePoly.var(v) for v in vs] for k, vs in V.items()}
    A, B, C = (toeplitz(P[k]) for k in "abc")
    X, Y, Z = P["x"], P["y"], P["z"]
    eqs = []
    for lhs, rhs in ((_poly_matvec(A, X), _poly_matvec(B, Y)),
                     (_poly_matvec(C, X), _poly_matvec(B, Z)),
                     (_poly_matvec(C, Y), _poly_matvec(A, Z))):
        eqs.extend(l - r for l, r in zip(lhs, rhs))
    order = [v for k in "abcxyz" for v in V[k]]
    return Ideal(eqs, tuple(order))


@dataclass
class TwoBlockData:
    m_big: int
    n_small: int
    a: list
    b: list
    c: list
    X: list
    Y: list
    Z: list

    def matrices(self):
        return toeplitz(self.a), toeplitz(self.b), toeplitz(self.c)

    def values(self) -> dict:
        out = {}
        for name in "abc":
            for i, v in enumerate(getattr(self, name), 1):
                out[Var(name, i)] = v
        for name in "XYZ":
            for i, v in enumerate(getattr(self, name), 1):
                out[Var(name.lower(), i)] = v
        return out

    def satisfies(self) -> bool:
        A, B, C = self.matrices()
        mv = la.matvec
        return (mv(A, self.X) == mv(B, self.Y) and mv(C, self.X) == mv(B, self.Z)
                and mv(C, self.Y) == mv(A, self.Z))


def sample_two_block(m_big: int, n_small: int, rng: random.Random) -> TwoBlockData:
    """A point of the open set ``b_1 != 0``: ``Y = B^{-1}AX``, ``Z = B^{-1}CX``."""
    n = n_small
    a = [_rand(rng) for _ in range(n)]
    b = [_rand(rng, nonzero=True)] + [_rand(rng) for _ in range(n - 1)]
    c = [_rand(rng) for _ in range(n)]
    X = [_rand(rng) for _ in range(n)]
    A, B, C = toeplitz(a), toeplitz(b), toeplitz(c)
    Binv = la.inverse(B)
    Y = la.matvec(Binv, la.matvec(A, X))
    Z = la.matvec(Binv, la.matvec(C, X))
    return TwoBlockData(m_big, n, a, b, c, X, Y, Z)


def two_block_pair(alg: CentralizerAlgebra, data: TwoBlockData) -> tuple[list, list]:
    """The pair ``(ξ, α)`` in ``g_e × g_e^*`` encoded by a two-block datum.

    ``ξ = Σ a_{i+1} ξ_1^{2,i} + c_{i+1} ξ_2^{2,i} + b_{i+1} ξ_2^{1,i+m-n}`` and
    ``α = Σ x_{i+1} (ξ_1^{2,i})^* + y_{i+1} (ξ_2^{1,i+m-n})^* - z_{i+1} (ξ_1^{1,m-n+i})^*``.
    """
    m, n = data.m_big, data.n_small
    if alg.model.partition.parts != (m, n) or alg.kind is not AlgebraKind.GL:
        raise ValueError("algebra does not match the two-block datum")
    I = alg.index_of
    x = [Fraction(0)] * alg.dim
    al = [Fraction(0)] * alg.dim
    for i in range(n):
        x[I[(1, 2, i)]] += data.a[i]
        x[I[(2, 2, i)]] += data.c[i]
        x[I[(2, 1, i + m - n)]] += data.b[i]
        al[I[(1, 2, i)]] += data.X[i]
        al[I[(2, 1, i + m - n)]] += data.Y[i]
        al[I[(1, 1, m - n + i)]] -= data.Z[i]
    return x, al


def moment_map_defects(alg: CentralizerAlgebra, x: Sequence, alpha: Sequence) -> list:
    """Basis labels ``ξ_b`` with ``α([x, ξ_b]) != 0``."""
    bad = []
    for b in range(alg.dim):
        e_b = [0] * alg.dim
        e_b[b] = 1
        v = alg.bracket_vec(x, e_b)
        if sum((p * q for p, q in zip(alpha, v)), Fraction(0)):
            bad.append(alg.labels[b])
    return bad


def toeplitz_solve(X: Sequence, Y: Sequence) -> list:
    """Coefficients ``e`` with ``toeplitz(e) X = Y`` (needs ``X[-1] != 0``)."""
    n = len(X)
    # column k of the system is X shifted up by k
    M = [[X[r + k] if r + k < n else Fraction(0) for k in range(n)] for r in range(n)]
    return la.matvec(la.inverse(M), Y)


def degeneration_point(m_big: int, n_small: int, d: int, rng: random.Random) -> TwoBlockData:
    """A point with ``rk B = n - d`` and ``x_n y_n z_n != 0``."""
    n = n_small
    if not 1 <= d <= n:
        raise ValueError("need 1 <= d <= n")
    while True:
        a = [Fraction(0)] * d + [_rand(rng) for _ in range(n - d)]
        b = [Fraction(0)] * d + [_rand(rng, nonzero=True) for _ in range(min(1, n - d))]
        b += [_rand(rng) for _ in range(n - len(b))]
        c = [Fraction(0)] * d + [_rand(rng) for _ in range(n - d)]
        X = [_rand(rng) for _ in range(n - 1)] + [_rand(rng, nonzero=True)]
        # restrict to the lower-right (n-d) corner: rows 0..n-d-1, columns d..n-1
        Ap, Bp, Cp = (toeplitz(v[d:]) for v in (a, b, c))
        Xp = X[d:]
        Binv = la.inverse(Bp)
        Yp = la.matvec(Binv, la.matvec(Ap, Xp))
        Zp = la.matvec(Binv, la.matvec(Cp, Xp))
        Y = [_rand(rng) for _ in range(d)] + Yp
        Z = [_rand(rng) for _ in range(d)] + Zp
        if Y[-1] and Z[-1]:
            return TwoBlockData(m_big, n, a, b, c, X, Y, Z)


@dataclass
class DegenerationCheck:
    point: TwoBlockData
    E_A: list
    E_C: list
    lambdas: list
    all_hold: bool
    in_open_set: bool


def degeneration_family(data: TwoBlockData, lambdas: Sequence) -> DegenerationCheck:
    """``(A+λE_A, B+λ·1, C+λE_C; X, Y, Z)`` with ``Y = E_A X`` and ``Z = E_C X``."""
    eA = toeplitz_solve(data.X, data.Y)
    eC = toeplitz_solve(data.X, data.Z)
    ok = True
    open_ok = True
    one = [Fraction(1)] + [Fraction(0)] * (data.n_small - 1)
    for lam in lambdas:
        pt = TwoBlockData(
            data.m_big, data.n_small,
            [p + lam * q for p, q in zip(data.a, eA)],
            [p + lam * q for p, q in zip(data.b, one)],
            [p + lam * q for p, q in zip(data.c, eC)],
            data.X, data.Y, data.Z,
        )
        ok = ok and pt.satisfies()
        open_ok = open_ok and pt.b[0] != 0
    return DegenerationCheck(data, eA, eC, list(lambdas), ok, open_ok)


# ---------------------------------------------------------------------------
# null-cone on the zero set of the linear invariants


@dataclass
class NullConeData:
    alg: CentralizerAlgebra
    coordinates: tuple           # free coordinates of P
    substitution: dict           # eliminated coordinate -> linear form on P
    generators: list             # (key, degree, poly on P), nonlinear only
    linear: list                 # (key, poly) linear invariants

    @property
    def ideal(self) -> Ideal:
        return Ideal([p for _, _, p in self.generators], self.coordinates)

    @property
    def polys(self) -> list[SparsePoly]:
        return [p for _, _, p in self.generators]

    def generator(self, key) -> SparsePoly:
        for k, _, p in self.generators:
            if k == key:
                return p
        raise KeyError(key)

    def vanishes_at(self, point: dict) -> bool:
        full = {v: point.get(v, 0) for v in self.coordinates}
        return all(p.evaluate(full) == 0 for p in self.polys)

    @property
    def expected_dimension(self) -> int:
        return len(self.coordinates) - len(self.generators)


def nullcone_ideal(alg: CentralizerAlgebra, invariants=None) -> NullConeData:
    inv = invariants or restricted_invariants(alg)
    order = sorted(alg.vars)
    linear = [(k, p) for k, m, p in inv.items if m == 1]
    rows = [[Fraction(p.terms.get((v,), 0)) for v in order] for _, p in linear]
    R, piv = la.rref(rows, len(order)) if rows else ([], [])
    sub = {}
    for r, c in zip(R, piv):
        sub[order[c]] = SparsePoly({(order[t],): -r[t] for t in range(len(order)) if t != c and r[t]})
    coords = tuple(v for k, v in enumerate(order) if k not in set(piv))
    gens = []
    for k, m, p in inv.items:
        if m > 1:
            q = p.subs(sub)
            if q:
                gens.append((k, m, q))
    return NullConeData(alg, coords, sub, gens, linear)


def is_conical(nc: NullConeData, points: Sequence[dict], scalars=(2, -3, Fraction(1, 2))) -> bool:
    """Membership of sampled null-cone points is preserved by scaling."""
    for pt in points:
        if not nc.vanishes_at(pt):
            return False
        for t in scalars:
            if not nc.vanishes_at({v: t * x for v, x in pt.items()}):
                return False
    return True


def generators_homogeneous(nc: NullConeData) -> bool:
    w = hweight_grading(nc.alg)
    return all(p.is_homogeneous() and p.is_homogeneous(w) for p in nc.polys)


# ---------------------------------------------------------------------------
# components of the null-cone


@dataclass
class Component:
    name: str
    equations: list                  # linear equations (all of them, if linear)
    linear: bool
    sample: Callable                 # rng -> point of P
    closed_test: Callable            # point -> bool; necessary for membership in the closure
    witness: dict | None = None
    cut: bool = False                # the null-cone intersected with the equations


@dataclass
class ComponentReport:
    partition: tuple
    family: str
    expected_count: int
    components: list
    vanish: list                     # per component: all generators vanish at samples
    distinct: bool
    linear_dims: dict                # name -> (dimension, expected)
    groebner_dims: dict              # name -> dimension or None when guarded
    coverage: bool | None            # None: not attempted
    formula_match: bool | None = None

    @property
    def count(self) -> int:
        return len(self.components)

    @property
    def ok(self) -> bool:
        return (self.count == self.expected_count and all(self.vanish) and self.distinct
                and all(d == e for d, e in self.linear_dims.values())
                and all(v is None or v == self.expected_dim for v in self.groebner_dims.values())
                and self.coverage is not False and self.formula_match is not False)

    @property
    def expected_dim(self) -> int:
        return next(iter(self.linear_dims.values()))[1] if self.linear_dims else self._dim

    _dim: int = 0


def _linear_component(nc: NullConeData, name: str, zero_vars: Sequence[Var]) -> Component:
    zero = set(zero_vars)

    def sample(rng):
        return {v: (Fraction(0) if v in zero else _rand(rng, nonzero=True)) for v in nc.coordinates}

    def closed(pt):
        return all(pt.get(v, 0) == 0 for v in zero)

    return Component(name, [SparsePoly.var(v) for v in zero_vars], True, sample, closed)


def _two_block_components(nc: NullConeData) -> tuple[list, int, bool]:
    n, m = nc.alg.model.partition.parts
    k = n - m
    x = [xi(1, 2, m - i) for i in range(1, m + 1)]
    y = [xi(2, 1, n - i) for i in range(1, m + 1)]
    z = [xi(2, 2, m - i) for i in range(1, m + 1)]
    X, Y, Z = ([SparsePoly.var(v) for v in vs] for vs in (x, y, z))

    def f(q):
        s = sum((X[i - 1] * Y[q - i - 1] for i in range(1, q) if 1 <= q - i <= m), SparsePoly())
        if q >= k + 2:
            p = q - k
            s = s + sum((Z[i - 1] * Z[p - i - 1] for i in range(1, p) if 1 <= p - i <= m), SparsePoly())
        return s

    formula = [f(q) for q in range(2, m + 2)]
    match = len(formula) == len(nc.generators) and all(
        any(proportionality(g, fq) for g in nc.polys) for fq in formula)

    comps = []
    top = min(k, m)
    for a in range(top + 1):
        b = top - a
        zero_vars = x[:a] + y[:b]
        if k >= m:
            comps.append(_linear_component(nc, f"L[{a},{b}]", zero_vars))
            continue

        def sample(rng, a=a, b=b):
            pt = {v: Fraction(0) for v in nc.coordinates}
            for i in range(a, m):
                pt[x[i]] = _rand(rng, nonzero=True)
            for j in range(b + 1, m):
                pt[y[j]] = _rand(rng, nonzero=True)
            z1 = _rand(rng, nonzero=True)
            pt[z[0]] = z1
            pt[y[b]] = -z1 * z1 / pt[x[a]]
            for j in range(1, m):
                if j >= m - k:
                    pt[z[j]] = _rand(rng)
                    continue
                # f_{k+2+j} is linear in z_{j+1} with coefficient 2 z_1
                pt[z[j]] = Fraction(0)
                rest = f(k + 2 + j).evaluate(pt)
                pt[z[j]] = -rest / (2 * z1)
            return pt

        def closed(pt, zero_vars=zero_vars):
            return all(pt.get(v, 0) == 0 for v in zero_vars) and nc.vanishes_at(pt)

        comps.append(Component(f"P[{a},{b}]", [SparsePoly.var(v) for v in zero_vars], False,
                               sample, closed, cut=True))
    return comps, top + 1, match


def _krylov_rank(M, v) -> int:
    vecs, cur = [], list(v)
    for _ in range(len(v)):
        vecs.append(cur)
        cur = la.matvec(M, cur)
    return la.rank(vecs, len(v))


def _hook_components(nc: NullConeData) -> tuple[list, int, bool]:
    parts = nc.alg.model.partition.parts
    n, m = parts[0], len(parts) - 1
    u = [xi(1, a, 0) for a in range(2, m + 2)]
    phi = [xi(a, 1, n - 1) for a in range(2, m + 2)]
    Mv = [[xi(a, b, 0) for b in range(2, m + 2)] for a in range(2, m + 2)]

    def mats(pt):
        M = [[pt.get(v, Fraction(0)) for v in row] for row in Mv]
        return M, [pt.get(v, Fraction(0)) for v in u], [pt.get(v, Fraction(0)) for v in phi]

    # generator r+2 is u^T (Σ_p (-1)^p Δ_p(M) M^{r-p}) φ
    U = [SparsePoly.var(v) for v in u]
    F = [SparsePoly.var(v) for v in phi]
    MP = [[SparsePoly.var(v) for v in row] for row in Mv]
    deltas = [SparsePoly.const(1)] + principal_minor_sums(MP)
    chain, cur = [], F
    for r in range(m):
        chain.append(sum((p * q for p, q in zip(U, cur)), SparsePoly()))
        cur = _poly_matvec(MP, cur)
    formula = [sum((chain[r - p] * deltas[p] * (-1) ** p for p in range(r + 1)), SparsePoly())
               for r in range(m)]
    gens = sorted(nc.polys, key=lambda p: p.degree())
    match = len(gens) == m and all(proportionality(g, f) for g, f in zip(gens, formula))

    comps = []
    for j in range(m + 1):
        if j == 0:
            comps.append(_linear_component(nc, "C[0]", phi))
            comps[-1].closed_test = lambda pt: not any(mats(pt)[2])
            continue
        if j == m:
            comps.append(_linear_component(nc, f"C[{m}]", u))
            comps[-1].closed_test = lambda pt: not any(mats(pt)[1])
            continue

        def sample(rng, j=j):
            while True:
                S = [[_rand(rng) for _ in range(m)] for _ in range(m)]
                if la.det(S):
                    break
            Sinv = la.inverse(S)
            T = [[(_rand(rng) if (c >= j or r < j) else Fraction(0)) for c in range(m)] for r in range(m)]
            M = la.matmul(la.matmul(S, T), Sinv)
            ph = la.matvec(S, [_rand(rng, nonzero=True) if r < j else Fraction(0) for r in range(m)])
            w = [Fraction(0) if r < j else _rand(rng, nonzero=True) for r in range(m)]
            uu = la.matvec(la.transpose(Sinv), w)
            pt = {}
            for a in range(m):
                pt[u[a]] = uu[a]
                pt[phi[a]] = ph[a]
                for b in range(m):
                    pt[Mv[a][b]] = M[a][b]
            return pt

        def closed(pt, j=j):
            M, uu, ph = mats(pt)
            return (_krylov_rank(M, ph) <= j and _krylov_rank(la.transpose(M), uu) <= m - j
                    and nc.vanishes_at(pt))

        comps.append(Component(f"C[{j}]", [], False, sample, closed))
    return comps, m + 1, match


def _covering_products(components: Sequence[Component], limit: int = 16):
    """Products of one linear equation per component, or None when not applicable.

    The null-cone lies in the union of the components exactly when every
    product lies in the radical, provided each component is a linear space
    or the null-cone cut by its equations.
    """
    if not all(c.linear or c.cut for c in components):
        return None
    if any(c.cut and not c.equations for c in components):
        return []
    eqs = [c.equations for c in components]
    total = 1
    for e in eqs:
        total *= len(e)
    if total > limit:
        return None
    out = []
    for choice in itertools.product(*eqs):
        p = SparsePoly.const(1)
        for q in choice:
            p = p * q
        out.append(p)
    return out


def partition_family(parts: Sequence[int]) -> str:
    if len(parts) == 2:
        return "two-block"
    if len(parts) >= 2 and parts[0] >= 2 and all(p == 1 for p in parts[1:]):
        return "hook"
    raise UnsupportedPartitionFamily(f"{tuple(parts)} is neither a hook nor two-block")


def component_witnesses(alg: CentralizerAlgebra, samples: int = 4, seed: int = 0,
                        coverage: bool = True) -> ComponentReport:
    """Check the claimed null-cone components of a hook or two-block partition (type A)."""
    if alg.kind is not AlgebraKind.GL:
        raise UnsupportedPartitionFamily("components are described for type A only")
    parts = alg.model.partition.parts
    family = partition_family(parts)
    nc = nullcone_ideal(alg)
    if family == "two-block":
        comps, expected, match = _two_block_components(nc)
    else:
        comps, expected, match = _hook_components(nc)
    rng = random.Random(seed)
    target = alg.dim - ambient_rank(alg.model)

    vanish = []
    for c in comps:
        pts = [c.sample(rng) for _ in range(samples)]
        vanish.append(all(nc.vanishes_at(p) for p in pts))
        c.witness = pts[0]

    distinct = all(
        not other.closed_test(c.witness) and c.closed_test(c.witness)
        for c in comps for other in comps if other is not c
    ) if len(comps) > 1 else all(c.closed_test(c.witness) for c in comps)

    linear_dims = {}
    for c in comps:
        if c.linear:
            r = la.rank([[Fraction(e.terms.get((v,), 0)) for v in nc.coordinates] for e in c.equations],
                        len(nc.coordinates))
            linear_dims[c.name] = (len(nc.coordinates) - r, target)

    gdims = {}
    cov = None
    try:
        for c in comps:
            if c.cut:
                gb = groebner(nc.ideal.with_generators(c.equations))
                gdims[c.name] = ideal_dimension(gb)
        if coverage:
            prods = _covering_products(comps)
            if prods is not None:
                gb = groebner(nc.ideal)
                cov = all(radical_membership(p, gb) for p in prods)
    except SizeGuardExceeded:
        gdims = {c.name: None for c in comps if c.cut}

    report = ComponentReport(parts, family, expected, comps, vanish, distinct, linear_dims,
                             gdims, cov, match)
    report._dim = target
    return report


# ---------------------------------------------------------------------------
# component count by factor splitting (used for (3,2,1))


@dataclass
class SplitResult:
    status: str                      # "done", "inconclusive" or "guarded"
    components: list                 # Gröbner bases of the top-dimensional pieces
    count: int | None
    reason: str = ""


def _factor(p: SparsePoly, variables: Sequence[Var]) -> list[SparsePoly]:
    """Distinct irreducible factors over the rationals (via sympy)."""
    import sympy

    syms = {v: sympy.Symbol(f"v{k}") for k, v in enumerate(variables)}
    back = {s: v for v, s in syms.items()}
    expr = sympy.Integer(0)
    for mono, c in p.terms.items():
        c = Fraction(c)
        expr += sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[syms[v] for v in mono])
    _, facs = sympy.factor_list(sympy.expand(expr), *syms.values())
    out = []
    for fac, _ in facs:
        P = sympy.Poly(fac, *syms.values())
        terms = {}
        for exps, c in P.terms():
            mono = []
            for s, e in zip(syms.values(), exps):
                mono.extend([back[s]] * e)
            terms[tuple(sorted(mono))] = Fraction(int(c.p), int(c.q))
        out.append(SparsePoly(terms))
    return out


def _solved_form(p: SparsePoly, v: Var, w: Var) -> bool:
    """``p = c·w^a·v + r`` with ``c`` a constant and ``v`` absent from ``r``."""
    with_v = [m for m in p.terms if v in m]
    if len(with_v) != 1:
        return False
    m = with_v[0]
    return m.count(v) == 1 and all(x in (v, w) for x in m)


def _triangular_subset(polys: Sequence[SparsePoly], w: Var):
    """Generators solving distinct variables (≠ w) with acyclic substitutions."""
    options = [[v for v in sorted(p.variables()) if v != w and _solved_form(p, v, w)] for p in polys]

    def acyclic(assign: dict) -> bool:
        solved = {v: p for p, v in assign.items()}
        state: dict = {}

        def visit(v) -> bool:
            if state.get(v) == 1:
                return False
            if state.get(v) == 2:
                return True
            state[v] = 1
            for u in polys[solved[v]].variables():
                if u != v and u in solved and not visit(u):
                    return False
            state[v] = 2
            return True

        return all(visit(v) for v in solved)

    best: dict = {}

    def search(i: int, assign: dict):
        nonlocal best
        if len(assign) > len(best):
            best = dict(assign)
        if i == len(polys):
            return
        for v in options[i]:
            if v not in assign.values():
                assign[i] = v
                if acyclic(assign):
                    search(i + 1, assign)
                del assign[i]
        search(i + 1, assign)

    search(0, {})
    return [polys[i] for i in sorted(best)]


def prime_certificate(gb) -> Var | None:
    """A variable ``w`` witnessing that the homogeneous ideal of ``gb`` is prime.

    The ideal is saturated with respect to ``w``, and after inverting ``w`` it
    is generated by a triangular system; the quotient is then a localised
    polynomial ring, hence a domain.  Returns None when no witness is found.
    """
    polys = list(gb.polys)
    if not all(p.is_homogeneous() for p in polys) or gb.is_unit:
        return None
    ideal = Ideal(polys, gb.variables)
    for w in gb.variables:
        if normal_form(SparsePoly.var(w), gb).is_zero():
            continue
        sat = saturate(ideal, w)
        if not all(normal_form(p, gb).is_zero() for p in sat.polys):
            continue
        S = _triangular_subset(polys, w)
        if not S:
            continue
        sat_S = saturate(Ideal(S, gb.variables), w)
        if all(normal_form(p, sat_S).is_zero() for p in polys):
            return w
    return None


def split_components(ideal: Ideal, target_dim: int, max_depth: int = 12) -> SplitResult:
    """Split the zero set along factorisations of Gröbner basis elements.

    Pieces whose bases are a linear system plus one irreducible polynomial are
    prime; the result counts the maximal top-dimensional pieces, and is
    ``inconclusive`` when some top-dimensional piece is not certified prime.
    """
    try:
        check_guard(ideal)
    except SizeGuardExceeded as exc:
        return SplitResult("guarded", [], None, str(exc))
    leaves = []

    def recurse(I: Ideal, depth: int):
        gb = groebner(I, guard=False)
        if gb.is_unit or ideal_dimension(gb) < target_dim:
            return
        if depth > max_depth:
            leaves.append(gb)
            return
        for p in sorted(gb.polys, key=lambda q: (q.degree(), len(q))):
            facs = _factor(p, gb.variables)
            if len(facs) > 1 or (facs and facs[0] != p and not proportionality(facs[0], p)):
                for fac in facs:
                    recurse(Ideal(list(gb.polys) + [fac], I.variables), depth + 1)
                return
        leaves.append(gb)

    try:
        recurse(ideal, 0)
    except SizeGuardExceeded as exc:
        return SplitResult("guarded", [], None, str(exc))
    # drop leaves contained in another leaf
    maximal = []
    for i, g in enumerate(leaves):
        contained = False
        for j, h in enumerate(leaves):
            if i == j:
                continue
            inside = all(radical_membership(p, g) for p in h.polys)
            if inside:
                same = all(radical_membership(p, h) for p in g.polys)
                if not same or j < i:
                    contained = True
                    break
        if not contained:
            maximal.append(g)
    if not all(prime_certificate(g) is not None for g in maximal):
        return SplitResult("inconclusive", maximal, len(maximal),
                           "a top-dimensional piece is not certified prime")
    return SplitResult("done", maximal, len(maximal))


# ---------------------------------------------------------------------------
# the non-radical null-cone ideal of (4,2)


@dataclass
class NonRadicalWitness:
    H5: SparsePoly
    H6: SparsePoly
    witness: SparsePoly
    identity_holds: bool
    witness_normal_form: SparsePoly
    square_normal_form: SparsePoly
    matches_display: bool

    @property
    def certified(self) -> bool:
        return (self.identity_holds and bool(self.witness_normal_form)
                and not self.square_normal_form)


def nonradical_witness() -> NonRadicalWitness:
    """For (4,2): ``(ξ_1^{2,1}ξ_2^{1,2})^2 = ξ_1^{2,1}ξ_2^{1,2} H_5 - ξ_1^{2,0}ξ_2^{1,2} H_6``."""
    alg = build_algebra(build_model((4, 2), "GL"))
    nc = nullcone_ideal(alg)
    v = {lab: SparsePoly.var(xi(*lab)) for lab in [(1, 2, 0), (1, 2, 1), (2, 1, 2), (2, 1, 3)]}
    show5 = v[(1, 2, 1)] * v[(2, 1, 2)] + v[(1, 2, 0)] * v[(2, 1, 3)]
    show6 = v[(1, 2, 1)] * v[(2, 1, 3)]
    c5 = proportionality(nc.generator(5), show5)
    c6 = proportionality(nc.generator(6), show6)
    matches = c5 is not None and c6 is not None
    H5 = nc.generator(5) * (1 / c5 if c5 else 1)
    H6 = nc.generator(6) * (1 / c6 if c6 else 1)
    w = v[(1, 2, 1)] * v[(2, 1, 2)]
    identity = w * w == w * H5 - v[(1, 2, 0)] * v[(2, 1, 2)] * H6
    gb = groebner(Ideal([H5, H6], nc.coordinates))
    return NonRadicalWitness(H5, H6, w, identity, normal_form(w, gb), normal_form(w * w, gb), matches)


# ---------------------------------------------------------------------------
# orthogonal and symplectic families with i' = i


@dataclass
class RegularSequenceReport:
    partition: tuple
    kind: AlgebraKind
    rank: int
    codimension: int
    piece_dims: dict                 # m -> dim W_{g,m}
    attempts: int
    subspace: list                   # basis vectors of W_g (dicts Var -> value)
    restricted_dimension: int

    @property
    def regular_sequence(self) -> bool:
        return self.codimension == self.rank

    @property
    def ok(self) -> bool:
        return (self.regular_sequence and len(self.subspace) == self.rank
                and self.restricted_dimension == 0)


def piece_dimensions(model) -> dict:
    """``dim W_{g,m}`` as the jump in rank when block ``m`` is added."""
    out, total, prev = {}, 0, 0
    for m, d in enumerate(model.d, 1):
        total += d + 1
        out[m] = total // 2 - prev
        prev = total // 2
    return out


def regular_sequence_checks(alg: CentralizerAlgebra, retries: int = 25, seed: int = 0,
                    bound: int = 3) -> RegularSequenceReport:
    model = alg.model
    if model.kind is AlgebraKind.GL or any(model.prime(i) != i for i in range(1, model.k + 1)):
        raise UnsupportedPartitionFamily("needs an orthogonal or symplectic partition with i' = i")
    rk = ambient_rank(model)
    inv = restricted_invariants(alg, keys=list(range(1, rk + 1)))
    ring = tuple(sorted(alg.vars))
    gb = groebner(Ideal(inv.polys, ring))
    codim = len(ring) - ideal_dimension(gb)
    dims = piece_dimensions(model)
    params = [Var("t", k) for k in range(1, rk + 1)]
    rng = random.Random(seed)
    for attempt in range(1, retries + 1):
        vectors = []
        for m, r in dims.items():
            pool = [v for v in ring if v.i + v.j == m + 1]
            if r > len(pool):
                raise NoSubspaceFound(f"V*_{m} has dimension {len(pool)} < {r}")
            block = [[Fraction(rng.randint(-bound, bound)) for _ in pool] for _ in range(r)]
            if r and la.rank(block, len(pool)) < r:
                vectors = None
                break
            vectors.extend({v: c for v, c in zip(pool, row) if c} for row in block)
        if vectors is None:
            continue
        point = {}
        for t, vec in zip(params, vectors):
            for v, c in vec.items():
                point[v] = point.get(v, SparsePoly()) + SparsePoly.var(t) * c
        restricted = [p.subs({v: point.get(v, SparsePoly()) for v in ring}) for p in inv.polys]
        rdim = ideal_dimension(groebner(Ideal(restricted, tuple(params))))
        if rdim == 0:
            return RegularSequenceReport(model.partition.parts, model.kind, rk, codim, dims,
                                  attempt, vectors, rdim)
    raise NoSubspaceFound(f"no W_g after {retries} attempts for {model.partition}")


# ---------------------------------------------------------------------------
# generic stabilisers and special witnesses


@dataclass
class GenericFibreCheck:
    stabiliser_dim: int
    rank: int
    torus_dim: int
    torus_in_stabiliser: bool

    @property
    def ok(self) -> bool:
        return self.stabiliser_dim == self.rank and self.torus_in_stabiliser


def torus_basis(alg: CentralizerAlgebra) -> list[list[Fraction]]:
    """Basis elements whose matrices are diagonal (they span a maximal torus of g_e)."""
    out = []
    for a, g in enumerate(alg.basis):
        if all(r == c for (r, c) in g.matrix):
            v = [Fraction(0)] * alg.dim
            v[a] = Fraction(1)
            out.append(v)
    return out


def generic_fibre_check(alg: CentralizerAlgebra, a: Sequence | None = None) -> GenericFibreCheck:
    """At ``α = Σ a_i (ξ_i^{i,d_i})^*`` the stabiliser has dimension rk and contains a torus."""
    model = alg.model
    a = list(a) if a is not None else list(range(1, model.k + 1))
    gl_vals = {(i, i, model.d[i - 1]): Fraction(a[i - 1]) for i in range(1, model.k + 1)}
    alpha = [sum((gl_vals.get(lab, 0) * c for lab, c in g.terms()), Fraction(0)) for g in alg.basis]
    stab = stabiliser(alg, alpha)
    T = torus_basis(alg)
    B = alg.skew_form(alpha)
    inside = all(not any(la.matvec(B, t)) for t in T)
    return GenericFibreCheck(len(stab), ambient_rank(model), len(T), inside)


def coranks_fixing(alg: CentralizerAlgebra, x: Sequence, samples: int = 20, seed: int = 0) -> list[int]:
    """Coranks of random functionals whose stabiliser contains ``x``."""
    adx = alg.ad_matrix(x)
    # α kills [x, g_e] iff α is orthogonal to the column space of ad x
    allowed = la.kernel_basis(la.transpose(adx), alg.dim)
    rng = random.Random(seed)
    out = []
    for _ in range(samples):
        coeffs = [_rand(rng, 1000) for _ in allowed]
        alpha = [sum((c * v[k] for c, v in zip(coeffs, allowed)), Fraction(0)) for k in range(alg.dim)]
        out.append(corank(alg, alpha))
    return out


def semisimple_element(alg: CentralizerAlgebra, i: int, j: int) -> list[Fraction]:
    """Coordinates of ``ξ_i^{i,0} - ξ_j^{j,0}`` (must lie in g_e)."""
    model = alg.model
    X = dict(label_matrix(model, (i, i, 0)))
    for key, v in label_matrix(model, (j, j, 0)).items():
        X[key] = X.get(key, 0) - v
    coords = alg.coordinates(X)
    if alg.element(coords) != {k: v for k, v in X.items() if v}:
        raise ValueError("element is not in the centraliser")
    return coords


@dataclass
class MinimalWitness:
    x_label: tuple
    y_label: tuple
    alpha: list
    beta_nonzero: bool
    e_coefficient: Fraction
    in_variety: bool

    @property
    def ok(self) -> bool:
        return self.in_variety and self.beta_nonzero and self.e_coefficient == 0


def minimal_nilpotent_witness(n: int) -> MinimalWitness:
    """A point of C*(g_e) for (2,1^n) with x, y and β all nonzero and no e^*-part.

    Here x is in the gl_n part, y in V = g(1), β in V^*; such a point is not in
    the closure of the generic-stabiliser component.
    """
    if n < 2:
        raise ValueError("needs n >= 2")
    alg = build_algebra(build_model((2,) + (1,) * n, "GL"))
    I = alg.index_of
    gl_n = [lab for lab in alg.labels if lab[0] > 1 and lab[1] > 1]
    V = [lab for lab in alg.labels if (lab[0] == 1) != (lab[1] == 1)]
    e_idx = I[(1, 1, 1)]
    for xl in gl_n:
        for yl in V:
            x = [Fraction(0)] * alg.dim
            x[I[xl]] += 1
            x[I[yl]] += 1
            adx = alg.ad_matrix(x)
            rows = la.transpose(adx) + [[Fraction(int(k == e_idx)) for k in range(alg.dim)]]
            for alpha in la.kernel_basis(rows, alg.dim):
                if any(alpha[I[lab]] for lab in V):
                    ok = not moment_map_defects(alg, x, alpha)
                    return MinimalWitness(xl, yl, alpha, True, alpha[e_idx], ok)
    return MinimalWitness((), (), [], False, Fraction(0), False)
