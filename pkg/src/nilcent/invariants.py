"""Symmetric invariants of g_e built three ways and checked against each other.

* slice restriction: lowest-degree part of a characteristic-polynomial
  coefficient restricted to ``e + g_f``;
* the signed monomial sum over triples ``(I, σ, s̄)`` (type A);
* the affine restriction ``ψ`` that keeps only ``ξ_1^{i,s}`` (type A).
"""
from __future__ import annotations

import bisect
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import exact_linalg as la
from .centralizer import CentralizerAlgebra, label_valid
from .model_space import AlgebraKind, IndexOutOfRange, ModelSpace, sl2_triple
from .poly_algebra import (
    SparsePoly,
    Var,
    _norm,
    charpoly_coeffs,
    principal_minor_sums,
    graded_components,
    pfaffian,
    xi,
)
from .structure_analysis import COORD_RANGE, ambient_rank


class DegeneratePairing(RuntimeError):
    """The trace pairing between g_e and g_f is singular (an internal bug)."""


# ---------------------------------------------------------------------------
# the slice


@dataclass
class SlodowySlice:
    gf_basis: list[list[list[Fraction]]]
    dual_basis: list[list[list[Fraction]]]
    generic_matrix: list[list[SparsePoly]]
    variables: list[Var]


def _matrix_kernel(model: ModelSpace, F: Sequence[Sequence]) -> list[list[list[Fraction]]]:
    """Basis of ``{X : [F, X] = 0}`` inside gl_n, or inside g when a form is present."""
    n = model.n
    ech = la.RowEchelon(n * n)
    for r in range(n):
        for c in range(n):
            row = {}
            for t in range(n):
                if F[r][t]:
                    row[t * n + c] = row.get(t * n + c, 0) + F[r][t]
                if F[t][c]:
                    row[r * n + t] = row.get(r * n + t, 0) - F[t][c]
            ech.add(row)
    if model.Jmat is not None:
        J = model.Jmat
        for r in range(n):
            for c in range(n):
                row = {}
                for t in range(n):
                    if J[t][c]:
                        row[t * n + r] = row.get(t * n + r, 0) + J[t][c]
                    if J[r][t]:
                        row[t * n + c] = row.get(t * n + c, 0) + J[r][t]
                ech.add(row)
    out = []
    for v in ech.kernel():
        out.append([v[r * n:(r + 1) * n] for r in range(n)])
    return out


def _trace_product(A: dict, B: Sequence[Sequence]) -> Fraction:
    return sum((v * B[c][r] for (r, c), v in A.items()), Fraction(0))


def build_slice(alg: CentralizerAlgebra) -> SlodowySlice:
    model = alg.model
    n = model.n
    tri = sl2_triple(model)
    gf = _matrix_kernel(model, tri.Fmat)
    if len(gf) != alg.dim:
        raise DegeneratePairing(f"dim g_f = {len(gf)} but dim g_e = {alg.dim}")
    G = [[_trace_product(g.matrix, phi) for phi in gf] for g in alg.basis]
    try:
        Ginv = la.inverse(G)
    except ValueError as exc:
        raise DegeneratePairing("trace pairing g_e x g_f is singular") from exc
    dual = []
    for b in range(alg.dim):
        D = [[Fraction(0)] * n for _ in range(n)]
        for c in range(alg.dim):
            x = Ginv[c][b]
            if x:
                for r in range(n):
                    for s in range(n):
                        if gf[c][r][s]:
                            D[r][s] += x * gf[c][r][s]
        dual.append(D)
    M = [[SparsePoly.const(model.Emat[r][c]) for c in range(n)] for r in range(n)]
    for v, D in zip(alg.vars, dual):
        for r in range(n):
            for c in range(n):
                if D[r][c]:
                    M[r][c] = M[r][c] + SparsePoly.var(v, D[r][c])
    return SlodowySlice(gf, dual, M, list(alg.vars))


# ---------------------------------------------------------------------------
# restriction to the slice


def expected_degree(model: ModelSpace, ell: int) -> int:
    """``min{m : ℓ <= λ_1 + … + λ_m}`` (type A)."""
    total = 0
    for m, lam in enumerate(model.partition.parts, start=1):
        total += lam
        if ell <= total:
            return m
    raise IndexOutOfRange(f"ℓ={ell} exceeds n={model.n}")


def _source_polys(alg: CentralizerAlgebra, sl: SlodowySlice, maxdeg: int | None,
                  method: str = "minors") -> dict:
    """Characteristic-polynomial coefficients (and a Pfaffian) on the slice.

    Keys are ``ℓ`` for type A, ``i`` (for ``Δ_{2i}``) otherwise, and ``"pf"``
    for the Pfaffian in even orthogonal type.  ``method`` picks principal
    minor sums or the Berkowitz recurrence for the coefficients.
    """
    if method == "minors":
        deltas = principal_minor_sums(sl.generic_matrix, maxdeg)
    elif method == "berkowitz":
        deltas = charpoly_coeffs(sl.generic_matrix, maxdeg)
    else:
        raise ValueError(f"unknown coefficient method {method!r}")
    model = alg.model
    if model.kind is AlgebraKind.GL:
        return {ell: deltas[ell - 1] for ell in range(1, model.n + 1)}
    out = {i: deltas[2 * i - 1] for i in range(1, model.n // 2 + 1)}
    if model.kind is AlgebraKind.SO and model.n % 2 == 0:
        JM = [[sum((SparsePoly.const(model.Jmat[r][t]) * sl.generic_matrix[t][c]
                    for t in range(model.n) if model.Jmat[r][t]), SparsePoly())
               for c in range(model.n)] for r in range(model.n)]
        out["pf"] = pfaffian(JM, maxdeg)
    return out


def invariant_keys(model: ModelSpace) -> list:
    """Labels of the generating invariants: ``ℓ`` (A), ``i`` (B, C), plus ``"pf"`` (D)."""
    if model.kind is AlgebraKind.GL:
        return list(range(1, model.n + 1))
    r = model.n // 2
    if model.kind is AlgebraKind.SO and model.n % 2 == 0:
        return list(range(1, r)) + ["pf"]
    return list(range(1, r + 1))


@dataclass
class InvariantSet:
    kind: AlgebraKind
    method: str
    items: list = field(default_factory=list)   # (key, degree, poly)

    @property
    def polys(self) -> list[SparsePoly]:
        return [p for _, _, p in self.items]

    @property
    def degrees(self) -> list[int]:
        return [m for _, m, _ in self.items]


def restricted_invariants(alg: CentralizerAlgebra, sl: SlodowySlice | None = None,
                          truncate: bool = True, keys: Sequence | None = None,
                          method: str = "minors") -> InvariantSet:
    """Lowest-degree components of the restricted generators.

    With ``truncate`` the products drop monomials above a working degree,
    which is raised until every generator has a nonzero part; the lowest
    nonzero component below the working degree is then exact.  ``keys``
    overrides the default generator list, e.g. all ``Δ_{2i}`` in type D.
    """
    sl = sl or build_slice(alg)
    if keys is None:
        keys = invariant_keys(alg.model)
    if truncate:
        bound = 1
        if alg.kind is AlgebraKind.GL:
            bound = max(expected_degree(alg.model, ell) for ell in keys)
        while True:
            polys = _source_polys(alg, sl, bound, method)
            if all(polys[k] for k in keys) or bound >= alg.model.n:
                break
            bound += 1
    else:
        polys = _source_polys(alg, sl, None, method)
    out = InvariantSet(alg.kind, "slice")
    for key in keys:
        p = polys[key]
        if not p:
            raise AssertionError(f"restricted invariant {key} vanishes on the slice")
        comps = graded_components(p)
        m, low = comps[0]
        out.items.append((key, m, low))
    return out


def restricted_invariant(alg: CentralizerAlgebra, ell, sl: SlodowySlice | None = None) -> tuple[int, SparsePoly]:
    keys = invariant_keys(alg.model)
    if ell not in keys:
        raise IndexOutOfRange(f"no generator with key {ell}")
    inv = restricted_invariants(alg, sl)
    for key, m, p in inv.items:
        if key == ell:
            return m, p
    raise IndexOutOfRange(str(ell))


# ---------------------------------------------------------------------------
# the monomial formula (type A)


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _bounded_compositions(total: int, bounds: Sequence[tuple[int, int]]):
    """Tuples ``(x_1..x_m)`` with ``lo_i <= x_i <= hi_i`` summing to ``total``."""
    if not bounds:
        if total == 0:
            yield ()
        return
    lo, hi = bounds[0]
    rest_lo = sum(b[0] for b in bounds[1:])
    rest_hi = sum(b[1] for b in bounds[1:])
    for x in range(max(lo, total - rest_hi), min(hi, total - rest_lo) + 1):
        for tail in _bounded_compositions(total - x, bounds[1:]):
            yield (x,) + tail


def monomial_invariant(alg: CentralizerAlgebra, ell: int, m: int) -> SparsePoly:
    """``Σ sgn(σ) Ξ(I, σ, s̄)`` over ``|I| = m`` and ``Σ s̄ = ℓ - m``."""
    if alg.kind is not AlgebraKind.GL:
        raise ValueError("the monomial formula is for the general linear kind")
    model = alg.model
    d = model.d
    acc: dict = {}
    for I in itertools.combinations(range(1, model.k + 1), m):
        for perm in itertools.permutations(range(m)):
            sign = _perm_sign(perm)
            targets = [I[p] for p in perm]
            bounds = [(max(d[t - 1] - d[i - 1], 0), d[t - 1]) for i, t in zip(I, targets)]
            for sbar in _bounded_compositions(ell - m, bounds):
                mono = tuple(sorted(xi(i, t, s) for i, t, s in zip(I, targets, sbar)))
                acc[mono] = acc.get(mono, 0) + sign
    return SparsePoly(acc)


def proportionality(p: SparsePoly, q: SparsePoly) -> Fraction | None:
    """The scalar ``c`` with ``p = c q``, or None when there is none."""
    if not q:
        return None if p else Fraction(0)
    mono, qc = next(iter(q.terms.items()))
    c = Fraction(p.terms.get(mono, 0)) / Fraction(qc)
    if not c:
        return None
    return c if p == q.scale(c) else None


# ---------------------------------------------------------------------------
# the e_{i,j;r} notation


def bb_translate(model: ModelSpace, i: int, j: int, r: int) -> tuple[int, int, int]:
    """Label of ``e_{i,j;r} = ξ_j^{i,s}`` with ``s = r + d_i - d_j``."""
    if not (1 <= i <= model.k and 1 <= j <= model.k):
        raise IndexOutOfRange(f"block index out of range: {i}, {j}")
    d = model.d
    lab = (j, i, r + d[i - 1] - d[j - 1])
    if not label_valid(model, lab):
        raise IndexOutOfRange(f"e_{{{i},{j};{r}}} is outside g_e")
    return lab


def bb_symbol(alg: CentralizerAlgebra, ell: int, m: int) -> SparsePoly:
    """Top-degree symbol of the shifted sum ``Σ sgn(σ) Π ẽ_{σ(i),i;r(i)}``.

    The sum runs over ``|I| = m`` and ``Σ r = ℓ - m`` in the ``e_{i,j;r}``
    indexing, each factor is shifted by ``-δ_{s,0} δ_{i,j} (i-1)(d_i+1)``
    before multiplying, and the degree-``m`` component is returned.
    """
    model = alg.model
    d = model.d
    lam = model.partition.parts
    total = SparsePoly()
    for I in itertools.combinations(range(1, model.k + 1), m):
        for perm in itertools.permutations(range(m)):
            sign = _perm_sign(perm)
            targets = [I[p] for p in perm]
            # e_{t,i;r}: r from λ_i - min(λ_t, λ_i) to λ_i - 1
            bounds = [(lam[i - 1] - min(lam[t - 1], lam[i - 1]), lam[i - 1] - 1)
                      for i, t in zip(I, targets)]
            for rbar in _bounded_compositions(ell - m, bounds):
                term = SparsePoly.const(sign)
                for i, t, r in zip(I, targets, rbar):
                    lab = bb_translate(model, t, i, r)
                    f = SparsePoly.var(xi(*lab))
                    if lab[2] == 0 and lab[0] == lab[1]:
                        f = f - (lab[0] - 1) * (d[lab[0] - 1] + 1)
                    term = term * f
                total = total + term
    return SparsePoly._raw({mo: c for mo, c in total.terms.items() if len(mo) == m})


# ---------------------------------------------------------------------------
# ψ: restriction to an affine slice of g_e^*


def psi_point(alg: CentralizerAlgebra) -> dict:
    """Substitution: ``ξ_{i+1}^{i,d_i} -> 1``, ``ξ_1^{i,s}`` kept, all else 0."""
    model = alg.model
    d = model.d
    ones = {xi(i + 1, i, d[i - 1]) for i in range(1, model.k)}
    sub = {}
    for v in alg.vars:
        if v in ones:
            sub[v] = 1
        elif v.i != 1:
            sub[v] = 0
    return sub


def psi_restriction(alg: CentralizerAlgebra, p: SparsePoly) -> SparsePoly:
    if alg.kind is not AlgebraKind.GL:
        raise ValueError("ψ is defined for the general linear kind")
    return p.subs(psi_point(alg))


def psi_expected_label(model: ModelSpace, ell: int, m: int) -> tuple[int, int, int]:
    d = model.d
    return (1, m, ell - sum(d[:m - 1]) - m)


# ---------------------------------------------------------------------------
# invariance and independence


def all_partials(p: SparsePoly) -> dict:
    """``{v: ∂p/∂v}`` for every variable of ``p``, in one pass over the terms."""
    out: dict = {}
    for mono, c in p.terms.items():
        prev = None
        for pos, v in enumerate(mono):
            if v == prev:
                continue
            prev = v
            k = mono.count(v)
            rest = mono[:pos] + mono[pos + 1:]
            d = out.setdefault(v, {})
            d[rest] = d.get(rest, 0) + k * c
    return {v: SparsePoly(d) for v, d in out.items()}


def _bracket_from_partials(alg: CentralizerAlgebra, partials: dict, a: int) -> SparsePoly:
    acc: dict = {}
    for v, dp in partials.items():
        terms = alg.structure.get((alg.var_index[v], a))
        if not terms:
            continue
        for cidx, coef in terms:
            coef = _norm(coef)
            xc = alg.vars[cidx]
            for mono, c in dp.terms.items():
                pos = bisect.bisect(mono, xc)
                nm = mono[:pos] + (xc,) + mono[pos:]
                x = acc.get(nm, 0) + c * coef
                if x:
                    acc[nm] = x
                else:
                    del acc[nm]
    return SparsePoly(acc)


def bracket_with_basis(alg: CentralizerAlgebra, p: SparsePoly, a: int) -> SparsePoly:
    """``{p, ξ_a} = Σ_u ∂_u p · [ξ_u, ξ_a]``."""
    return _bracket_from_partials(alg, all_partials(p), a)


def invariance_defects(alg: CentralizerAlgebra, p: SparsePoly) -> list[int]:
    """Basis indices ``a`` with ``{p, ξ_a} != 0``."""
    partials = all_partials(p)
    return [a for a in range(alg.dim) if _bracket_from_partials(alg, partials, a)]


def is_invariant(alg: CentralizerAlgebra, p: SparsePoly) -> bool:
    return not invariance_defects(alg, p)


def hweight_grading(alg: CentralizerAlgebra):
    w = {v: h for v, h in zip(alg.vars, alg.hweight)}
    return w.__getitem__


@dataclass
class IndependenceReport:
    size: int
    jacobian_rank: int
    degree_sum: int
    target: int

    @property
    def independent(self) -> bool:
        return self.jacobian_rank == self.size

    @property
    def degree_sum_ok(self) -> bool:
        return self.degree_sum == self.target


def independence_check(alg: CentralizerAlgebra, polys: Sequence[SparsePoly],
                       degrees: Sequence[int] | None = None, seed: int = 0) -> IndependenceReport:
    rng = random.Random(seed)
    point = {v: Fraction(rng.randint(-COORD_RANGE, COORD_RANGE)) for v in alg.vars}
    rows = [[p.diff(v).evaluate(point) for v in alg.vars] for p in polys]
    rank = la.rank(rows, alg.dim) if rows else 0
    if degrees is None:
        degrees = [p.degree() for p in polys]
    ind = ambient_rank(alg.model)
    return IndependenceReport(len(polys), rank, sum(degrees), (alg.dim + ind) // 2)
