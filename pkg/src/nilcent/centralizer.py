"""Basis, structure constants, weights and Lie–Poisson bracket of g_e.

Elements of gl(V) are handled as sparse matrices ``{(row, col): value}``.
The basis element with label ``(i, j, s)`` sends ``w_i`` to ``e^s w_j`` and
kills the other ``w_t``.  For the orthogonal and symplectic kinds a basis
element is ``ξ_L + ε ξ_P`` where ``P`` is the partner label of ``L``; it is
named after the smaller of the two labels.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import exact_linalg as la
from .model_space import AlgebraKind, ModelSpace, epsilon_sign, sl2_triple
from .poly_algebra import SparsePoly, Var, xi


class WrongKind(ValueError):
    pass


Label = tuple  # (i, j, s)


# ---------------------------------------------------------------------------
# sparse matrices


def sp_mul(A: Mapping, B: Mapping) -> dict:
    rows_b: dict[int, list] = {}
    for (r, c), v in B.items():
        rows_b.setdefault(r, []).append((c, v))
    out: dict = {}
    for (r, c), v in A.items():
        for c2, w in rows_b.get(c, ()):
            key = (r, c2)
            x = out.get(key, 0) + v * w
            if x:
                out[key] = x
            else:
                out.pop(key, None)
    return out


def sp_add(A: Mapping, B: Mapping, b: object = 1) -> dict:
    out = dict(A)
    for key, v in B.items():
        x = out.get(key, 0) + b * v
        if x:
            out[key] = x
        else:
            out.pop(key, None)
    return out


def sp_bracket(A: Mapping, B: Mapping) -> dict:
    return sp_add(sp_mul(A, B), sp_mul(B, A), -1)


def sp_scale(A: Mapping, c) -> dict:
    return {k: v * c for k, v in A.items()} if c else {}


def sp_dense(A: Mapping, n: int) -> list[list]:
    M = [[Fraction(0)] * n for _ in range(n)]
    for (r, c), v in A.items():
        M[r][c] = Fraction(v)
    return M


def sp_from_dense(M: Sequence[Sequence]) -> dict:
    return {(r, c): v for r, row in enumerate(M) for c, v in enumerate(row) if v}


def sp_combination(mats: Sequence[Mapping], coeffs: Sequence) -> dict:
    out: dict = {}
    for M, c in zip(mats, coeffs):
        if c:
            out = sp_add(out, M, c)
    return out


# ---------------------------------------------------------------------------
# labels and their matrices


def gl_labels(model: ModelSpace) -> list[Label]:
    d = model.d
    out = []
    for i in range(1, model.k + 1):
        for j in range(1, model.k + 1):
            lo = max(d[j - 1] - d[i - 1], 0)
            for s in range(lo, d[j - 1] + 1):
                out.append((i, j, s))
    return out


def label_valid(model: ModelSpace, label: Label) -> bool:
    i, j, s = label
    if not (1 <= i <= model.k and 1 <= j <= model.k):
        return False
    d = model.d
    return max(d[j - 1] - d[i - 1], 0) <= s <= d[j - 1]


def label_matrix(model: ModelSpace, label: Label) -> dict:
    i, j, s = label
    dj = model.d[j - 1]
    out = {}
    for t in range(model.d[i - 1] + 1):
        if t + s <= dj:
            out[(model.index(j, t + s), model.index(i, t))] = 1
    return out


def gl_coordinates(model: ModelSpace, X: Mapping) -> dict:
    """Coordinates ``c_i^{j,s}(X)``: the coefficient of ``e^s w_j`` in ``X w_i``."""
    out = {}
    cols = {model.index(i, 0): i for i in range(1, model.k + 1)}
    for (r, c), v in X.items():
        if c in cols and v:
            j, s = _block_of(model, r)
            out[(cols[c], j, s)] = v
    return out


def _block_of(model: ModelSpace, pos: int) -> tuple[int, int]:
    for i in range(model.k, 0, -1):
        if pos >= model.offsets[i - 1]:
            return i, pos - model.offsets[i - 1]
    raise ValueError(pos)


def partner(model: ModelSpace, label: Label) -> tuple[Label, int]:
    """Partner label and sign: ``ξ_i^{j,d_j-s} + ε(i,j,s) ξ_{j'}^{i',d_i-s}``."""
    i, j, t = label
    s = model.d[j - 1] - t
    ip, jp = model.prime(i), model.prime(j)
    return (jp, ip, model.d[i - 1] - s), epsilon_sign(model, i, j, s)


# ---------------------------------------------------------------------------
# the algebra


@dataclass(frozen=True)
class GeneratorSpec:
    labels: tuple            # one label, or (canonical, partner)
    sign: int                # relative sign of the partner term (1 if single)
    matrix: dict = field(compare=False)

    @property
    def label(self) -> Label:
        return self.labels[0]

    @property
    def var(self) -> Var:
        return xi(*self.labels[0])

    def terms(self) -> list[tuple[Label, int]]:
        if len(self.labels) == 1:
            return [(self.labels[0], 1)]
        return [(self.labels[0], 1), (self.labels[1], self.sign)]

    def __str__(self):
        a = "xi[%d,%d,%d]" % self.labels[0]
        if len(self.labels) == 1:
            return a
        b = "xi[%d,%d,%d]" % self.labels[1]
        return f"{a} {'+' if self.sign > 0 else '-'} {b}"


@dataclass
class CentralizerAlgebra:
    model: ModelSpace
    basis: list[GeneratorSpec]
    structure: dict = field(default_factory=dict)   # (a, b) -> [(c, coef)]
    hweight: list[int] = field(default_factory=list)
    rhoweight: list[int] = field(default_factory=list)

    def __post_init__(self):
        self.index_of = {g.label: a for a, g in enumerate(self.basis)}
        self.vars = [g.var for g in self.basis]
        self.var_index = {v: a for a, v in enumerate(self.vars)}
        self._derivs: dict = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def kind(self) -> AlgebraKind:
        return self.model.kind

    @property
    def labels(self) -> list[Label]:
        return [g.label for g in self.basis]

    def rank_of_ambient(self) -> int:
        """Rank of gl_n, sp_n or so_n (gl-flavoured: n for type A)."""
        n = self.model.n
        return n if self.kind is AlgebraKind.GL else n // 2

    def coordinates(self, X: Mapping) -> list:
        """Coordinates of a matrix in g_e with respect to the basis."""
        c = gl_coordinates(self.model, X)
        return [Fraction(c.get(g.label, 0)) for g in self.basis]

    def element(self, coeffs: Sequence) -> dict:
        return sp_combination([g.matrix for g in self.basis], coeffs)

    def bracket_vec(self, u: Sequence, v: Sequence) -> list:
        out = [Fraction(0)] * self.dim
        for a, x in enumerate(u):
            if not x:
                continue
            for b, y in enumerate(v):
                if not y:
                    continue
                for c, coef in self.structure.get((a, b), ()):
                    out[c] += x * y * coef
        return out

    def ad_matrix(self, u: Sequence) -> list[list]:
        """Matrix of ``ad u`` in the basis (columns are images of basis vectors)."""
        cols = []
        for b in range(self.dim):
            e_b = [0] * self.dim
            e_b[b] = 1
            cols.append(self.bracket_vec(u, e_b))
        return la.transpose(cols)

    def skew_form(self, alpha: Mapping[Var, object] | Sequence) -> list[list]:
        """The matrix ``B_α[a][b] = α([ξ_a, ξ_b])``."""
        if isinstance(alpha, Mapping):
            vals = [Fraction(alpha.get(v, 0)) for v in self.vars]
        else:
            vals = [Fraction(x) for x in alpha]
        B = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for (a, b), terms in self.structure.items():
            s = sum((coef * vals[c] for c, coef in terms if vals[c]), Fraction(0))
            if s:
                B[a][b] = s
        return B

    def to_json(self) -> str:
        return dump_structure_json(self)


def _finish(model: ModelSpace, basis: list[GeneratorSpec]) -> CentralizerAlgebra:
    alg = CentralizerAlgebra(model, basis)
    alg.structure = structure_constants(alg)
    alg.hweight, alg.rhoweight = weight_tables(alg)
    return alg


def gl_basis(model: ModelSpace) -> CentralizerAlgebra:
    if model.kind is not AlgebraKind.GL:
        raise WrongKind("gl_basis needs the general linear kind")
    basis = [GeneratorSpec((lab,), 1, label_matrix(model, lab)) for lab in gl_labels(model)]
    return _finish(model, basis)


def fixed_point_basis(model: ModelSpace) -> CentralizerAlgebra:
    if model.kind is AlgebraKind.GL:
        raise WrongKind("fixed_point_basis needs the orthogonal or symplectic kind")
    seen = set()
    basis = []
    for lab in gl_labels(model):
        if lab in seen:
            continue
        p, sign = partner(model, lab)
        seen.update((lab, p))
        if p == lab:
            if sign == -1:
                continue
            basis.append(GeneratorSpec((lab,), 1, label_matrix(model, lab)))
            continue
        back, back_sign = partner(model, p)
        if back != lab or back_sign != sign:
            raise AssertionError(f"partner of {p} is {back} with sign {back_sign}")
        M = sp_add(label_matrix(model, lab), label_matrix(model, p), sign)
        basis.append(GeneratorSpec((lab, p), sign, M))
    return _finish(model, basis)


def build_algebra(model: ModelSpace) -> CentralizerAlgebra:
    if model.kind is AlgebraKind.GL:
        return gl_basis(model)
    return fixed_point_basis(model)


# ---------------------------------------------------------------------------
# structure constants: matrix commutators, the commutator formula, an oracle


def structure_constants(alg: CentralizerAlgebra) -> dict:
    """Structure table from matrix commutators of the basis realisations."""
    table = {}
    mats = [g.matrix for g in alg.basis]
    for a in range(alg.dim):
        for b in range(a + 1, alg.dim):
            coords = alg.coordinates(sp_bracket(mats[a], mats[b]))
            terms = [(c, x) for c, x in enumerate(coords) if x]
            if terms:
                table[(a, b)] = terms
                table[(b, a)] = [(c, -x) for c, x in terms]
    return table


def formula_bracket(model: ModelSpace, label: Label, coords: Mapping[Label, object]) -> dict:
    """``[ξ_i^{j,s}, ξ]`` in gl-coordinates via the explicit commutator formula.

    ``[ξ_i^{j,s}, ξ] = Σ c_t^{i,l}(ξ) ξ_t^{j,l+s} − Σ c_j^{t,l}(ξ) ξ_i^{t,l+s}``,
    where terms whose label falls outside the legal range vanish.
    """
    i, j, s = label
    out: dict = {}
    for (t, u, l), c in coords.items():
        if not c:
            continue
        if u == i:
            lab = (t, j, l + s)
            if label_valid(model, lab):
                out[lab] = out.get(lab, 0) + c
        if t == j:
            lab = (i, u, l + s)
            if label_valid(model, lab):
                out[lab] = out.get(lab, 0) - c
    return {k: v for k, v in out.items() if v}


def structure_from_formula(alg: CentralizerAlgebra) -> dict:
    """Structure table assembled from :func:`formula_bracket`."""
    model = alg.model
    gl_coords = [dict(g.terms()) for g in alg.basis]
    table = {}
    for a in range(alg.dim):
        for b in range(alg.dim):
            if a == b:
                continue
            res: dict = {}
            for lab, coef in alg.basis[a].terms():
                for k, v in formula_bracket(model, lab, gl_coords[b]).items():
                    res[k] = res.get(k, 0) + coef * v
            terms = []
            for c, g in enumerate(alg.basis):
                x = res.get(g.label, 0)
                if x:
                    terms.append((c, Fraction(x)))
            # the result must lie in the span: rebuild it and compare
            back: dict = {}
            for c, x in terms:
                for lab, coef in alg.basis[c].terms():
                    back[lab] = back.get(lab, 0) + coef * x
            if {k: v for k, v in back.items() if v} != {k: v for k, v in res.items() if v}:
                raise AssertionError(f"bracket of {a},{b} leaves the algebra")
            if terms:
                table[(a, b)] = terms
    return table


class SpanExpander:
    """Express matrices in a fixed basis by solving one square system once."""

    def __init__(self, mats: Sequence[Mapping], n: int):
        self.n = n
        positions = sorted({p for M in mats for p in M})
        self.positions = positions
        rows = [[Fraction(M.get(p, 0)) for M in mats] for p in positions]
        ech = la.RowEchelon(len(mats))
        chosen = []
        for p, row in zip(positions, rows):
            if ech.add(row):
                chosen.append(p)
        if ech.rank != len(mats):
            raise ValueError("matrices are linearly dependent")
        self.chosen = chosen
        self.inv = la.inverse([[Fraction(M.get(p, 0)) for M in mats] for p in chosen])
        self.mats = mats

    def expand(self, X: Mapping) -> list:
        rhs = [Fraction(X.get(p, 0)) for p in self.chosen]
        coeffs = la.matvec(self.inv, rhs)
        back = sp_combination(self.mats, coeffs)
        if {k: v for k, v in back.items() if v} != {k: v for k, v in X.items() if v}:
            raise ValueError("matrix is not in the span")
        return coeffs


def structure_from_oracle(alg: CentralizerAlgebra) -> dict:
    """Structure table by expanding commutators with exact linear algebra."""
    mats = [g.matrix for g in alg.basis]
    ex = SpanExpander(mats, alg.model.n)
    table = {}
    for a in range(alg.dim):
        for b in range(alg.dim):
            if a == b:
                continue
            coeffs = ex.expand(sp_bracket(mats[a], mats[b]))
            terms = [(c, x) for c, x in enumerate(coeffs) if x]
            if terms:
                table[(a, b)] = terms
    return table


def normalise_table(table: Mapping) -> dict:
    return {k: sorted((c, Fraction(x)) for c, x in v if x) for k, v in table.items() if any(x for _, x in v)}


def centraliser_dimension_by_kernel(model: ModelSpace) -> int:
    """dim of {X : [e, X] = 0} (inside the form-preserving matrices for so/sp)."""
    n = model.n
    E = model.Emat
    rows = []

    def var(r, c):
        return r * n + c

    for r in range(n):
        for c in range(n):
            row = {}
            # (EX - XE)[r][c]
            for t in range(n):
                if E[r][t]:
                    row[var(t, c)] = row.get(var(t, c), 0) + E[r][t]
                if E[t][c]:
                    row[var(r, t)] = row.get(var(r, t), 0) - E[t][c]
            row = {k: v for k, v in row.items() if v}
            if row:
                rows.append(row)
    if model.Jmat is not None:
        J = model.Jmat
        for r in range(n):
            for c in range(n):
                row = {}
                # (X^T J + J X)[r][c] = sum_t X[t][r] J[t][c] + J[r][t] X[t][c]
                for t in range(n):
                    if J[t][c]:
                        row[var(t, r)] = row.get(var(t, r), 0) + J[t][c]
                    if J[r][t]:
                        row[var(t, c)] = row.get(var(t, c), 0) + J[r][t]
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    ech = la.RowEchelon(n * n)
    for row in rows:
        ech.add(row)
    return n * n - ech.rank


# ---------------------------------------------------------------------------
# weights


def weight_tables(alg: CentralizerAlgebra) -> tuple[list[int], list[int]]:
    """h-weights of basis elements and ρ-weights of the dual coordinates.

    The h-weight of the label ``(i, j, s)`` is ``2s + d_i − d_j``, its ad(h)
    eigenvalue for ``h = diag(2s − d_i)``; the ρ-weight is ``i − j + 1``.
    """
    d = alg.model.d
    h = [2 * s + d[i - 1] - d[j - 1] for (i, j, s) in alg.labels]
    rho = [i - j + 1 for (i, j, s) in alg.labels]
    return h, rho


def hweight_by_eigenvalue(alg: CentralizerAlgebra, a: int) -> Fraction:
    """ad(H) eigenvalue of basis element ``a`` computed from matrices."""
    H = sp_from_dense(sl2_triple(alg.model).Hmat)
    X = alg.basis[a].matrix
    HX = sp_bracket(H, X)
    key = next(iter(X))
    lam = Fraction(HX.get(key, 0)) / X[key]
    if sp_add(HX, X, -lam):
        raise ValueError("basis element is not an ad(H) eigenvector")
    return lam


# ---------------------------------------------------------------------------
# Lie–Poisson bracket


def poisson_bracket(alg: CentralizerAlgebra, p: SparsePoly, q: SparsePoly) -> SparsePoly:
    """Biderivation extension of ``{ξ_a, ξ_b} = [ξ_a, ξ_b]``."""
    p = SparsePoly._coerce(p)
    q = SparsePoly._coerce(q)
    vp = [v for v in p.variables() if v in alg.var_index]
    vq = [v for v in q.variables() if v in alg.var_index]
    dq = {v: q.diff(v) for v in vq}
    acc: dict = {}
    for u in vp:
        a = alg.var_index[u]
        dpu = p.diff(u)
        for w in vq:
            b = alg.var_index[w]
            terms = alg.structure.get((a, b))
            if not terms:
                continue
            lin = SparsePoly._raw({(alg.vars[c],): coef for c, coef in terms})
            prod = dpu * dq[w] * lin
            for m, c in prod.terms.items():
                acc[m] = acc.get(m, 0) + c
    return SparsePoly(acc)


def linear_form(alg: CentralizerAlgebra, coeffs: Sequence) -> SparsePoly:
    """The element ``Σ c_a ξ_a`` as a degree-one polynomial."""
    return SparsePoly({(v,): c for v, c in zip(alg.vars, coeffs) if c})


# ---------------------------------------------------------------------------
# JSON


def dump_structure_json(alg: CentralizerAlgebra) -> str:
    basis = []
    for g in alg.basis:
        basis.append({
            "labels": [list(lab) for lab in g.labels],
            "sign": g.sign,
            "name": str(g),
        })
    table = []
    for (a, b) in sorted(alg.structure):
        if a < b:
            table.append({
                "a": a,
                "b": b,
                "terms": [[c, _frac(x)] for c, x in alg.structure[(a, b)]],
            })
    doc = {
        "kind": alg.kind.value,
        "partition": list(alg.model.partition.parts),
        "basis": basis,
        "hweight": alg.hweight,
        "rhoweight": alg.rhoweight,
        "structure": table,
    }
    return json.dumps(doc, indent=2)


def load_structure_json(text: str) -> dict:
    """Parse a structure dump back into ``{(a, b): [(c, Fraction)]}`` (both orders)."""
    doc = json.loads(text)
    table = {}
    for entry in doc["structure"]:
        terms = [(c, Fraction(x)) for c, x in entry["terms"]]
        table[(entry["a"], entry["b"])] = terms
        table[(entry["b"], entry["a"])] = [(c, -x) for c, x in terms]
    return table


def _frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
