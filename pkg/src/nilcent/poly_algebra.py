"""Sparse multivariate polynomials over the rationals.

A monomial is a sorted tuple of variables with repetition, so ``x^2 y`` is
``(x, x, y)``; a polynomial maps monomials to nonzero rational coefficients.
Variables are :class:`Var` tuples ``(name, *indices)``; the coordinate dual
to the centraliser basis element with label ``(i, j, s)`` is
``Var("xi", i, j, s)``, printed ``xi[i,j,s]``.
"""
from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence


class NotAntisymmetric(ValueError):
    pass


class OddDimension(ValueError):
    pass


class Var(tuple):
    """A polynomial variable ``(name, *indices)``; ordered as a plain tuple."""

    __slots__ = ()

    def __new__(cls, name: str, *idx: int):
        return super().__new__(cls, (name, *idx))

    @property
    def name(self) -> str:
        return self[0]

    @property
    def idx(self) -> tuple:
        return tuple(self[1:])

    # centraliser labels: xi[i,j,s]
    @property
    def i(self) -> int:
        return self[1]

    @property
    def j(self) -> int:
        return self[2]

    @property
    def s(self) -> int:
        return self[3]

    def __repr__(self):
        if len(self) == 1:
            return self[0]
        return f"{self[0]}[{','.join(str(k) for k in self[1:])}]"

    __str__ = __repr__

    def __getnewargs__(self):
        return tuple(self)


def xi(i: int, j: int, s: int) -> Var:
    """Coordinate variable of the basis element with label (i, j, s)."""
    return Var("xi", i, j, s)


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _merge(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


class SparsePoly:
    """Immutable-by-convention sparse polynomial with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        self.terms: dict[tuple, object] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = _norm(c)

    @classmethod
    def _raw(cls, terms: dict) -> "SparsePoly":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def const(cls, c) -> "SparsePoly":
        c = _norm(Fraction(c)) if not isinstance(c, int) else c
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, v: Var, coeff=1) -> "SparsePoly":
        return cls._raw({(v,): coeff} if coeff else {})

    @classmethod
    def monomial(cls, vars_: Iterable[Var], coeff=1) -> "SparsePoly":
        return cls._raw({tuple(sorted(vars_)): _norm(coeff)} if coeff else {})

    # ---- basic protocol -------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            try:
                other = SparsePoly.const(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"SparsePoly({to_text(self)!r})"

    def __str__(self):
        return to_text(self)

    def copy(self) -> "SparsePoly":
        return SparsePoly._raw(dict(self.terms))

    # ---- arithmetic -----------------------------------------------------
    @staticmethod
    def _coerce(x) -> "SparsePoly":
        if isinstance(x, SparsePoly):
            return x
        if isinstance(x, Var):
            return SparsePoly.var(x)
        return SparsePoly.const(x)

    def __add__(self, other):
        other = self._coerce(other)
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        res = dict(a)
        for m, c in b.items():
            v = res.get(m, 0) + c
            if v:
                res[m] = v
            else:
                res.pop(m, None)
        return SparsePoly._raw(res)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def scale(self, c) -> "SparsePoly":
        c = _norm(c)
        if not c:
            return SparsePoly()
        return SparsePoly._raw({m: _norm(v * c) for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, (SparsePoly, Var)):
            return self.scale(other)
        return self.mul(self._coerce(other))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, c):
        return self.scale(Fraction(1) / Fraction(c))

    def mul(self, other: "SparsePoly", maxdeg: int | None = None) -> "SparsePoly":
        """Product, optionally discarding monomials of degree above ``maxdeg``."""
        res: dict = {}
        get = res.get
        if maxdeg is None:
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = _merge(m1, m2)
                    v = get(m, 0) + c1 * c2
                    if v:
                        res[m] = v
                    else:
                        del res[m]
        else:
            for m1, c1 in self.terms.items():
                d1 = len(m1)
                if d1 > maxdeg:
                    continue
                for m2, c2 in other.terms.items():
                    if d1 + len(m2) > maxdeg:
                        continue
                    m = _merge(m1, m2)
                    v = get(m, 0) + c1 * c2
                    if v:
                        res[m] = v
                    else:
                        del res[m]
        return SparsePoly._raw({m: _norm(c) for m, c in res.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = SparsePoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # ---- inspection -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant_term(self):
        return self.terms.get((), 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((len(m) for m in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((len(m) for m in self.terms), default=-1)

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            out.update(m)
        return out

    def is_homogeneous(self, grading: Callable[[Var], int] | None = None) -> bool:
        return len(graded_components(self, grading)) <= 1

    def coefficient(self, mono: Iterable[Var]):
        return self.terms.get(tuple(sorted(mono)), 0)

    def truncate(self, maxdeg: int) -> "SparsePoly":
        return SparsePoly._raw({m: c for m, c in self.terms.items() if len(m) <= maxdeg})

    # ---- calculus and substitution -------------------------------------
    def diff(self, v: Var) -> "SparsePoly":
        res = {}
        for m, c in self.terms.items():
            k = m.count(v)
            if k:
                i = m.index(v)
                nm = m[:i] + m[i + 1:]
                res[nm] = res.get(nm, 0) + k * c
        return SparsePoly(res)

    def subs(self, mapping: Mapping[Var, object]) -> "SparsePoly":
        """Substitute polynomials or numbers for variables."""
        images = {v: self._coerce(p) for v, p in mapping.items()}
        acc: dict = {}
        for m, c in self.terms.items():
            kept = []
            factor = None
            for v in m:
                if v in images:
                    factor = images[v] if factor is None else factor * images[v]
                else:
                    kept.append(v)
            if factor is None:
                km = tuple(kept)
                acc[km] = acc.get(km, 0) + c
                continue
            for fm, fc in factor.terms.items():
                km = _merge(tuple(kept), fm)
                acc[km] = acc.get(km, 0) + c * fc
        return SparsePoly(acc)

    def evaluate(self, point: Mapping[Var, object]):
        """Value at a rational point; every variable must be assigned."""
        total = Fraction(0)
        for m, c in self.terms.items():
            t = Fraction(c)
            for v in m:
                t *= point[v]
                if not t:
                    break
            total += t
        return _norm(total)

    def linear_coefficients(self) -> dict:
        """Coefficients of the degree-one part, keyed by variable."""
        return {m[0]: c for m, c in self.terms.items() if len(m) == 1}


def poly(x) -> SparsePoly:
    return SparsePoly._coerce(x)


# ---------------------------------------------------------------------------
# gradings


def graded_components(p: SparsePoly, grading: Callable[[Var], int] | None = None) -> list:
    """Split ``p`` into homogeneous pieces: a sorted list of ``(degree, piece)``.

    ``grading`` assigns an integer degree to each variable; the default is
    total degree.
    """
    parts: dict[int, dict] = {}
    for m, c in p.terms.items():
        d = len(m) if grading is None else sum(grading(v) for v in m)
        parts.setdefault(d, {})[m] = c
    return [(d, SparsePoly._raw(parts[d])) for d in sorted(parts)]


def min_degree_component(p: SparsePoly, grading=None):
    """Lowest nonzero homogeneous piece as ``(degree, piece)``; ``None`` for 0."""
    comps = graded_components(p, grading)
    return comps[0] if comps else None


# ---------------------------------------------------------------------------
# degrevlex


def degrevlex_key(order: Sequence[Var]) -> Callable[[tuple], tuple]:
    """Sort key for monomials: larger key = larger in degrevlex.

    ``order`` lists the variables from most to least significant.
    """
    pos = {v: k for k, v in enumerate(order)}
    n = len(order)

    def key(m: tuple) -> tuple:
        e = [0] * n
        for v in m:
            e[pos[v]] += 1
        return (len(m), tuple(-x for x in reversed(e)))

    return key


def sorted_terms(p: SparsePoly, order: Sequence[Var] | None = None) -> list:
    """Terms in decreasing degrevlex order over ``order`` (default: sorted vars)."""
    if order is None:
        order = sorted(p.variables())
    key = degrevlex_key(order)
    return sorted(p.terms.items(), key=lambda t: key(t[0]), reverse=True)


# ---------------------------------------------------------------------------
# text format:  coef * xi[i,j,s]^k * ...


def _fmt_coef(c) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def to_text(p: SparsePoly) -> str:
    if not p.terms:
        return "0"
    pieces = []
    for m, c in sorted_terms(p):
        neg = c < 0
        body = [_fmt_coef(-c if neg else c)]
        k = 0
        while k < len(m):
            v = m[k]
            e = 1
            while k + e < len(m) and m[k + e] == v:
                e += 1
            body.append(f"{v}^{e}" if e > 1 else str(v))
            k += e
        term = " * ".join(body)
        if not pieces:
            pieces.append(("-" if neg else "") + term)
        else:
            pieces.append(("- " if neg else "+ ") + term)
    return " ".join(pieces)


_FACTOR = re.compile(r"^([A-Za-z_]\w*)(?:\[(-?\d+(?:,-?\d+)*)\])?(?:\^(\d+))?$")
_NUMBER = re.compile(r"^(\d+)(?:/(\d+))?(?:\^(\d+))?$")


def _split_terms(s: str) -> list[str]:
    terms, depth, cur = [], 0, ""
    for ch in s:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch in "+-" and depth == 0 and cur and cur[-1] not in "*^":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    if cur:
        terms.append(cur)
    return terms


def from_text(s: str) -> SparsePoly:
    """Parse the text format written by :func:`to_text` (whitespace-insensitive)."""
    s = "".join(s.split())
    if not s:
        raise ValueError("empty polynomial text")
    acc: dict = {}
    for term in _split_terms(s):
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        if not term:
            raise ValueError("dangling sign in polynomial text")
        coef = Fraction(sign)
        mono: list[Var] = []
        for f in term.split("*"):
            num = _NUMBER.match(f)
            if num:
                c = Fraction(int(num.group(1)), int(num.group(2) or 1))
                coef *= c ** int(num.group(3) or 1)
                continue
            var = _FACTOR.match(f)
            if not var:
                raise ValueError(f"cannot parse factor {f!r}")
            idx = tuple(int(x) for x in var.group(2).split(",")) if var.group(2) else ()
            mono.extend([Var(var.group(1), *idx)] * int(var.group(3) or 1))
        m = tuple(sorted(mono))
        acc[m] = acc.get(m, 0) + coef
    return SparsePoly(acc)


# ---------------------------------------------------------------------------
# characteristic polynomial and Pfaffian


def _ring_mul(maxdeg):
    def mul(a, b):
        if isinstance(a, SparsePoly) and isinstance(b, SparsePoly):
            return a.mul(b, maxdeg)
        return a * b
    return mul


def charpoly_coeffs(M: Sequence[Sequence], maxdeg: int | None = None) -> list:
    """Coefficients ``[Δ_1, …, Δ_n]`` of the characteristic polynomial.

    ``det(t·I − M) = Σ_k (−1)^k Δ_k t^{n−k}``, so ``Δ_1`` is the trace and
    ``Δ_n`` the determinant.  Computed with Berkowitz's division-free
    recurrence; with ``maxdeg`` every product drops monomials of total degree
    above ``maxdeg``, which yields the exact low-degree part of each ``Δ_k``.
    """
    n = len(M)
    mul = _ring_mul(maxdeg)
    zero = SparsePoly()
    one = SparsePoly.const(1)
    M = [[poly(x) for x in row] for row in M]
    vect = [one]
    for r in range(n):
        # leading r x r block A, row R = M[r][:r], column C = M[:r][r]
        col = [M[i][r] for i in range(r)]
        toeplitz = [one, -M[r][r]]
        for _ in range(r):
            toeplitz.append(-_dot(M[r][:r], col, mul))
            col = [_dot(M[i][:r], col, mul) for i in range(r)]
        new = []
        for i in range(r + 2):
            acc = zero
            for j in range(max(0, i - len(toeplitz) + 1), min(i, r) + 1):
                acc = acc + mul(toeplitz[i - j], vect[j])
            new.append(acc)
        vect = new
    return [vect[k] if k % 2 == 0 else -vect[k] for k in range(1, n + 1)]


def _dot(row, col, mul):
    acc = SparsePoly()
    for a, b in zip(row, col):
        if a and b:
            acc = acc + mul(a, b)
    return acc


def pfaffian(M: Sequence[Sequence], maxdeg: int | None = None) -> SparsePoly:
    """Pfaffian of an antisymmetric matrix by expansion along the first row."""
    n = len(M)
    M = [[poly(x) for x in row] for row in M]
    for i in range(n):
        if len(M[i]) != n:
            raise ValueError("matrix is not square")
        for j in range(i, n):
            if M[i][j] + M[j][i]:
                raise NotAntisymmetric(f"entry ({i},{j}) breaks antisymmetry")
    if n % 2:
        raise OddDimension(f"dimension {n} is odd")
    mul = _ring_mul(maxdeg)
    memo: dict = {}

    def pf(idx: tuple) -> SparsePoly:
        if not idx:
            return SparsePoly.const(1)
        if idx in memo:
            return memo[idx]
        first, rest = idx[0], idx[1:]
        acc = SparsePoly()
        for t, j in enumerate(rest):
            a = M[first][j]
            if not a:
                continue
            sub = pf(rest[:t] + rest[t + 1:])
            term = mul(a, sub)
            acc = acc - term if t % 2 else acc + term
        memo[idx] = acc
        return acc

    return pf(tuple(range(n)))


def poly_matrix_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list[SparsePoly]]:
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    return [[_dot([A[i][t] for t in range(k)], [B[t][j] for t in range(k)], lambda a, b: poly(a) * poly(b))
             for j in range(m)] for i in range(n)]


def principal_minor_sums(M: Sequence[Sequence], maxdeg: int | None = None) -> list:
    """``[Δ_1, …, Δ_n]`` as sums of principal minors.

    Each minor is expanded along its first row with the sub-determinants
    memoised on ``(rows, columns)``; with ``maxdeg`` products are truncated
    as in :func:`charpoly_coeffs`.
    """
    n = len(M)
    M = [[poly(x) for x in row] for row in M]
    mul = _ring_mul(maxdeg)
    memo: dict = {}

    def minor(rows: tuple, cols: tuple) -> SparsePoly:
        if not rows:
            return SparsePoly.const(1)
        key = (rows, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        r, rest = rows[0], rows[1:]
        acc: dict = {}
        for t, c in enumerate(cols):
            a = M[r][c]
            if not a:
                continue
            sub = minor(rest, cols[:t] + cols[t + 1:])
            if not sub:
                continue
            prod = mul(a, sub)
            sign = -1 if t % 2 else 1
            for mono, v in prod.terms.items():
                x = acc.get(mono, 0) + sign * v
                if x:
                    acc[mono] = x
                else:
                    del acc[mono]
        res = SparsePoly._raw(acc)
        memo[key] = res
        return res

    out = []
    for size in range(1, n + 1):
        acc = SparsePoly()
        for S in itertools.combinations(range(n), size):
            acc = acc + minor(S, S)
        out.append(acc)
    return out
