"""A small Gröbner engine: Buchberger under degrevlex over the rationals.

Polynomials are converted to ``{exponent tuple: Fraction}`` over a fixed,
ordered variable list; the first variable is the most significant.  Inputs
are bounded by a size guard so that test suites fail fast on instances that
are beyond desk scale.
"""
from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .poly_algebra import SparsePoly, Var, from_text, to_text

MAX_VARS = 16
MAX_DEGREE_BUDGET = 40
MAX_PAIRS = 20000


class SizeGuardExceeded(RuntimeError):
    """The instance is larger than the engine is meant to handle."""


def max_vars() -> int:
    return int(os.environ.get("NILCENT_MAX_VARS", MAX_VARS))


# ---------------------------------------------------------------------------
# ideals and their text format


@dataclass
class Ideal:
    generators: list
    variables: tuple = ()

    def __post_init__(self):
        self.generators = [g for g in (SparsePoly._coerce(g) for g in self.generators) if g]
        used = set().union(*(g.variables() for g in self.generators)) if self.generators else set()
        if not self.variables:
            self.variables = tuple(sorted(used))
        else:
            self.variables = tuple(self.variables)
            missing = used - set(self.variables)
            if missing:
                raise ValueError(f"generators use undeclared variables: {sorted(missing)}")

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def with_generators(self, extra: Iterable[SparsePoly]) -> "Ideal":
        return Ideal(self.generators + list(extra), self.variables)


def ideal_to_text(ideal: Ideal) -> str:
    return "".join(to_text(g) + "\n" for g in ideal.generators)


def ideal_from_text(text: str, variables: Sequence[Var] = ()) -> Ideal:
    gens = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            gens.append(from_text(line))
    return Ideal(gens, tuple(variables))


def read_ideal(path) -> Ideal:
    with open(path) as fh:
        return ideal_from_text(fh.read())


def write_ideal(ideal: Ideal, path) -> None:
    with open(path, "w") as fh:
        fh.write(ideal_to_text(ideal))


# ---------------------------------------------------------------------------
# exponent-vector arithmetic


def _key(e: tuple) -> tuple:
    """Degrevlex sort key: larger key means larger monomial."""
    return (sum(e), tuple(-x for x in reversed(e)))


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _disjoint(a: tuple, b: tuple) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def _sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


class _Poly:
    """Internal polynomial: terms dict plus cached leading monomial."""

    __slots__ = ("terms", "lm")

    def __init__(self, terms: dict):
        self.terms = terms
        self.lm = max(terms, key=_key) if terms else None

    @property
    def lc(self):
        return self.terms[self.lm]

    def monic(self) -> "_Poly":
        c = self.lc
        if c == 1:
            return self
        return _Poly({m: v / c for m, v in self.terms.items()})


def _to_internal(p: SparsePoly, pos: dict, n: int) -> dict:
    out = {}
    for mono, c in p.terms.items():
        e = [0] * n
        for v in mono:
            e[pos[v]] += 1
        out[tuple(e)] = Fraction(c)
    return out


def _to_sparse(terms: dict, variables: Sequence[Var]) -> SparsePoly:
    acc = {}
    for e, c in terms.items():
        mono = []
        for v, k in zip(variables, e):
            mono.extend([v] * k)
        acc[tuple(sorted(mono))] = c
    return SparsePoly(acc)


def _reduce(terms: dict, basis: list, full: bool = True) -> dict:
    """Remainder of ``terms`` on division by ``basis`` (monic ``_Poly`` list)."""
    p = dict(terms)
    rem: dict = {}
    heap = [(_neg_key(m), m) for m in p]
    heapq.heapify(heap)
    while heap:
        _, m = heapq.heappop(heap)
        c = p.get(m)
        if not c:
            continue
        for g in basis:
            if _divides(g.lm, m):
                q = _sub(m, g.lm)
                del p[m]
                for gm, gc in g.terms.items():
                    if gm == g.lm:
                        continue
                    t = _add(gm, q)
                    old = p.get(t)
                    new = (old or 0) - c * gc
                    if new:
                        if old is None:
                            heapq.heappush(heap, (_neg_key(t), t))
                        p[t] = new
                    elif old is not None:
                        del p[t]
                break
        else:
            rem[m] = c
            del p[m]
            if not full:
                rem.update(p)
                return rem
    return rem


def _neg_key(e: tuple) -> tuple:
    return (-sum(e), tuple(reversed(e)))


def _spoly(f: _Poly, g: _Poly) -> dict:
    L = _lcm(f.lm, g.lm)
    a, b = _sub(L, f.lm), _sub(L, g.lm)
    out: dict = {}
    for m, c in f.terms.items():
        t = _add(m, a)
        out[t] = out.get(t, 0) + c / f.lc
    for m, c in g.terms.items():
        t = _add(m, b)
        v = out.get(t, 0) - c / g.lc
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


# ---------------------------------------------------------------------------
# Buchberger


@dataclass
class GroebnerBasis:
    polys: list
    ideal: Ideal
    variables: tuple
    _internal: list = field(default_factory=list, repr=False)

    @property
    def is_unit(self) -> bool:
        return any(not any(p.lm) for p in self._internal)

    def leading_monomials(self) -> list[tuple]:
        return [p.lm for p in self._internal]

    def __len__(self):
        return len(self.polys)


def check_guard(ideal: Ideal, extra_vars: int = 0) -> None:
    nv = len(ideal.variables) + extra_vars
    if nv > max_vars():
        raise SizeGuardExceeded(f"{nv} variables exceed the guard of {max_vars()}")
    budget = sum(g.degree() for g in ideal.generators)
    if budget > MAX_DEGREE_BUDGET:
        raise SizeGuardExceeded(f"generator degree total {budget} exceeds {MAX_DEGREE_BUDGET}")


def _update(polys: list, G: list, B: list, h: int):
    """Gebauer–Möller installation of ``polys[h]`` into basis ``G`` and pair list ``B``."""
    lh = polys[h].lm
    C = [g for g in G]
    D: list = []
    while C:
        g1 = C.pop(0)
        l1 = _lcm(lh, polys[g1].lm)
        if _disjoint(lh, polys[g1].lm) or not any(
            _divides(_lcm(lh, polys[g2].lm), l1) for g2 in C + D
        ):
            D.append(g1)
    E = [(g, h) for g in D if not _disjoint(lh, polys[g].lm)]
    B_new = []
    for g1, g2 in B:
        L = _lcm(polys[g1].lm, polys[g2].lm)
        if (_divides(lh, L) and _lcm(polys[g1].lm, lh) != L
                and _lcm(lh, polys[g2].lm) != L):
            continue
        B_new.append((g1, g2))
    B_new.extend(E)
    G_new = [g for g in G if not _divides(lh, polys[g].lm)] + [h]
    return G_new, B_new


def _interreduce(basis: list) -> list:
    basis = sorted(basis, key=lambda p: _key(p.lm))
    minimal = []
    for i, p in enumerate(basis):
        if not any(_divides(q.lm, p.lm) for q in minimal):
            minimal.append(p)
    out = []
    for i, p in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        out.append(_Poly(_reduce(p.terms, others)).monic())
    return sorted(out, key=lambda p: _key(p.lm), reverse=True)


def groebner(ideal: Ideal, max_pairs: int = MAX_PAIRS, guard: bool = True) -> GroebnerBasis:
    """Reduced Gröbner basis of ``ideal`` under degrevlex."""
    if guard:
        check_guard(ideal)
    variables = ideal.variables
    pos = {v: k for k, v in enumerate(variables)}
    n = len(variables)
    polys: list[_Poly] = []
    G: list[int] = []
    B: list = []
    for g in ideal.generators:
        r = _reduce(_to_internal(g, pos, n), [polys[i] for i in G])
        if r:
            polys.append(_Poly(r).monic())
            G, B = _update(polys, G, B, len(polys) - 1)
    processed = 0
    while B:
        best = min(range(len(B)), key=lambda k: _key(_lcm(polys[B[k][0]].lm, polys[B[k][1]].lm)))
        i, j = B.pop(best)
        processed += 1
        if processed > max_pairs:
            raise SizeGuardExceeded(f"more than {max_pairs} S-pairs")
        r = _reduce(_spoly(polys[i], polys[j]), [polys[k] for k in G])
        if r:
            polys.append(_Poly(r).monic())
            G, B = _update(polys, G, B, len(polys) - 1)
            if not any(polys[-1].lm):
                G, B = [len(polys) - 1], []
    basis = _interreduce([polys[k] for k in G])
    return GroebnerBasis([_to_sparse(p.terms, variables) for p in basis], ideal, variables, basis)


def normal_form(p: SparsePoly, gb: GroebnerBasis) -> SparsePoly:
    pos = {v: k for k, v in enumerate(gb.variables)}
    missing = p.variables() - set(pos)
    if missing:
        raise ValueError(f"polynomial uses variables outside the ring: {sorted(missing)}")
    r = _reduce(_to_internal(p, pos, len(pos)), gb._internal)
    return _to_sparse(r, gb.variables)


def contains(gb: GroebnerBasis, p: SparsePoly) -> bool:
    return not normal_form(p, gb)


def is_groebner(gb: GroebnerBasis) -> bool:
    """Every S-polynomial of the basis reduces to zero."""
    B = gb._internal
    return all(
        not _reduce(_spoly(B[i], B[j]), B)
        for i in range(len(B)) for j in range(i + 1, len(B))
    )


def _min_hitting_set(supports: list[frozenset], bound: int) -> int:
    """Size of a smallest variable set meeting every support (``bound`` caps the search)."""
    best = [bound]

    def search(chosen: frozenset, size: int):
        if size >= best[0]:
            return
        for s in supports:
            if not (s & chosen):
                for v in sorted(s):
                    search(chosen | {v}, size + 1)
                return
        best[0] = size

    search(frozenset(), 0)
    return best[0]


def ideal_dimension(gb: GroebnerBasis) -> int:
    """Krull dimension of the quotient ring; ``-1`` for the unit ideal."""
    if gb.is_unit:
        return -1
    n = len(gb.variables)
    supports = [frozenset(k for k, x in enumerate(lm) if x) for lm in gb.leading_monomials()]
    return n - _min_hitting_set(supports, n)


def radical_membership(p: SparsePoly, gb: GroebnerBasis) -> bool:
    """Whether ``p`` vanishes on the zero set, via an auxiliary inverse variable."""
    if not p:
        return True
    t = Var("_aux")
    ring = tuple(gb.variables) + (t,)
    gens = list(gb.polys) + [SparsePoly.const(1) - SparsePoly.var(t) * p]
    aux = Ideal(gens, ring)
    check_guard(Ideal(gb.ideal.generators, ring))
    return groebner(aux, guard=False).is_unit


def saturate(ideal: Ideal, w: Var) -> GroebnerBasis:
    """Reduced basis of ``I : w^∞`` for a homogeneous ideal.

    With ``w`` last in degrevlex, dividing each basis element by its largest
    power of ``w`` gives a basis of the saturation.
    """
    if not all(g.is_homogeneous() for g in ideal.generators):
        raise ValueError("saturation by this method needs a homogeneous ideal")
    ring = tuple(v for v in ideal.variables if v != w) + (w,)
    gb = groebner(Ideal(ideal.generators, ring))
    k = len(ring) - 1
    divided = []
    for p in gb._internal:
        low = min(e[k] for e in p.terms)
        divided.append({e[:k] + (e[k] - low,): c for e, c in p.terms.items()})
    out = groebner(Ideal([_to_sparse(t, ring) for t in divided], ring))
    return groebner(Ideal(out.polys, ideal.variables))
