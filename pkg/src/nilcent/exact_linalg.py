"""Exact rational linear algebra.

Everything here works over ``fractions.Fraction``.  Elimination is
fraction-free: rows are scaled to primitive integer vectors and combined by
cross-multiplication, so intermediate entries stay integral.  Pivots are
chosen deterministically (the leading column of each row), which makes the
returned kernel bases reproducible.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence


class Inconsistent(Exception):
    """Raised by :func:`rank_and_solve` when ``M x = b`` has no solution."""

    def __init__(self, rank: int):
        super().__init__(f"system is inconsistent (rank {rank})")
        self.rank = rank


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _integer_row(entries: Iterable[tuple[int, object]]) -> dict[int, int]:
    """Scale a sparse rational row to a primitive integer row."""
    row = {c: Fraction(v) for c, v in entries if v != 0}
    if not row:
        return {}
    den = 1
    for v in row.values():
        den = lcm(den, v.denominator)
    return _primitive({c: int(v * den) for c, v in row.items()})


class RowEchelon:
    """Incrementally maintained echelon form of a row space.

    Rows are sparse ``{column: value}`` dicts.  Each stored row is a
    primitive integer vector whose leading column is its pivot; no two
    stored rows share a pivot.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def reduce(self, row) -> dict[int, int]:
        """Return the reduction of ``row`` against the stored rows."""
        if isinstance(row, dict):
            r = _integer_row(row.items())
        else:
            r = _integer_row(enumerate(row))
        rows = self.rows
        while r:
            c = min(r)
            p = rows.get(c)
            if p is None:
                return r
            a, b = p[c], r[c]
            new = {k: a * v for k, v in r.items()}
            for k, v in p.items():
                w = new.get(k, 0) - b * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            r = _primitive(new) if new else new
        return r

    def add(self, row) -> bool:
        """Insert a row; return True when it enlarged the row space."""
        r = self.reduce(row)
        if not r:
            return False
        self.rows[min(r)] = r
        return True

    def contains(self, row) -> bool:
        return not self.reduce(row)

    def kernel(self) -> list[list[Fraction]]:
        """Basis of the null space, one vector per free column.

        The vector for free column ``f`` has a 1 in position ``f`` and zeros
        in every other free position, i.e. the reduced-row-echelon basis.
        """
        free = [c for c in range(self.ncols) if c not in self.rows]
        order = sorted(self.rows, reverse=True)
        basis = []
        for f in free:
            v = {f: Fraction(1)}
            for p in order:
                row = self.rows[p]
                s = sum((row[c] * v[c] for c in row if c != p and c in v), Fraction(0))
                if s:
                    v[p] = -s / row[p]
            basis.append([v.get(c, Fraction(0)) for c in range(self.ncols)])
        return basis

    def solve(self, rhs_col: int) -> list[Fraction]:
        """Back-substitute with the column ``rhs_col`` as right-hand side."""
        x = {}
        for p in sorted(self.rows, reverse=True):
            row = self.rows[p]
            s = Fraction(row.get(rhs_col, 0))
            s -= sum((row[c] * x[c] for c in row if c != p and c in x), Fraction(0))
            if s:
                x[p] = s / row[p]
        return [x.get(c, Fraction(0)) for c in range(rhs_col)]


def _shape(M: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(M)
    cols = len(M[0]) if rows else 0
    return rows, cols


def echelon(M: Sequence[Sequence], ncols: int | None = None) -> RowEchelon:
    rows, cols = _shape(M)
    ech = RowEchelon(cols if ncols is None else ncols)
    for r in M:
        ech.add(r)
    return ech


def rank(M: Sequence[Sequence], ncols: int | None = None) -> int:
    return echelon(M, ncols).rank


def kernel_basis(M: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{v : M v = 0}``; ``ncols`` is needed when ``M`` has no rows."""
    if ncols is None:
        ncols = _shape(M)[1]
    return echelon(M, ncols).kernel()


def rank_and_solve(M: Sequence[Sequence], b: Sequence | None = None):
    """Return ``(rank, x)`` with ``M x = b``; raise :class:`Inconsistent` if none.

    With ``b`` omitted the solution slot is ``None``.
    """
    rows, cols = _shape(M)
    if b is None:
        return rank(M, cols), None
    if len(b) != rows:
        raise ValueError("right-hand side has the wrong length")
    ech = RowEchelon(cols + 1)
    for r, bi in zip(M, b):
        ech.add(list(r) + [bi])
    if cols in ech.rows:
        raise Inconsistent(ech.rank - 1)
    return ech.rank, ech.solve(cols)


def span_rank(vectors: Iterable[Sequence], ncols: int) -> int:
    return echelon(list(vectors), ncols).rank


def same_span(U: Sequence[Sequence], V: Sequence[Sequence], ncols: int) -> bool:
    eu = echelon(U, ncols)
    ev = echelon(V, ncols)
    return eu.rank == ev.rank and all(eu.contains(v) for v in V)


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = transpose(B)
    return [[sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum((a * x for a, x in zip(row, v) if a and x), Fraction(0)) for row in A]


def inverse(M: Sequence[Sequence]) -> list[list[Fraction]]:
    """Inverse of a square rational matrix; ``ValueError`` if singular."""
    n = len(M)
    ech = RowEchelon(2 * n)
    for i, row in enumerate(M):
        ech.add(list(row) + [int(i == j) for j in range(n)])
    if ech.pivots[:n] != list(range(n)) or any(p >= n for p in ech.pivots):
        raise ValueError("matrix is singular")
    cols = []
    for j in range(n):
        x = {}
        for p in range(n - 1, -1, -1):
            row = ech.rows[p]
            s = Fraction(row.get(n + j, 0))
            s -= sum((row[c] * x[c] for c in row if p < c < n and c in x), Fraction(0))
            if s:
                x[p] = s / row[p]
        cols.append([x.get(i, Fraction(0)) for i in range(n)])
    return transpose(cols)


def det(M: Sequence[Sequence]) -> Fraction:
    """Determinant by Bareiss elimination on a dense copy."""
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    den = 1
    for row in A:
        for x in row:
            den = lcm(den, x.denominator)
    scale = Fraction(den) ** n
    B = [[int(x * den) for x in row] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if B[k][k] == 0:
            for r in range(k + 1, n):
                if B[r][k]:
                    B[k], B[r] = B[r], B[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                B[i][j] = (B[i][j] * B[k][k] - B[i][k] * B[k][j]) // prev
        prev = B[k][k]
    return Fraction(sign * B[n - 1][n - 1]) / scale if n else Fraction(1)


def rref(M: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form: nonzero rows with unit pivots, and the pivot columns."""
    if ncols is None:
        ncols = _shape(M)[1]
    ech = echelon(M, ncols)
    piv = ech.pivots
    rows = {p: [Fraction(ech.rows[p].get(c, 0), ech.rows[p][p]) for c in range(ncols)] for p in piv}
    for p in reversed(piv):
        for q in piv:
            if q < p and rows[q][p]:
                f = rows[q][p]
                rows[q] = [a - f * b for a, b in zip(rows[q], rows[p])]
    return [rows[p] for p in piv], piv
