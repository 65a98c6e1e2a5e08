"""The ambient space V with its nilpotent e, invariant form and sl2-triple.

V has basis ``e^s w_i`` for blocks ``i = 1..k`` (1-based) and
``0 <= s <= d_i``.  For the orthogonal and symplectic kinds the form is

    (e^a w_i, e^b w_{i'}) = (-1)^a c_i  when a + b = d_i, and 0 otherwise,

with ``c_i = 1`` for ``i <= i'``.  Paired blocks (``i != i'``) are adjacent
and carry ``c_{i'} = -c_i``, which is what the symmetry ``(v, w) = ε (w, v)``
forces.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from . import exact_linalg as la


class InadmissiblePartition(ValueError):
    pass


class EmptyPartition(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


class AlgebraKind(Enum):
    GL = "GL"
    SO = "SO"
    SP = "SP"

    @property
    def eps(self) -> int:
        return {"SO": 1, "SP": -1}.get(self.value, 0)

    @classmethod
    def from_letter(cls, letter: str) -> "AlgebraKind":
        """Cartan letters: A -> GL, B and D -> SO, C -> SP."""
        table = {"A": cls.GL, "B": cls.SO, "C": cls.SP, "D": cls.SO}
        try:
            return table[letter.upper()]
        except KeyError:
            return cls(letter.upper())


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise EmptyPartition("partition has no parts")
        if any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        object.__setattr__(self, "parts", tuple(sorted(parts, reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip().strip("()")
        if not text:
            raise EmptyPartition("partition has no parts")
        return cls(tuple(int(t) for t in text.split(",") if t.strip()))

    @property
    def d(self) -> tuple[int, ...]:
        return tuple(p - 1 for p in self.parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"

    def __iter__(self):
        return iter(self.parts)


def is_admissible(partition: Partition, kind: AlgebraKind) -> bool:
    if kind is AlgebraKind.GL:
        return True
    # sp: odd parts come in pairs; so: even parts come in pairs
    bad_parity = 1 if kind is AlgebraKind.SP else 0
    counts: dict[int, int] = {}
    for p in partition.parts:
        counts[p] = counts.get(p, 0) + 1
    return all(c % 2 == 0 for p, c in counts.items() if p % 2 == bad_parity)


def partitions(n: int, max_part: int | None = None):
    """All partitions of ``n`` as non-increasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def admissible_partitions(n: int, kind: AlgebraKind):
    for parts in partitions(n):
        p = Partition(parts)
        if is_admissible(p, kind):
            yield p


@dataclass(frozen=True)
class ModelSpace:
    partition: Partition
    kind: AlgebraKind
    offsets: tuple[int, ...]
    Emat: tuple[tuple[int, ...], ...]
    invol: tuple[int, ...] | None = None       # invol[i-1] = i'
    signs: tuple[int, ...] | None = None       # signs[i-1] = c_i
    Jmat: tuple[tuple[int, ...], ...] | None = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.partition.n

    @property
    def k(self) -> int:
        return self.partition.k

    @property
    def d(self) -> tuple[int, ...]:
        return self.partition.d

    @property
    def eps(self) -> int:
        return self.kind.eps

    def index(self, i: int, s: int) -> int:
        """Position of ``e^s w_i`` in the basis (blocks are 1-based)."""
        if not (1 <= i <= self.k and 0 <= s <= self.d[i - 1]):
            raise IndexOutOfRange(f"no basis vector e^{s} w_{i}")
        return self.offsets[i - 1] + s

    def basis_labels(self) -> list[tuple[int, int]]:
        return [(i, s) for i in range(1, self.k + 1) for s in range(self.d[i - 1] + 1)]

    def prime(self, i: int) -> int:
        if self.invol is None:
            raise ValueError("the general linear model has no block involution")
        return self.invol[i - 1]

    def form(self, u: tuple[int, int], v: tuple[int, int]) -> int:
        """Value of the form on two basis vectors given as ``(block, power)``."""
        return self.Jmat[self.index(*u)][self.index(*v)]


def build_model(partition: Partition | Sequence[int], kind: AlgebraKind | str) -> ModelSpace:
    if not isinstance(partition, Partition):
        partition = Partition(tuple(partition))
    if not isinstance(kind, AlgebraKind):
        kind = AlgebraKind.from_letter(kind)
    if not is_admissible(partition, kind):
        raise InadmissiblePartition(f"{partition} is not admissible for {kind.value}")
    d = partition.d
    k, n = partition.k, partition.n
    offsets = []
    pos = 0
    for di in d:
        offsets.append(pos)
        pos += di + 1
    E = [[0] * n for _ in range(n)]
    for i in range(k):
        for s in range(d[i]):
            E[offsets[i] + s + 1][offsets[i] + s] = 1
    Emat = tuple(tuple(r) for r in E)
    if kind is AlgebraKind.GL:
        return ModelSpace(partition, kind, tuple(offsets), Emat)

    eps = kind.eps
    invol = list(range(1, k + 1))
    i = 0
    while i < k:
        if (-1) ** d[i] * eps == 1:
            i += 1
            continue
        # i != i': pair with the next block of equal size
        if i + 1 >= k or d[i + 1] != d[i]:
            raise InadmissiblePartition(f"{partition} is not admissible for {kind.value}")
        invol[i], invol[i + 1] = i + 2, i + 1
        i += 2
    signs = []
    for i in range(k):
        ip = invol[i] - 1
        if i <= ip:
            signs.append(1)
        else:
            signs.append(eps * (-1) ** d[i] * signs[ip])
    J = [[0] * n for _ in range(n)]
    for i in range(k):
        ip = invol[i] - 1
        for a in range(d[i] + 1):
            b = d[i] - a
            J[offsets[i] + a][offsets[ip] + b] = (-1) ** a * signs[i]
    return ModelSpace(partition, kind, tuple(offsets), Emat, tuple(invol), tuple(signs),
                      tuple(tuple(r) for r in J))


def epsilon_sign(model: ModelSpace, i: int, j: int, s: int) -> int:
    """The sign ε(i, j, s) read off the form matrix.

    Defined by ``(e^{d_j-s} w_j, e^s w_{j'}) = -ε(i,j,s) (w_i, e^{d_i} w_{i'})``
    for ``0 <= s <= min(d_i, d_j)``.
    """
    if model.kind is AlgebraKind.GL:
        raise ValueError("ε is only defined for the orthogonal and symplectic kinds")
    if not (1 <= i <= model.k and 1 <= j <= model.k):
        raise IndexOutOfRange(f"block index out of range: {i}, {j}")
    di, dj = model.d[i - 1], model.d[j - 1]
    if not 0 <= s <= min(di, dj):
        raise IndexOutOfRange(f"s={s} outside 0..{min(di, dj)}")
    lhs = model.form((j, dj - s), (model.prime(j), s))
    ref = model.form((i, 0), (model.prime(i), di))
    return -lhs * ref  # ref = ±1


@dataclass(frozen=True)
class Sl2Triple:
    Emat: list
    Hmat: list
    Fmat: list


def sl2_triple(model: ModelSpace) -> Sl2Triple:
    n = model.n
    H = [[Fraction(0)] * n for _ in range(n)]
    F = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, model.k + 1):
        di = model.d[i - 1]
        for s in range(di + 1):
            p = model.index(i, s)
            H[p][p] = Fraction(2 * s - di)
            if s > 0:
                F[model.index(i, s - 1)][p] = Fraction(s * (di - s + 1))
    E = [[Fraction(x) for x in row] for row in model.Emat]
    return Sl2Triple(E, H, F)


def bracket(X, Y):
    """Matrix commutator."""
    XY = la.matmul(X, Y)
    YX = la.matmul(Y, X)
    return [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(XY, YX)]


def preserves_form(model: ModelSpace, X) -> bool:
    """True when ``X^T J + J X = 0``."""
    J = model.Jmat
    XtJ = la.matmul(la.transpose(X), J)
    JX = la.matmul(J, X)
    return all(a + b == 0 for r1, r2 in zip(XtJ, JX) for a, b in zip(r1, r2))
