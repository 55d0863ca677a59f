"""Young diagrams, diagram tuples and the A_{r-1} coroot lattice.

Convention: a diagram is stored by its COLUMN lengths, ``columns[i-1]`` is
lambda_i, the length of the i-th column.  lambda'_j (the transpose) is the
length of the j-th row and l(Y) = lambda'_1 is the number of columns.
A box (i, j) sits in column i at height j.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .exactalg import DomainError

Q = Fraction


@dataclass(frozen=True, order=True)
class YoungDiagram:
    columns: tuple = ()

    def __post_init__(self):
        cols = tuple(int(c) for c in self.columns)
        if any(c < 1 for c in cols):
            raise DomainError(f"column lengths must be positive: {cols}")
        if any(cols[i] < cols[i + 1] for i in range(len(cols) - 1)):
            raise DomainError(f"column lengths must weakly decrease: {cols}")
        object.__setattr__(self, "columns", cols)

    @property
    def size(self) -> int:
        return sum(self.columns)

    def __len__(self) -> int:
        return len(self.columns)

    @property
    def length(self) -> int:
        """l(Y): number of columns."""
        return len(self.columns)

    def col(self, i: int) -> int:
        """lambda_i, zero outside the diagram."""
        return self.columns[i - 1] if 1 <= i <= len(self.columns) else 0

    @property
    def rows(self) -> tuple:
        """lambda'_j for j = 1 .. lambda_1."""
        return _transpose(self.columns)

    def row(self, j: int) -> int:
        r = self.rows
        return r[j - 1] if 1 <= j <= len(r) else 0

    def transpose(self) -> "YoungDiagram":
        return YoungDiagram(self.rows)

    def boxes(self) -> Iterator[tuple]:
        for i, c in enumerate(self.columns, start=1):
            for j in range(1, c + 1):
                yield i, j

    def multiplicities(self) -> dict:
        """m_i = number of columns of length i."""
        m: dict = {}
        for c in self.columns:
            m[c] = m.get(c, 0) + 1
        return m

    def __repr__(self):
        return f"Y{self.columns}" if self.columns else "Y()"


EMPTY = YoungDiagram(())


@lru_cache(maxsize=None)
def _transpose(cols: tuple) -> tuple:
    if not cols:
        return ()
    return tuple(sum(1 for c in cols if c >= j) for j in range(1, cols[0] + 1))


def arm_leg(Y: YoungDiagram, i: int, j: int) -> tuple:
    """(a, a', l, l') at box (i, j); the box may lie outside Y."""
    if i < 1 or j < 1:
        raise DomainError(f"box indices start at 1, got ({i}, {j})")
    return Y.col(i) - j, j - 1, Y.row(j) - i, i - 1


def partitions(n: int) -> list:
    """Partitions of n as weakly decreasing tuples, largest first."""
    return list(_partitions(n, n))


@lru_cache(maxsize=None)
def _partitions(n: int, cap: int) -> tuple:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def diagrams(n: int) -> list:
    return [YoungDiagram(p) for p in partitions(n)]


def compositions(n: int, r: int) -> Iterator[tuple]:
    """Weak compositions of n into r parts, first part largest first."""
    if r == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in compositions(n - first, r - 1):
            yield (first,) + rest


DiagramTuple = tuple  # of YoungDiagram; kept as a plain tuple for hashing


def enumerate_tuples(r: int, n: int) -> list:
    """All r-tuples of diagrams with total size n in a fixed order."""
    if r < 1 or n < 0:
        raise DomainError("need r >= 1 and n >= 0")
    out = []
    for sizes in compositions(n, r):
        for combo in product(*(diagrams(s) for s in sizes)):
            out.append(tuple(combo))
    return out


def tuple_size(Ys: Sequence[YoungDiagram]) -> int:
    return sum(Y.size for Y in Ys)


# ---------------------------------------------------------------------------
# coroot lattice


@dataclass(frozen=True)
class CorootVector:
    entries: tuple
    sector: int

    def __post_init__(self):
        entries = tuple(int(k) for k in self.entries)
        object.__setattr__(self, "entries", entries)
        if sum(entries) != self.sector:
            raise DomainError(f"entries {entries} do not sum to sector {self.sector}")

    @classmethod
    def of(cls, entries: Sequence[int]) -> "CorootVector":
        return cls(tuple(entries), sum(entries))

    @property
    def rank(self) -> int:
        return len(self.entries)

    @property
    def shifted(self) -> tuple:
        """k_alpha - k/r, the trace-free representative."""
        r = self.rank
        return tuple(Q(k) - Q(self.sector, r) for k in self.entries)

    def simple_coordinates(self) -> tuple:
        """k^i with k = sum k^i alpha_i^vee (partial sums of the shifted vector)."""
        s = self.shifted
        out, acc = [], Q(0)
        for x in s[:-1]:
            acc += x
            out.append(acc)
        return tuple(out)


def norm(k: CorootVector) -> Fraction:
    r = k.rank
    e = k.entries
    return Q(sum((x - y) ** 2 for x in e for y in e), 2 * r)


def rho_pairing(k: CorootVector) -> Fraction:
    e = k.entries
    r = len(e)
    return Q(sum(e[a] - e[b] for a in range(r) for b in range(a + 1, r)), 2)


def cartan(r: int) -> list:
    C = [[0] * (r - 1) for _ in range(r - 1)]
    for i in range(r - 1):
        C[i][i] = 2
        if i + 1 < r - 1:
            C[i][i + 1] = C[i + 1][i] = -1
    return C


def coroot_pairings(k: CorootVector) -> tuple:
    """((k,k), <k,rho>), cross-checked against the Cartan-matrix forms."""
    n1, p1 = norm(k), rho_pairing(k)
    c = k.simple_coordinates()
    C = cartan(k.rank)
    n2 = sum(C[i][j] * c[i] * c[j] for i in range(len(c)) for j in range(len(c)))
    p2 = sum(c, Q(0))
    if (n1, p1) != (n2, p2):
        raise AssertionError(f"pairing formulas disagree for {k}: {(n1, p1)} vs {(n2, p2)}")
    return n1, p1


def enumerate_coroots(r: int, sector: int, max_half_norm) -> list:
    """Integer vectors with sum = sector and (k,k)/2 <= max_half_norm."""
    if not 0 <= sector < r:
        raise DomainError(f"sector must satisfy 0 <= k < r, got {sector}")
    bound = Q(max_half_norm)
    if bound < 0:
        raise DomainError("bound must be nonnegative")
    # |k_alpha - k/r| <= sqrt(2 * (k,k)) suffices: (k,k) >= sum(x^2)/... use a safe box
    width = 1
    while Q(width * width, 1) <= 4 * r * bound + 4:
        width += 1
    centre = Q(sector, r)
    lo = int(centre) - width - 1
    hi = int(centre) + width + 1
    out = []
    for head in product(range(lo, hi + 1), repeat=r - 1):
        last = sector - sum(head)
        k = CorootVector(tuple(head) + (last,), sector)
        if norm(k) / 2 <= bound:
            out.append(k)
    out.sort(key=lambda k: (norm(k), tuple(-x for x in k.entries)))
    return out
