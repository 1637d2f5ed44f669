"""Exact rank and nullspace over GF(P) or the rationals, and seeded field sampling."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

logger = logging.getLogger(__name__)

DEFAULT_PRIME = 2**61 - 1
DEFAULT_TRIALS = 3


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix over GF(modulus), or over Q when ``modulus`` is None."""

    rows: tuple
    ncols: int
    modulus: Optional[int] = None

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        for r in rows:
            if len(r) != self.ncols:
                raise ValueError(f"row of length {len(r)} in a matrix with {self.ncols} columns")
        if self.modulus is not None:
            rows = tuple(tuple(x % self.modulus for x in r) for r in rows)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], modulus: Optional[int] = None, ncols: Optional[int] = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        return cls(tuple(rows), ncols, modulus)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    def select_rows(self, indices) -> "ExactMatrix":
        return ExactMatrix(tuple(self.rows[i] for i in indices), self.ncols, self.modulus)

    def select_cols(self, indices) -> "ExactMatrix":
        idx = list(indices)
        return ExactMatrix(tuple(tuple(r[j] for j in idx) for r in self.rows), len(idx), self.modulus)

    def transpose(self) -> "ExactMatrix":
        cols = tuple(zip(*self.rows)) if self.rows else tuple(() for _ in range(self.ncols))
        return ExactMatrix(cols, self.nrows, self.modulus)

    def apply(self, x: Sequence) -> list:
        """Exact product m·x."""
        if len(x) != self.ncols:
            raise ValueError("dimension mismatch")
        out = [sum(a * b for a, b in zip(r, x)) for r in self.rows]
        if self.modulus is not None:
            out = [y % self.modulus for y in out]
        return out


def _rref(m: ExactMatrix):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    p = m.modulus
    if p is None:
        rows = [[Fraction(x) for x in r] for r in m.rows]
    else:
        rows = [list(r) for r in m.rows]
    pivots = []
    r = 0
    for c in range(m.ncols):
        if r == len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        if p is None:
            inv = 1 / rows[r][c]
            prow = [x * inv for x in rows[r]]
        else:
            inv = pow(rows[r][c], -1, p)
            prow = [x * inv % p for x in rows[r]]
        rows[r] = prow
        for i in range(len(rows)):
            f = rows[i][c]
            if i == r or not f:
                continue
            if p is None:
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
            else:
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def _rank_mod(rows: list, ncols: int, p: int) -> int:
    # forward elimination only; rows are consumed
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = pow(prow[c], -1, p)
        for i in range(rank + 1, len(rows)):
            f = rows[i][c]
            if f:
                f = f * inv % p
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def rank(m: ExactMatrix) -> int:
    """Exact rank by Gaussian elimination in the matrix's field."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    if m.modulus is not None:
        rows = [list(r) for r in m.rows]
        if m.ncols > m.nrows:
            rows = [list(c) for c in zip(*rows)]
            return _rank_mod(rows, m.nrows, m.modulus)
        return _rank_mod(rows, m.ncols, m.modulus)
    return len(_rref(m)[1])


def nullspace_basis(m: ExactMatrix) -> list:
    """Basis of {x : m·x = 0}, one vector per free column."""
    if m.nrows == 0:
        rows, pivots = [], []
    else:
        rows, pivots = _rref(m)
    one = 1 if m.modulus is not None else Fraction(1)
    zero = 0 if m.modulus is not None else Fraction(0)
    pivset = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivset:
            continue
        x = [zero] * m.ncols
        x[free] = one
        for r, c in enumerate(pivots):
            v = -rows[r][free]
            x[c] = v % m.modulus if m.modulus is not None else v
        basis.append(x)
    return basis


class RandomSource:
    """Seeded, platform-stable stream of field elements and integers."""

    def __init__(self, seed: int = 0):
        self.seed = int(seed)
        self._rng = random.Random(self.seed)

    def field_elements(self, count: int, modulus: int = DEFAULT_PRIME) -> list:
        return [self._rng.randrange(modulus) for _ in range(count)]

    def integers(self, count: int, low: int, high: int) -> list:
        return [self._rng.randint(low, high) for _ in range(count)]

    def randint(self, low: int, high: int) -> int:
        return self._rng.randint(low, high)

    def random(self) -> float:
        return self._rng.random()

    def choice(self, seq):
        return self._rng.choice(seq)

    def sample(self, seq, k: int) -> list:
        return self._rng.sample(list(seq), k)

    def shuffle(self, seq) -> None:
        self._rng.shuffle(seq)

    def spawn(self) -> "RandomSource":
        """Independent child stream derived deterministically from this one."""
        return RandomSource(self._rng.getrandbits(64))


def random_assignment(rs: RandomSource, count: int, modulus: int = DEFAULT_PRIME) -> list:
    if count < 0:
        raise ValueError("count must be nonnegative")
    return rs.field_elements(count, modulus)


def failure_bound(nrows: int, ncols: int, trials: int, modulus: int = DEFAULT_PRIME) -> float:
    """Schwartz-Zippel bound on max-over-trials rank falling short of the generic rank.

    Entries are linear in the random coordinates, so a witnessing minor has
    degree at most min(nrows, ncols); each independent trial misses it with
    probability at most deg/modulus.
    """
    deg = min(nrows, ncols)
    if deg == 0:
        return 0.0
    return min(1.0, deg / modulus) ** trials
