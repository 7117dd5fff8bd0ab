"""Generic finite posets given by an order matrix.

Nothing here knows about partitions or embedded subsets: covers are read
off the order relation, maximal chains are counted by dynamic programming
over the cover graph and the Moebius function comes from its defining
recursion.  These serve as the independent check on every closed form in
the package.
"""

from __future__ import annotations

from functools import cached_property
from typing import Callable, Sequence, TypeVar

import numpy as np

T = TypeVar("T")


def order_matrix(elements: Sequence[T], leq: Callable[[T, T], bool]) -> np.ndarray:
    n = len(elements)
    out = np.zeros((n, n), dtype=bool)
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            out[i, j] = leq(x, y)
    return out


def cover_matrix(leq: np.ndarray) -> np.ndarray:
    """``out[i, j]`` iff j covers i: i < j with nothing strictly between."""
    lt = leq.copy()
    np.fill_diagonal(lt, False)
    # float32 product is exact while the poset has fewer than 2**24 elements
    f = lt.astype(np.float32)
    between = (f @ f) > 0
    return lt & ~between


class FinitePoset:
    """Finite poset on ``range(size)``.

    The index order must be a linear extension (i <= j in the poset
    implies i <= j as integers), which every builder in this package
    guarantees by sorting on height.
    """

    def __init__(self, leq: np.ndarray):
        leq = np.asarray(leq, dtype=bool)
        if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
            raise ValueError("order matrix must be square")
        if np.any(np.tril(leq, -1)):
            raise ValueError("index order is not a linear extension")
        leq = leq.copy()
        leq.flags.writeable = False
        self.leq = leq
        self.size = leq.shape[0]

    @cached_property
    def covers(self) -> np.ndarray:
        c = cover_matrix(self.leq)
        c.flags.writeable = False
        return c

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(j) for j in np.flatnonzero(row)) for row in self.covers)

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(i) for i in np.flatnonzero(col)) for col in self.covers.T)

    def chains_from(self, x: int) -> list[int]:
        """Number of maximal chains of [x, y] for every y (0 if y is not above x)."""
        ways = [0] * self.size
        ways[x] = 1
        lower = self.lower_covers
        for y in range(x + 1, self.size):
            if self.leq[x, y]:
                ways[y] = sum(ways[z] for z in lower[y])
        return ways

    def count_chains(self, x: int, y: int) -> int:
        if not self.leq[x, y]:
            raise ValueError(f"elements {x} and {y} are not comparable as x <= y")
        return self.chains_from(x)[y]

    def moebius_from(self, x: int) -> list[int]:
        """mu(x, y) for every y via mu(x,x)=1, sum_{x<=z<=y} mu(x,z) = 0."""
        mu = [0] * self.size
        mu[x] = 1
        up = [int(z) for z in np.flatnonzero(self.leq[x]) if z > x]
        for y in up:
            col = self.leq[:, y]
            mu[y] = -sum(mu[z] for z in range(x, y) if col[z] and self.leq[x, z])
        return mu

    def moebius(self, x: int, y: int) -> int:
        if not self.leq[x, y]:
            raise ValueError(f"elements {x} and {y} are not comparable as x <= y")
        return self.moebius_from(x)[y]

    def rank_bounds(self) -> tuple[list[int], list[int]]:
        """Shortest and longest cover-path lengths from index 0 to each element."""
        lo = [0] * self.size
        hi = [0] * self.size
        lower = self.lower_covers
        for y in range(1, self.size):
            if lower[y]:
                lo[y] = 1 + min(lo[z] for z in lower[y])
                hi[y] = 1 + max(hi[z] for z in lower[y])
        return lo, hi
