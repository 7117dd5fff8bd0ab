"""Set partitions of {1..n} under refinement.

Partitions are stored canonically: each block is a sorted tuple and blocks
are ordered by their minimum element, so two partitions are equal exactly
when their serialized forms are equal.  All counting functions return
Python ints (arbitrary precision).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb, factorial, prod
from typing import Iterable, Iterator, Sequence

__all__ = [
    "MAX_ENUMERATE_N",
    "PartitionError",
    "Partition",
    "IntervalType",
    "canonicalize",
    "finest",
    "coarsest",
    "iter_partitions",
    "enumerate_partitions",
    "stirling2",
    "bell",
    "refines",
    "partition_join",
    "partition_meet",
    "partition_covers",
    "interval_type",
    "count_chains_partition",
    "moebius_partition",
]

#: Largest ground set accepted by :func:`enumerate_partitions`
#: (Bell(12) = 4 213 597 partitions; iterate rather than listing at that size).
MAX_ENUMERATE_N = 12


class PartitionError(ValueError):
    """Invalid partition data or an operation on incompatible partitions."""


@dataclass(frozen=True)
class Partition:
    n: int
    blocks: tuple[tuple[int, ...], ...]

    @property
    def b(self) -> int:
        """Number of blocks."""
        return len(self.blocks)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(blk) for blk in self.blocks)

    @cached_property
    def labels(self) -> tuple[int, ...]:
        # labels[i-1] is the index of the block holding element i
        out = [0] * self.n
        for j, blk in enumerate(self.blocks):
            for i in blk:
                out[i - 1] = j
        return tuple(out)

    def block_of(self, i: int) -> tuple[int, ...]:
        return self.blocks[self.labels[i - 1]]

    def serialize(self) -> list[list[int]]:
        return [list(blk) for blk in self.blocks]

    def rgs(self) -> tuple[int, ...]:
        """Restricted growth string (0-based block labels)."""
        return self.labels

    def is_finest(self) -> bool:
        return self.b == self.n

    def is_coarsest(self) -> bool:
        return self.b == 1

    def __str__(self) -> str:
        sep = "" if self.n < 10 else "."
        return "{" + ",".join(sep.join(map(str, blk)) for blk in self.blocks) + "}"

    def __repr__(self) -> str:
        return f"Partition({self.serialize()})"


@dataclass(frozen=True)
class IntervalType:
    """Shape of an interval [p, q] of the partition lattice.

    ``parts[i]`` counts the blocks of ``p`` inside the i-th block of ``q``;
    the interval is isomorphic to the product of the lattices Pi(parts[i]).
    """

    parts: tuple[int, ...]

    def as_multiset(self) -> tuple[int, ...]:
        return tuple(sorted(self.parts))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)


def _unchecked(n: int, blocks: Iterable[Iterable[int]]) -> Partition:
    canon = sorted(tuple(sorted(blk)) for blk in blocks)
    return Partition(n, tuple(canon))


def canonicalize(raw_blocks: Iterable[Iterable[int]], n: int | None = None) -> Partition:
    """Validate ``raw_blocks`` and return the canonical :class:`Partition`.

    If ``n`` is omitted it is taken to be the largest element present.
    """
    blocks = [list(blk) for blk in raw_blocks]
    if n is None:
        n = max((max(blk) for blk in blocks if blk), default=0)
    if n < 1:
        raise PartitionError("ground set must be nonempty")
    seen: set[int] = set()
    for blk in blocks:
        if not blk:
            raise PartitionError("empty block")
        for i in blk:
            if isinstance(i, bool) or not isinstance(i, int):
                raise PartitionError(f"element {i!r} is not an integer")
            if not 1 <= i <= n:
                raise PartitionError(f"element {i} out of range 1..{n}")
            if i in seen:
                raise PartitionError(f"element {i} repeated")
            seen.add(i)
    if len(seen) != n:
        missing = min(set(range(1, n + 1)) - seen)
        raise PartitionError(f"element {missing} missing")
    return _unchecked(n, blocks)


def finest(n: int) -> Partition:
    return Partition(n, tuple((i,) for i in range(1, n + 1)))


def coarsest(n: int) -> Partition:
    return Partition(n, (tuple(range(1, n + 1)),))


def _from_rgs(rgs: Sequence[int]) -> Partition:
    blocks: list[list[int]] = []
    for i, a in enumerate(rgs, start=1):
        if a == len(blocks):
            blocks.append([i])
        else:
            blocks[a].append(i)
    return Partition(len(rgs), tuple(tuple(blk) for blk in blocks))


def iter_partitions(n: int) -> Iterator[Partition]:
    """Yield every partition of {1..n}, restricted growth strings in lex order."""
    if n < 1:
        raise PartitionError(f"n must be >= 1, got {n}")
    rgs = [0] * n
    # running maxima: mx[i] = max(rgs[:i+1])
    mx = [0] * n
    while True:
        yield _from_rgs(rgs)
        i = n - 1
        while i > 0 and rgs[i] > mx[i - 1]:
            i -= 1
        if i == 0:
            return
        rgs[i] += 1
        mx[i] = max(mx[i - 1], rgs[i])
        for j in range(i + 1, n):
            rgs[j] = 0
            mx[j] = mx[i]


def enumerate_partitions(n: int) -> list[Partition]:
    if not 1 <= n <= MAX_ENUMERATE_N:
        raise PartitionError(f"n must be in 1..{MAX_ENUMERATE_N}, got {n}")
    return list(iter_partitions(n))


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind by the alternating binomial sum."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if k > n:
        raise ValueError(f"k={k} exceeds n={n}")
    total = sum((-1) ** (k - i) * comb(k, i) * i**n for i in range(k + 1))
    q, r = divmod(total, factorial(k))
    assert r == 0
    return q


def bell(n: int) -> int:
    return sum(stirling2(n, k) for k in range(n + 1))


def _same_n(p: Partition, q: Partition) -> None:
    if p.n != q.n:
        raise PartitionError(f"ground sets differ: n={p.n} vs n={q.n}")


def refines(p: Partition, q: Partition) -> bool:
    """True iff every block of ``p`` lies inside a block of ``q``."""
    _same_n(p, q)
    lab = q.labels
    return all(len({lab[i - 1] for i in blk}) == 1 for blk in p.blocks)


def partition_meet(p: Partition, q: Partition) -> Partition:
    _same_n(p, q)
    pieces: dict[tuple[int, int], list[int]] = {}
    for i in range(1, p.n + 1):
        pieces.setdefault((p.labels[i - 1], q.labels[i - 1]), []).append(i)
    return _unchecked(p.n, pieces.values())


def partition_join(p: Partition, q: Partition) -> Partition:
    _same_n(p, q)
    parent = list(range(p.n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for blk in p.blocks + q.blocks:
        root = find(blk[0])
        for i in blk[1:]:
            r = find(i)
            if r != root:
                parent[r] = root
    groups: dict[int, list[int]] = {}
    for i in range(1, p.n + 1):
        groups.setdefault(find(i), []).append(i)
    return _unchecked(p.n, groups.values())


def merge_blocks(p: Partition, i: int, j: int) -> Partition:
    """Partition obtained by merging blocks ``i`` and ``j`` (indices) of ``p``."""
    rest = [blk for t, blk in enumerate(p.blocks) if t not in (i, j)]
    return _unchecked(p.n, rest + [p.blocks[i] + p.blocks[j]])


def _splits(block: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    # unordered two-block splits; the first element always stays in the left part
    first, rest = block[0], block[1:]
    m = len(rest)
    for mask in range(2**m - 1):
        left = (first,) + tuple(rest[t] for t in range(m) if mask >> t & 1)
        right = tuple(rest[t] for t in range(m) if not mask >> t & 1)
        yield left, right


@dataclass(frozen=True)
class Covers:
    lower: tuple
    upper: tuple


def partition_covers(p: Partition) -> Covers:
    """Partitions covered by ``p`` (one block split) and covering it (two merged)."""
    lower = []
    for t, blk in enumerate(p.blocks):
        others = p.blocks[:t] + p.blocks[t + 1:]
        for left, right in _splits(blk):
            lower.append(_unchecked(p.n, others + (left, right)))
    upper = [merge_blocks(p, i, j) for i in range(p.b) for j in range(i + 1, p.b)]
    return Covers(lower=tuple(sorted(lower, key=Partition.rgs)),
                  upper=tuple(sorted(upper, key=Partition.rgs)))


def interval_type(p: Partition, q: Partition) -> IntervalType:
    if not refines(p, q):
        raise PartitionError(f"{p} does not refine {q}")
    counts = [0] * q.b
    for blk in p.blocks:
        counts[q.labels[blk[0] - 1]] += 1
    return IntervalType(tuple(counts))


def count_chains_partition(p: Partition, q: Partition) -> int:
    """Number of maximal chains of the interval [p, q] in Pi(n).

    With l_i the number of blocks of ``p`` inside the i-th block of ``q``
    and d = b(p) - b(q), the count is d! * prod(l_i!) / 2**d.
    """
    parts = interval_type(p, q).parts
    d = p.b - q.b
    num = factorial(d) * prod(factorial(x) for x in parts)
    q_, r = divmod(num, 2**d)
    assert r == 0
    return q_


def moebius_partition(p: Partition, q: Partition) -> int:
    """Moebius function of Pi(n): (-1)**(b(p)-b(q)) * prod((m_i - 1)!)."""
    parts = interval_type(p, q).parts
    sign = -1 if (p.b - q.b) % 2 else 1
    return sign * prod(factorial(m - 1) for m in parts)
