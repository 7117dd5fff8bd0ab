"""Games in partition function form on the embedded-subset lattice.

A game assigns an exact rational to every element and vanishes at the
bottom.  This module converts between games and their Moebius masses
(coordinates in the unanimity basis) and decides the usual capacity
classes: monotone, super/submodular, k-monotone, belief, minitive.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import lcm
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .lattice import (
    EmbeddedLattice,
    EmbeddedSubset,
    build_lattice,
    moebius_embedded,
    parse_element,
)
from .linalg import nullspace

__all__ = [
    "GameError",
    "Game",
    "MoebiusVector",
    "CheckResult",
    "ModularityReport",
    "PropertyReport",
    "ValuationSpace",
    "make_game",
    "make_moebius",
    "moebius_transform",
    "zeta_transform",
    "unanimity_game",
    "check_monotone",
    "check_modularity_class",
    "check_k_monotone",
    "check_k_monotone_bruteforce",
    "check_infty_monotone",
    "check_belief",
    "check_invertible_belief",
    "check_minitive",
    "generate_minitive",
    "analyze",
    "valuation_space",
    "twoparam_belief",
    "random_game",
    "example1_game",
    "COUNTEREXAMPLE_ALPHA",
    "COUNTEREXAMPLE_BETA",
]

Rational = Union[int, Fraction, str]
ElementRef = Union[EmbeddedSubset, int, str]

COUNTEREXAMPLE_ALPHA = Fraction(1, 10)
COUNTEREXAMPLE_BETA = Fraction(7, 25)


class GameError(ValueError):
    pass


def as_rational(x) -> Fraction:
    """Exact rational from an int, Fraction, ``"p/q"`` or decimal string.

    Floats are read through their shortest decimal representation.
    """
    if isinstance(x, bool):
        raise GameError(f"not a number: {x!r}")
    if isinstance(x, float):
        return Fraction(repr(x))
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise GameError(f"not a rational number: {x!r}") from None


class _LatticeFunction:
    """Immutable rational vector indexed by the lattice elements."""

    __slots__ = ("n", "data")
    _kind = "values"

    def __init__(self, n: int, data: Iterable[Fraction]):
        data = tuple(Fraction(x) for x in data)
        L = build_lattice(n)
        if len(data) != len(L):
            raise GameError(f"expected {len(L)} entries for n={n}, got {len(data)}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "data", data)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def lattice(self) -> EmbeddedLattice:
        return build_lattice(self.n)

    def _idx(self, x: ElementRef) -> int:
        if isinstance(x, str):
            x = parse_element(x, self.n)
        return self.lattice.index_of(x)

    def __getitem__(self, x: ElementRef) -> Fraction:
        return self.data[self._idx(x)]

    def __len__(self) -> int:
        return len(self.data)

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.n == other.n and self.data == other.data

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.n, self.data))

    def items(self) -> Iterator[tuple[EmbeddedSubset, Fraction]]:
        return zip(self.lattice.elements, self.data)

    def support(self) -> list[EmbeddedSubset]:
        return [x for x, val in self.items() if val != 0]

    def __repr__(self) -> str:
        nz = ", ".join(f"{x}: {val}" for x, val in self.items() if val != 0)
        return f"{type(self).__name__}(n={self.n}, {{{nz}}})"


class Game(_LatticeFunction):
    """A game: ``values[i]`` is the worth of lattice element ``i``; zero at bottom."""

    __slots__ = ()

    def __init__(self, n: int, values: Iterable[Fraction]):
        super().__init__(n, values)
        if self.data[0] != 0:
            raise GameError(f"a game vanishes at the bottom, got {self.data[0]}")

    @property
    def values(self) -> tuple[Fraction, ...]:
        return self.data


class MoebiusVector(_LatticeFunction):
    """Moebius masses of a game; ``masses[0]`` (the bottom) is always zero."""

    __slots__ = ()
    _kind = "masses"

    def __init__(self, n: int, masses: Iterable[Fraction]):
        super().__init__(n, masses)
        if self.data[0] != 0:
            raise GameError(f"Moebius mass at the bottom must be 0, got {self.data[0]}")

    @property
    def masses(self) -> tuple[Fraction, ...]:
        return self.data


def _assemble(n: int, assignments, fill, kind: str) -> list[Fraction]:
    L = build_lattice(n)
    out: list[Fraction | None] = [None] * len(L)
    out[0] = Fraction(0)
    for ref, val in assignments:
        if isinstance(ref, str):
            ref = parse_element(ref, n)
        i = L.index_of(ref)
        val = as_rational(val)
        if i == 0:
            if val != 0:
                raise GameError(f"nonzero {kind} {val} assigned to the bottom")
            continue
        if out[i] is not None:
            raise GameError(f"element {L[i]} assigned twice")
        out[i] = val
    missing = [L[i] for i, val in enumerate(out) if val is None]
    if missing:
        if fill is None:
            raise GameError(f"no {kind} for element {missing[0]} ({len(missing)} missing)")
        fill = as_rational(fill)
        out = [fill if val is None else val for val in out]
    return out


def make_game(n: int, assignments: Iterable[tuple[ElementRef, Rational]] = (),
              fill: Rational | None = None) -> Game:
    """Build a game from ``(element, value)`` pairs.

    Every non-bottom element needs exactly one value unless ``fill`` is
    given, in which case unassigned elements take that value.
    """
    return Game(n, _assemble(n, assignments, fill, "value"))


def make_moebius(n: int, assignments: Iterable[tuple[ElementRef, Rational]] = (),
                 fill: Rational | None = 0) -> MoebiusVector:
    return MoebiusVector(n, _assemble(n, assignments, fill, "mass"))


# -- transforms ---------------------------------------------------------------------

@lru_cache(maxsize=None)
def _moebius_columns(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    # for each y: the pairs (x, mu(x, y)) with x <= y and mu != 0
    L = build_lattice(n)
    cols = []
    for j, y in enumerate(L):
        col = []
        for i in np.flatnonzero(L.leq[:, j]):
            mu = moebius_embedded(L[int(i)], y)
            if mu:
                col.append((int(i), mu))
        cols.append(tuple(col))
    return tuple(cols)


@lru_cache(maxsize=None)
def _downsets(n: int) -> tuple[tuple[int, ...], ...]:
    L = build_lattice(n)
    return tuple(tuple(int(i) for i in np.flatnonzero(L.leq[:, j])) for j in range(len(L)))


def moebius_transform(v: Game) -> MoebiusVector:
    """m(y) = sum over x <= y of mu(x, y) v(x)."""
    vals = v.data
    masses = [sum((mu * vals[i] for i, mu in col), Fraction(0)) for col in _moebius_columns(v.n)]
    return MoebiusVector(v.n, masses)


def zeta_transform(m: MoebiusVector) -> Game:
    """v(y) = sum over x <= y of m(x)."""
    masses = m.data
    return Game(m.n, [sum((masses[i] for i in down), Fraction(0)) for down in _downsets(m.n)])


def unanimity_game(e: EmbeddedSubset) -> Game:
    """Indicator of the up-set of ``e``."""
    if e.is_bottom:
        raise GameError("no unanimity game for the bottom")
    L = build_lattice(e.n)
    row = L.leq[L.index_of(e)]
    return Game(e.n, [Fraction(int(b)) for b in row])


# -- verdicts -----------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    """Verdict of one property check; ``witness`` names the first violation."""

    holds: bool
    witness: tuple | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.holds


def check_monotone(v: Game) -> CheckResult:
    L = v.lattice
    for i, j in L.cover_edges:
        if v.data[i] > v.data[j]:
            return CheckResult(False, (L[i], L[j]), f"v({L[i]}) = {v.data[i]} > v({L[j]}) = {v.data[j]}")
    return CheckResult(True)


@dataclass(frozen=True)
class ModularityReport:
    supermodular: CheckResult
    submodular: CheckResult

    @property
    def additive(self) -> CheckResult:
        if not self.supermodular:
            return self.supermodular
        return self.submodular


def check_modularity_class(v: Game) -> ModularityReport:
    """Scan all pairs for v(x v y) + v(x ^ y) versus v(x) + v(y)."""
    L = v.lattice
    J, M = L.join_table, L.meet_table
    val = v.data
    sup = sub = None
    for i in range(len(L)):
        for j in range(i + 1, len(L)):
            lhs = val[J[i, j]] + val[M[i, j]]
            rhs = val[i] + val[j]
            if sup is None and lhs < rhs:
                sup = CheckResult(False, (L[i], L[j]), f"v(x v y) + v(x ^ y) = {lhs} < {rhs}")
            if sub is None and lhs > rhs:
                sub = CheckResult(False, (L[i], L[j]), f"v(x v y) + v(x ^ y) = {lhs} > {rhs}")
            if sup is not None and sub is not None:
                return ModularityReport(sup, sub)
    # a failed CheckResult is falsy, so test against None explicitly
    return ModularityReport(CheckResult(True) if sup is None else sup,
                            CheckResult(True) if sub is None else sub)


# k-monotonicity.  For a family x_1..x_k the margin
#   v(x_1 v .. v x_k) - sum_{J nonempty} (-1)^{|J|+1} v(meet of x_J)
# depends only on the maximal elements of the family: repeated entries
# cancel in pairs, and so does any entry lying below another one.  Writing
# v as the zeta transform of its masses m, the margin of an antichain A is
# the total mass on down(join A) minus down(A).  Families therefore reduce
# to antichains of size <= k, enumerated once per lattice.

@dataclass(frozen=True)
class _AntichainTable:
    antichains: tuple[tuple[int, ...], ...]
    region: np.ndarray            # (len(antichains), |L|) bool
    low: tuple[int, ...]          # smallest non-bottom index strictly below the antichain


@lru_cache(maxsize=None)
def _antichain_table(n: int, k: int) -> _AntichainTable:
    L = build_lattice(n)
    size = len(L)
    comparable = L.leq | L.leq.T
    found: list[tuple[int, ...]] = []

    def extend(chain: tuple[int, ...], allowed: np.ndarray) -> None:
        for j in np.flatnonzero(allowed):
            j = int(j)
            nxt = chain + (j,)
            if len(nxt) >= 2:
                found.append(nxt)
            if len(nxt) < k:
                rest = allowed & ~comparable[j]
                rest[: j + 1] = False
                extend(nxt, rest)

    start = np.ones(size, dtype=bool)
    start[0] = False
    extend((), start)
    found.sort()

    J = L.join_table
    region = np.zeros((len(found), size), dtype=bool)
    low = []
    for r, a in enumerate(found):
        top = a[0]
        below = np.zeros(size, dtype=bool)
        for x in a:
            top = J[top, x]
            below |= L.leq[:, x]
        region[r] = L.leq[:, top] & ~below
        strict = below.copy()
        strict[list(a)] = False
        strict[0] = False
        nz = np.flatnonzero(strict)
        low.append(int(nz[0]) if nz.size else size)
    region.flags.writeable = False
    return _AntichainTable(tuple(found), region, tuple(low))


def _integer_vector(vals: Sequence[Fraction]) -> tuple[np.ndarray, int]:
    d = lcm(*(x.denominator for x in vals))
    ints = [int(x * d) for x in vals]
    if max(map(abs, ints), default=0) < 2**40:
        return np.array(ints, dtype=np.int64), d
    return np.array(ints, dtype=object), d


def _family_witness(a: tuple[int, ...], low: int, k: int) -> tuple[int, ...]:
    # lexicographically first size-k multiset whose maximal elements are a
    if low < a[0] and len(a) < k:
        d = (low,) + a
    else:
        d = a
    return (d[0],) * (k - len(d) + 1) + d[1:]


def check_k_monotone(v: Game, k: int) -> CheckResult:
    """Decide k-monotonicity over all size-k families (repetitions allowed).

    On failure the witness is the lexicographically first violating family
    (as a sorted tuple of element indices, returned as elements).
    """
    if k < 2:
        raise GameError(f"k-monotonicity needs k >= 2, got {k}")
    m = moebius_transform(v).data
    # every margin is a sum of masses, so nonnegative masses settle it
    if all(x >= 0 for x in m):
        return CheckResult(True)
    table = _antichain_table(v.n, k)
    if not table.antichains:
        return CheckResult(True)
    mvec, d = _integer_vector(m)
    margins = table.region.astype(mvec.dtype) @ mvec
    bad = np.flatnonzero(margins < 0)
    if bad.size == 0:
        return CheckResult(True)
    best = min((_family_witness(table.antichains[r], table.low[r], k), r) for r in bad)
    fam, r = best
    L = v.lattice
    margin = Fraction(int(margins[r]), d)
    return CheckResult(False, tuple(L[i] for i in fam), f"margin {margin} < 0")


def _family_margin(L: EmbeddedLattice, val: Sequence[Fraction], fam: Sequence[int]) -> Fraction:
    J, M = L.join_table, L.meet_table
    top = fam[0]
    for x in fam[1:]:
        top = J[top, x]
    total = Fraction(0)
    k = len(fam)
    for r in range(1, k + 1):
        sign = 1 if r % 2 else -1
        for sub in combinations(fam, r):
            w = sub[0]
            for x in sub[1:]:
                w = M[w, x]
            total += sign * val[w]
    return val[top] - total


def check_k_monotone_bruteforce(v: Game, k: int) -> CheckResult:
    """Reference scan over every size-k multiset with full inclusion-exclusion."""
    if k < 2:
        raise GameError(f"k-monotonicity needs k >= 2, got {k}")
    L = v.lattice
    for fam in combinations_with_replacement(range(1, len(L)), k):
        margin = _family_margin(L, v.data, fam)
        if margin < 0:
            return CheckResult(False, tuple(L[i] for i in fam), f"margin {margin} < 0")
    return CheckResult(True)


def check_infty_monotone(v: Game, bound: int | None = None) -> CheckResult:
    """Monotone and k-monotone for every 2 <= k <= bound (default |L| - 2).

    The witness is the first violating family at the smallest failing k.
    Exhaustive: beyond n = 3 only games with a negative Moebius mass and a
    large failing k are expensive.
    """
    mono = check_monotone(v)
    if not mono:
        return mono
    if bound is None:
        bound = len(v.lattice) - 2
    for k in range(2, bound + 1):
        res = check_k_monotone(v, k)
        if not res:
            return res
    return CheckResult(True)


def check_belief(v: Game, bound: int | None = None) -> CheckResult:
    mono = check_monotone(v)
    if not mono:
        return mono
    L = v.lattice
    if v.data[L.top] != 1:
        return CheckResult(False, (L[L.top],), f"v(top) = {v.data[L.top]} != 1")
    return check_infty_monotone(v, bound)


def check_invertible_belief(v: Game, bound: int | None = None) -> CheckResult:
    bel = check_belief(v, bound)
    if not bel:
        return bel
    m = moebius_transform(v)
    for x, mass in m.items():
        if mass < 0:
            return CheckResult(False, (x,), f"m({x}) = {mass} < 0")
    # v(top) = 1 already forces the masses to sum to 1
    return CheckResult(True)


def check_minitive(v: Game) -> CheckResult:
    """f(bottom) = 0, f(top) = 1 and f(x ^ y) = min(f(x), f(y)) for all pairs."""
    L = v.lattice
    val = v.data
    if val[L.top] != 1:
        return CheckResult(False, (L[L.top],), f"f(top) = {val[L.top]} != 1")
    M = L.meet_table
    for i in range(1, len(L)):
        for j in range(i + 1, len(L)):
            if val[M[i, j]] != min(val[i], val[j]):
                return CheckResult(False, (L[i], L[j]),
                                   f"f(x ^ y) = {val[M[i, j]]} != min({val[i]}, {val[j]})")
    return CheckResult(True)


def generate_minitive(chain: Sequence[ElementRef], masses: Sequence[Rational], n: int | None = None) -> Game:
    """Zeta transform of nonnegative masses, summing to 1, placed on a chain."""
    if len(chain) != len(masses):
        raise GameError("chain and masses differ in length")
    if not chain:
        raise GameError("empty chain")
    if n is None:
        first = chain[0]
        if not isinstance(first, EmbeddedSubset):
            first = parse_element(first)
        n = first.n
    L = build_lattice(n)
    idx = [L.index_of(parse_element(x, n) if isinstance(x, str) else x) for x in chain]
    ms = [as_rational(m) for m in masses]
    if any(m < 0 for m in ms):
        raise GameError("masses must be nonnegative")
    if sum(ms) != 1:
        raise GameError(f"masses sum to {sum(ms)}, not 1")
    if len(set(idx)) != len(idx):
        raise GameError("chain repeats an element")
    for i, m in zip(idx, ms):
        if i == 0 and m != 0:
            raise GameError("no mass may sit on the bottom")
    for a, b in combinations(idx, 2):
        if not (L.leq[a, b] or L.leq[b, a]):
            raise GameError(f"{L[a]} and {L[b]} are incomparable: not a chain")
    return zeta_transform(make_moebius(n, [(L[i], m) for i, m in zip(idx, ms)]))


@dataclass(frozen=True)
class PropertyReport:
    monotone: bool
    normalized: bool
    supermodular: bool
    submodular: bool
    additive: bool
    belief: bool
    invertible_belief: bool
    minitive: bool
    k_monotone_up_to: int
    witness: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in (
            "monotone", "normalized", "supermodular", "submodular", "additive",
            "belief", "invertible_belief", "minitive", "k_monotone_up_to")}


def analyze(v: Game, bound: int | None = None) -> PropertyReport:
    """Every verdict at once; ``witness`` maps each failed property to its witness.

    ``k_monotone_up_to`` is the largest k <= bound (default |L| - 2) for
    which v is k-monotone, or 1 when v is not even 2-monotone.
    """
    L = v.lattice
    if bound is None:
        bound = len(L) - 2
    witness: dict[str, tuple] = {}

    def note(name: str, res: CheckResult) -> bool:
        if not res:
            witness[name] = res.witness
        return res.holds

    monotone = note("monotone", check_monotone(v))
    normalized = v.data[L.top] == 1
    if not normalized:
        witness["normalized"] = (L[L.top],)
    mod = check_modularity_class(v)
    supermodular = note("supermodular", mod.supermodular)
    submodular = note("submodular", mod.submodular)
    additive = note("additive", mod.additive)

    up_to = 1
    kres = CheckResult(True)
    for k in range(2, bound + 1):
        kres = check_k_monotone(v, k)
        if not kres:
            witness["k_monotone"] = kres.witness
            break
        up_to = k
    if bound < 2:
        up_to = bound
    infty = up_to >= bound

    belief = monotone and normalized and infty
    if not belief:
        witness["belief"] = (witness.get("monotone") or witness.get("normalized")
                             or witness.get("k_monotone"))
    invertible = belief
    if belief:
        neg = [x for x, mass in moebius_transform(v).items() if mass < 0]
        if neg:
            invertible = False
            witness["invertible_belief"] = (neg[0],)
    else:
        witness["invertible_belief"] = witness["belief"]
    minitive = note("minitive", check_minitive(v))
    return PropertyReport(monotone, normalized, supermodular, submodular, additive,
                          belief, invertible, minitive, up_to, witness)


# -- valuations ---------------------------------------------------------------------

@dataclass(frozen=True)
class ValuationSpace:
    """Solutions f of f(x) + f(y) = f(x v y) + f(x ^ y) over incomparable pairs."""

    n: int
    basis: tuple[tuple[Fraction, ...], ...]
    strictly_monotone: tuple[Fraction, ...] | None

    @property
    def dimension(self) -> int:
        return len(self.basis)


def valuation_equations(n: int, fix_bottom_zero: bool = False) -> list[list[int]]:
    L = build_lattice(n)
    J, M = L.join_table, L.meet_table
    size = len(L)
    rows = []
    for i in range(size):
        for j in range(i + 1, size):
            if L.leq[i, j] or L.leq[j, i]:
                continue
            row = [0] * size
            row[i] += 1
            row[j] += 1
            row[J[i, j]] -= 1
            row[M[i, j]] -= 1
            rows.append(row)
    if fix_bottom_zero:
        row = [0] * size
        row[0] = 1
        rows.append(row)
    return rows


def valuation_space(n: int, fix_bottom_zero: bool = False) -> ValuationSpace:
    """Exact nullspace of the valuation system.

    ``strictly_monotone`` holds the height function when it solves the
    system (a strictly monotone valuation), else None.
    """
    L = build_lattice(n)
    rows = valuation_equations(n, fix_bottom_zero)
    basis = nullspace(rows, len(L))
    h = [Fraction(int(t)) for t in L.heights]
    ok = all(sum(c * x for c, x in zip(row, h)) == 0 for row in rows)
    return ValuationSpace(n, tuple(basis), tuple(h) if ok else None)


# -- generators ---------------------------------------------------------------------

def twoparam_belief(alpha: Rational, beta: Rational) -> Game:
    """The n=3 game worth alpha on atoms, beta one level up, 1 at the top."""
    a, b = as_rational(alpha), as_rational(beta)
    L = build_lattice(3)
    by_height = {0: Fraction(0), 1: a, 2: b, 3: Fraction(1)}
    return Game(3, [by_height[int(h)] for h in L.heights])


def example1_game() -> Game:
    """n=3 game whose masses are 1 on 1{1,2,3}, 2{1,2,3} and 23{1,23}."""
    return make_game(3, [
        ("123{123}", 3), ("12{12,3}", 2), ("3{12,3}", 0), ("1{1,23}", 1),
        ("23{1,23}", 2), ("13{13,2}", 1), ("2{13,2}", 1), ("1{1,2,3}", 1),
        ("2{1,2,3}", 1), ("3{1,2,3}", 0),
    ])


RANDOM_MODES = ("uniform_values", "nonneg_moebius")


def random_game(n: int, seed: int, mode: str = "uniform_values") -> Game:
    """Seeded random game.

    ``uniform_values``: each non-bottom value drawn from {0, 1/100, .., 1}.
    ``nonneg_moebius``: nonnegative masses on a random support, normalized
    to sum 1, then zeta-transformed (always a belief function).
    """
    rng = random.Random(seed)
    size = len(build_lattice(n))
    if mode == "uniform_values":
        return Game(n, [Fraction(0)] + [Fraction(rng.randint(0, 100), 100) for _ in range(size - 1)])
    if mode == "nonneg_moebius":
        w = [0] + [rng.randint(1, 20) if rng.random() < 0.5 else 0 for _ in range(size - 1)]
        if not any(w):
            w[rng.randrange(1, size)] = 1
        total = sum(w)
        return zeta_transform(MoebiusVector(n, [Fraction(x, total) for x in w]))
    raise GameError(f"unknown mode {mode!r}; choose from {RANDOM_MODES}")
