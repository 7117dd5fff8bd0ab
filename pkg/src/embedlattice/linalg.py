"""Exact integer/rational linear algebra by fraction-free elimination."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        d = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * d) for x in fr])
    return out


def bareiss_echelon(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Row echelon form over the integers (Bareiss elimination).

    Returns the nonzero echelon rows and their pivot columns.  Every
    division performed is exact, so entries stay integral and bounded by
    minors of the input.
    """
    a = _integer_rows(rows)
    for row in a:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
    m = len(a)
    pivots: list[int] = []
    r = 0
    prev = 1
    for c in range(ncols):
        if r == m:
            break
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, m):
            f = a[i][c]
            ai = a[i]
            ar = a[r]
            for j in range(c, ncols):
                ai[j] = (piv * ai[j] - f * ar[j]) // prev
            ai[c] = 0
        # rows above the pivot row are not rescaled, so the sweep stays exact
        prev = piv
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(bareiss_echelon(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of {x : A x = 0}, one vector per free column (free entry = 1)."""
    ech, pivots = bareiss_echelon(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            row = ech[r]
            s = sum((row[j] * x[j] for j in range(c + 1, ncols) if row[j]), Fraction(0))
            x[c] = -s / row[c]
        basis.append(tuple(x))
    return basis


def primitive(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers (first nonzero entry positive)."""
    d = lcm(*(Fraction(x).denominator for x in v)) if v else 1
    ints = [int(Fraction(x) * d) for x in v]
    g = 0
    for t in ints:
        g = gcd(g, t)
    if g == 0:
        return tuple(ints)
    lead = next(t for t in ints if t)
    if lead < 0:
        g = -g
    return tuple(t // g for t in ints)
