"""JSON and DOT formats.

Partition        ``[[1,2],[3]]``
Element          ``{"s":[1,2],"pi":[[1,2],[3]]}``, bottom ``{"bottom":true}``
Game             ``{"n":3,"values":[{"s":..,"pi":..,"v":"2"}, ...]}`` (bottom omitted)
Moebius vector   same shape with ``"m"`` in place of ``"v"``

Rationals are written as integer strings or ``"p/q"``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .games import Game, GameError, MoebiusVector, as_rational, make_game, make_moebius
from .lattice import EmbeddedLattice, EmbeddedSubset, LatticeError, bottom, embedded
from .partitions import Partition, PartitionError, canonicalize


class FormatError(ValueError):
    pass


def rational_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def partition_to_json(p: Partition) -> list[list[int]]:
    return p.serialize()


def partition_from_json(obj: Any, n: int | None = None) -> Partition:
    if not isinstance(obj, list) or not all(isinstance(b, list) for b in obj):
        raise FormatError(f"partition must be a list of lists, got {obj!r}")
    try:
        return canonicalize(obj, n)
    except PartitionError as exc:
        raise FormatError(str(exc)) from None


def element_to_json(x: EmbeddedSubset) -> dict:
    return x.serialize()


def element_from_json(obj: Any, n: int | None = None) -> EmbeddedSubset:
    if not isinstance(obj, dict):
        raise FormatError(f"element must be an object, got {obj!r}")
    if obj.get("bottom"):
        if n is None:
            raise FormatError("bottom needs an explicit n")
        return bottom(n)
    if "s" not in obj or "pi" not in obj:
        raise FormatError(f"element needs keys 's' and 'pi': {obj!r}")
    pi = partition_from_json(obj["pi"], n)
    s = obj["s"]
    if not isinstance(s, list):
        raise FormatError(f"'s' must be a list, got {s!r}")
    try:
        return embedded(s, pi)
    except LatticeError as exc:
        raise FormatError(str(exc)) from None


def game_to_json(v: Game | MoebiusVector, floats: bool = False) -> dict:
    key = "m" if isinstance(v, MoebiusVector) else "v"
    entries = []
    for x, val in v.items():
        if x.is_bottom:
            continue
        entry = {**x.serialize(), key: rational_str(val)}
        if floats:
            entry["float"] = float(val)
        entries.append(entry)
    return {"n": v.n, "values": entries}


def game_from_json(obj: Any) -> Game | MoebiusVector:
    """Parse a game (entries keyed ``"v"``) or Moebius vector (keyed ``"m"``)."""
    if not isinstance(obj, dict) or "n" not in obj or "values" not in obj:
        raise FormatError("expected an object with keys 'n' and 'values'")
    n = obj["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise FormatError(f"'n' must be a positive integer, got {n!r}")
    entries = obj["values"]
    if not isinstance(entries, list):
        raise FormatError("'values' must be a list")
    keys = {("m" in e) for e in entries if isinstance(e, dict)}
    is_moebius = keys == {True}
    if len(keys) > 1:
        raise FormatError("entries mix game values 'v' and masses 'm'")
    key = "m" if is_moebius else "v"
    pairs = []
    for e in entries:
        if not isinstance(e, dict) or key not in e:
            raise FormatError(f"entry lacks {key!r}: {e!r}")
        try:
            pairs.append((element_from_json(e, n), as_rational(e[key])))
        except GameError as exc:
            raise FormatError(str(exc)) from None
    try:
        return make_moebius(n, pairs) if is_moebius else make_game(n, pairs)
    except (GameError, LatticeError) as exc:
        raise FormatError(str(exc)) from None


def lattice_to_json(L: EmbeddedLattice) -> dict:
    elements = [{"id": i, "height": x.height, "label": str(x), **x.serialize()}
                for i, x in enumerate(L)]
    return {"n": L.n, "elements": elements, "covers": [list(e) for e in L.cover_edges]}


def lattice_to_dot(L: EmbeddedLattice) -> str:
    """Hasse diagram, bottom-up, one ``rank=same`` group per height."""
    lines = [f"digraph hasse_{L.n} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for i, x in enumerate(L):
        lines.append(f'  e{i} [label="{x}"];')
    for h in range(L.n + 1):
        ids = "; ".join(f"e{i}" for i, x in enumerate(L) if x.height == h)
        lines.append(f"  {{ rank=same; {ids}; }}")
    for i, j in L.cover_edges:
        lines.append(f"  e{i} -> e{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
