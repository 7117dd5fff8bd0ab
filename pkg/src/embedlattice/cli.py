"""Command-line front end.

Exit codes: 0 success, 1 a property check answered "false", 2 usage or
validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence, TextIO

from . import games as g
from . import lattice as lat
from .jsonio import (
    element_from_json,
    game_from_json,
    game_to_json,
    lattice_to_dot,
    lattice_to_json,
    rational_str,
)
from .partitions import enumerate_partitions

PROPERTIES = ("monotone", "supermodular", "submodular", "additive", "k-monotone",
              "infty-monotone", "belief", "invertible-belief", "minitive")


class UsageError(ValueError):
    pass


def _element(text: str, n: int | None) -> lat.EmbeddedSubset:
    text = text.strip()
    if text.startswith("{") and '"' in text:
        return element_from_json(json.loads(text), n)
    return lat.parse_element(text, n)


def _read_json(path: str, stdin: TextIO):
    if path == "-":
        return json.load(stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _dump(obj, out: TextIO) -> None:
    out.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


# -- subcommands ------------------------------------------------------------------

def cmd_enumerate(args, out, stdin) -> int:
    if args.partitions:
        parts = enumerate_partitions(args.n)
        if args.format == "json":
            _dump([p.serialize() for p in parts], out)
        else:
            for p in parts:
                out.write(f"{p.b}\t{p}\n")
        return 0
    L = lat.build_lattice(args.n)
    if args.format == "json":
        _dump(lattice_to_json(L)["elements"], out)
    else:
        for i, x in enumerate(L):
            out.write(f"{x.height}\t{i}\t{x}\n")
    return 0


def cmd_table(args, out, stdin) -> int:
    rows = []
    for n in range(args.n_min, args.n_max + 1):
        row = {"n": n, "elements": lat.element_count(n), "chains": lat.total_chain_count(n)}
        if n <= args.materialize:
            L = lat.build_lattice(n)
            row["elements_materialized"] = len(L)
            if n <= args.materialize - 1:
                row["chains_dp"] = L.poset.count_chains(L.bottom, L.top)
        rows.append(row)
    if args.format == "json":
        _dump(rows, out)
    else:
        cols = ["n", "elements", "elements_materialized", "chains", "chains_dp"]
        out.write("\t".join(cols) + "\n")
        for row in rows:
            out.write("\t".join(str(row.get(c, "-")) for c in cols) + "\n")
    return 0


def _endpoints(args) -> tuple[lat.EmbeddedSubset, lat.EmbeddedSubset]:
    x = _element(args.src, args.n) if args.src else lat.bottom(args.n)
    y = _element(args.dst, args.n) if args.dst else lat.top(args.n)
    return x, y


def cmd_chains(args, out, stdin) -> int:
    x, y = _endpoints(args)
    if args.oracle:
        value = lat.count_chains_oracle(x, y)
    else:
        value = lat.count_chains_embedded(x, y, variant=args.variant)
    out.write(f"{rational_str(Fraction(value))}\n")
    return 0


def cmd_moebius(args, out, stdin) -> int:
    x, y = _endpoints(args)
    value = lat.moebius_oracle(x, y) if args.oracle else lat.moebius_embedded(x, y)
    out.write(f"{value}\n")
    return 0


def cmd_transform(args, out, stdin) -> int:
    obj = game_from_json(_read_json(args.game, stdin))
    if args.inverse:
        if not isinstance(obj, g.MoebiusVector):
            raise UsageError("--inverse expects a Moebius vector (entries keyed 'm')")
        res = g.zeta_transform(obj)
    else:
        if not isinstance(obj, g.Game):
            raise UsageError("expected a game (entries keyed 'v'); use --inverse for masses")
        res = g.moebius_transform(obj)
    _dump(game_to_json(res, floats=args.float), out)
    return 0


def _verdict(prop: str, res: g.CheckResult, extra: dict | None = None) -> dict:
    doc = {"property": prop, "verdict": res.holds}
    if extra:
        doc.update(extra)
    if not res.holds:
        doc["witness"] = [str(x) for x in res.witness] if res.witness else None
        doc["detail"] = res.detail
    return doc


def cmd_check(args, out, stdin) -> int:
    v = game_from_json(_read_json(args.game, stdin))
    if not isinstance(v, g.Game):
        raise UsageError("check expects a game (entries keyed 'v')")
    prop = args.property
    extra = None
    if prop == "monotone":
        res = g.check_monotone(v)
    elif prop in ("supermodular", "submodular", "additive"):
        res = getattr(g.check_modularity_class(v), prop)
    elif prop == "k-monotone":
        if args.k is None:
            raise UsageError("--property k-monotone needs --k")
        res = g.check_k_monotone(v, args.k)
        extra = {"k": args.k}
    elif prop == "infty-monotone":
        res = g.check_infty_monotone(v, args.bound)
    elif prop == "belief":
        res = g.check_belief(v, args.bound)
    elif prop == "invertible-belief":
        res = g.check_invertible_belief(v, args.bound)
    else:
        res = g.check_minitive(v)
    _dump(_verdict(prop, res, extra), out)
    return 0 if res.holds else 1


def cmd_valuations(args, out, stdin) -> int:
    space = g.valuation_space(args.n, fix_bottom_zero=args.fix_bottom_zero)
    L = lat.build_lattice(args.n)
    doc = {
        "n": args.n,
        "fix_bottom_zero": args.fix_bottom_zero,
        "dimension": space.dimension,
        "elements": [str(x) for x in L],
        "basis": [[rational_str(c) for c in vec] for vec in space.basis],
        "strictly_monotone": (None if space.strictly_monotone is None
                              else [rational_str(c) for c in space.strictly_monotone]),
    }
    _dump(doc, out)
    return 0


def cmd_gen(args, out, stdin) -> int:
    kind = args.kind
    if kind == "unanimity":
        v = g.unanimity_game(_element(args.element, args.n))
    elif kind == "minitive":
        chain = [_element(t, args.n) for t in args.chain]
        v = g.generate_minitive(chain, args.masses, n=args.n)
    elif kind == "counterexample":
        v = g.twoparam_belief(args.alpha, args.beta)
    else:
        v = g.random_game(args.n, args.seed, args.mode)
    _dump(game_to_json(v, floats=args.float), out)
    return 0


def cmd_export(args, out, stdin) -> int:
    L = lat.build_lattice(args.n)
    if args.format == "dot":
        out.write(lattice_to_dot(L))
    else:
        _dump(lattice_to_json(L), out)
    return 0


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="embedlattice",
                                description="Embedded-subset lattices and games in partition function form.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("enumerate", help="list lattice elements (or partitions)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--format", choices=("table", "json"), default="table")
    s.add_argument("--partitions", action="store_true", help="list Pi(n) instead")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("table", help="element and maximal-chain counts per n")
    s.add_argument("--n-min", type=int, default=1)
    s.add_argument("--n-max", type=int, default=8)
    s.add_argument("--materialize", type=int, default=lat.MAX_MATERIALIZE_N,
                   help="materialize lattices up to this n for cross-checks")
    s.add_argument("--format", choices=("table", "json"), default="table")
    s.set_defaults(func=cmd_table)

    for name, func, helptext in (("chains", cmd_chains, "count maximal chains of an interval"),
                                 ("moebius", cmd_moebius, "Moebius function of an interval")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--from", dest="src", help="lower end (default bottom)")
        s.add_argument("--to", dest="dst", help="upper end (default top)")
        s.add_argument("--oracle", action="store_true", help="use the materialized-lattice oracle")
        if name == "chains":
            s.add_argument("--variant", choices=lat.CHAIN_VARIANTS, default="exact")
        s.set_defaults(func=func)

    s = sub.add_parser("transform", help="Moebius transform of a game (or zeta with --inverse)")
    s.add_argument("--game", default="-", help="JSON file, '-' for stdin")
    s.add_argument("--inverse", action="store_true")
    s.add_argument("--float", action="store_true")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("check", help="decide a property of a game")
    s.add_argument("--game", default="-")
    s.add_argument("--property", choices=PROPERTIES, required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--bound", type=int, help="largest k for infinite monotonicity (default |L|-2)")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("valuations", help="solution space of the valuation equations")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--fix-bottom-zero", action="store_true")
    s.set_defaults(func=cmd_valuations)

    s = sub.add_parser("gen", help="generate a game")
    s.add_argument("kind", choices=("unanimity", "minitive", "counterexample", "random"))
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--element", help="unanimity: the generating element")
    s.add_argument("--chain", nargs="+", help="minitive: chain elements")
    s.add_argument("--masses", nargs="+", help="minitive: masses, one per chain element")
    s.add_argument("--alpha", default=rational_str(g.COUNTEREXAMPLE_ALPHA))
    s.add_argument("--beta", default=rational_str(g.COUNTEREXAMPLE_BETA))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--mode", choices=g.RANDOM_MODES, default="uniform_values")
    s.add_argument("--float", action="store_true")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("export", help="Hasse diagram as DOT or JSON")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--format", choices=("dot", "json"), default="dot")
    s.set_defaults(func=cmd_export)
    return p


def run(argv: Sequence[str] | None = None, out: TextIO | None = None,
        stdin: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    stdin = stdin or sys.stdin
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "gen":
        need = {"unanimity": ("element",), "minitive": ("chain", "masses")}.get(args.kind, ())
        missing = [f"--{a}" for a in need if getattr(args, a) is None]
        if missing:
            err.write(f"embedlattice: error: gen {args.kind} needs {', '.join(missing)}\n")
            return 2
    try:
        return args.func(args, out, stdin)
    except (ValueError, OSError) as exc:
        # every validation error in the package derives from ValueError
        err.write(f"embedlattice: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
