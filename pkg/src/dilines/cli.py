"""Command-line entry point.

Exit status: 0 on success (or when a claim holds), 2 when a check or a
verification finds a counterexample, 1 on usage and input errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

from .canonical import canonical_form
from .core import (
    Digraph,
    DigraphFormatError,
    complete_bipartite,
    cycle_graph,
    directed_cycle,
    parse_digraph,
    read_catalog,
    serialize_digraph,
)
from .proofcheck import CLAIMS, run_claim
from .quasimetric import NotStronglyConnected, line_set, structural_profile
from .search import (
    CLAIM_IDS,
    ClassConstraint,
    SearchSpec,
    Tri,
    default_jobs,
    enumerate_levels,
    hunt,
    verify_claim,
)

EXIT_OK, EXIT_USAGE, EXIT_COUNTEREXAMPLE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _known_names() -> dict[str, str]:
    named = {
        "directed triangle": directed_cycle(3),
        "oriented 4-cycle": directed_cycle(4),
        "C4": cycle_graph(4),
        "K_{2,3}": complete_bipartite(2, 3),
    }
    return {serialize_digraph(canonical_form(g)): name for name, g in named.items()}


def _load_inputs(items: Sequence[str]) -> list[Digraph]:
    graphs: list[Digraph] = []
    for item in items:
        if item == "-":
            graphs.extend(read_catalog(sys.stdin.read().splitlines()))
        elif Path(item).is_file():
            graphs.extend(read_catalog(item))
        else:
            try:
                graphs.append(parse_digraph(item))
            except DigraphFormatError as exc:
                raise UsageError(f"bad digraph {item!r}: {exc}") from None
    if not graphs:
        raise UsageError("no digraphs given")
    return graphs


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_props(args) -> int:
    fields = ("digraph", "strongly_connected", "diameter", "directed_girth", "oriented",
              "graph_symmetric", "bridgeless", "bipartition")
    if args.format == "tsv":
        print("\t".join(fields))
    for g in _load_inputs(args.inputs):
        p = structural_profile(g)
        parts = "-" if p.bipartition is None else (
            f"X={sorted(p.bipartition.X)} Y={sorted(p.bipartition.Y)} p={p.bipartition.p} q={p.bipartition.q}")
        girth = "acyclic" if p.directed_girth is None else p.directed_girth
        diam = "-" if p.diameter is None else p.diameter
        if args.format == "tsv":
            print("\t".join(map(str, (g, int(p.strongly_connected), diam, girth, int(p.oriented),
                                      int(p.graph_symmetric), int(p.bridgeless), parts))))
            continue
        print(g)
        print(f"  strongly connected: {_yes(p.strongly_connected)}")
        print(f"  diameter: {diam}")
        print(f"  directed girth: {girth}")
        print(f"  oriented: {_yes(p.oriented)}")
        print(f"  graph (symmetric): {_yes(p.graph_symmetric)}")
        print(f"  bridgeless: {_yes(p.bridgeless)}" + ("" if p.bridgeless else " (bridges present)"))
        print(f"  bipartite: {parts if p.bipartition else 'no'}")
    return EXIT_OK


def _fmt_line(members) -> str:
    return "{" + ",".join(map(str, sorted(members))) + "}"


def cmd_lines(args) -> int:
    for g in _load_inputs(args.inputs):
        try:
            ls = line_set(g)
        except NotStronglyConnected as exc:
            raise UsageError(f"{g}: not strongly connected ({exc})") from None
        verdict = "THIN" if ls.thin else "NOT THIN"
        if args.format == "tsv":
            print(f"{g}\t{ls.count}\t{ls.universal_count}\t{verdict}\t"
                  + " ".join(_fmt_line(m) for m in ls.lines))
            continue
        print(g)
        for members in ls.lines:
            print(f"  {_fmt_line(members)}")
        print(f"  count: {ls.count}  (universal: {ls.universal_count}, vertices: {g.n})")
        print(f"  verdict: {verdict}")
    return EXIT_OK


def cmd_check(args) -> int:
    if args.list:
        for cid, (desc, _) in CLAIMS.items():
            print(f"{cid}\t{desc}")
        return EXIT_OK
    if not args.claim:
        raise UsageError("check: a claim id is required (see check --list)")
    if args.claim not in CLAIMS:
        raise UsageError(f"check: unknown claim id {args.claim!r} (see check --list)")
    status = EXIT_OK
    for g in _load_inputs(args.inputs):
        try:
            verdict = run_claim(args.claim, g)
        except NotStronglyConnected as exc:
            raise UsageError(f"{g}: not strongly connected ({exc})") from None
        line = f"{g}\t{args.claim}\t{verdict.status}"
        if verdict.note:
            line += f"\t{verdict.note}"
        print(line)
        for witness in verdict.violations:
            print(f"  witness: {witness}")
        if not verdict.holds:
            status = EXIT_COUNTEREXAMPLE
    return status


_CLASSES = {
    "any": ClassConstraint(),
    "oriented": ClassConstraint(oriented=Tri.REQUIRE),
    "graph": ClassConstraint(graph_symmetric=Tri.REQUIRE),
    "bipartite": ClassConstraint(bipartite=Tri.REQUIRE),
}


def _write_catalog(path: str, header: Sequence[str], witnesses: Sequence[str]) -> None:
    names = _known_names()
    lines = [f"# {h}" for h in header]
    for w in witnesses:
        note = f"  # canonical, n={w.split(':')[0]}"
        if w in names:
            note += f", {names[w]}"
        lines.append(w + note)
    Path(path).write_text("\n".join(lines) + "\n")


def cmd_enumerate(args) -> int:
    cls = _CLASSES[args.cls]
    n_min = args.n_min if args.n_min is not None else args.n_max
    if n_min > args.n_max:
        raise UsageError("enumerate: --n-min exceeds --n-max")
    for n, level in enumerate_levels(args.n_max, cls, connected=args.connected, jobs=args.jobs):
        if n < n_min:
            continue
        if args.count:
            print(f"{n}\t{len(level)}")
        else:
            for g in level:
                print(g)
    return EXIT_OK


def _spec_from_args(args) -> SearchSpec:
    if args.diameter is not None and args.diameter_max is not None:
        raise UsageError("use either --diameter or --diameter-max")
    diameter = args.diameter if args.diameter is not None else (
        (1, args.diameter_max) if args.diameter_max is not None else None)
    try:
        return SearchSpec(
            n_min=args.n_min,
            n_max=args.n_max,
            cls=_CLASSES[args.cls],
            diameter=diameter,
            require_bridgeless=Tri.REQUIRE if args.bridgeless else Tri.IGNORE,
            girth_min=args.girth_min,
            predicate=args.predicate,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_hunt(args) -> int:
    spec = _spec_from_args(args)
    report = hunt(spec, jobs=args.jobs)
    names = _known_names()
    print(report.table(args.format))
    if args.format != "tsv":
        print(f"witnesses found at n <= {spec.n_max}: {len(report.witnesses)}")
        for w in report.witnesses:
            print(f"  {w}" + (f"  ({names[w]})" if w in names else ""))
    if args.out:
        _write_catalog(args.out, [f"hunt {spec.describe()}", f"witnesses found at n <= {spec.n_max}"], report.witnesses)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        verdict = verify_claim(args.claim, args.n_max, deep=args.deep, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    names = _known_names()
    print(f"claim: {verdict.claim_id}  (n <= {verdict.n_max}{', deep' if args.deep else ''})")
    if verdict.report is not None:
        print(verdict.report.table(args.format))
    for line in verdict.details:
        print(line)
    shown = [names.get(w, w) for w in verdict.found_witnesses]
    print("witnesses: " + (", ".join(shown) if shown else "none"))
    print("expected: " + (", ".join(names.get(w, w) for w in verdict.expected_witnesses) or "none"))
    if args.deep or verdict.deep_checked:
        print(f"claim checks run on {verdict.deep_checked} instances, violations: {len(verdict.violations)}")
    for w in verdict.counterexamples:
        print(f"counterexample: {w}")
    for g, item in verdict.violations[:50]:
        print(f"  violation: {g} {item}")
    print("verdict: " + ("HOLDS" if verdict.holds else "FAILS"))
    if args.out:
        _write_catalog(args.out, [f"verify {verdict.claim_id} n_max={verdict.n_max}",
                                  f"witnesses found at n <= {verdict.n_max}"], verdict.found_witnesses)
    return EXIT_OK if verdict.holds else EXIT_COUNTEREXAMPLE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dilines", description="Lines in digraph quasi-metric spaces.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_format(p):
        p.add_argument("--format", choices=("text", "tsv"), default="text")

    p = sub.add_parser("props", help="structural profile of digraphs")
    p.add_argument("inputs", nargs="+", help="compact strings, catalog files or '-'")
    add_format(p)
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("lines", help="distinct lines and thinness")
    p.add_argument("inputs", nargs="+")
    add_format(p)
    p.set_defaults(func=cmd_lines)

    p = sub.add_parser("check", help="run one claim check on digraphs")
    p.add_argument("--list", action="store_true", help="list claim ids")
    p.add_argument("claim", nargs="?")
    p.add_argument("inputs", nargs="*")
    p.set_defaults(func=cmd_check)

    def add_search(p, n_max_default):
        p.add_argument("--n-min", type=int, default=None if p.prog.endswith("enumerate") else 3)
        p.add_argument("--n-max", type=int, default=n_max_default)
        p.add_argument("--class", dest="cls", choices=tuple(_CLASSES), default="any")
        p.add_argument("--jobs", type=int, default=default_jobs())

    p = sub.add_parser("enumerate", help="list isomorphism class representatives")
    add_search(p, 4)
    p.add_argument("--connected", action="store_true", help="weakly connected classes only")
    p.add_argument("--count", action="store_true", help="print per-n counts only")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("hunt", help="exhaustive search for thin digraphs")
    add_search(p, 5)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--diameter", type=int)
    group.add_argument("--diameter-max", type=int)
    p.add_argument("--bridgeless", action="store_true")
    p.add_argument("--girth-min", type=int)
    p.add_argument("--predicate", choices=("thin", "not-thin", "all"), default="thin")
    p.add_argument("--out")
    add_format(p)
    p.set_defaults(func=cmd_hunt)

    p = sub.add_parser("verify", help="verify a classification theorem exhaustively")
    p.add_argument("claim", choices=CLAIM_IDS)
    p.add_argument("--n-max", type=int)
    p.add_argument("--deep", action="store_true", help="also run the claim checks on every instance")
    p.add_argument("--jobs", type=int, default=default_jobs())
    p.add_argument("--out")
    add_format(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DigraphFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
