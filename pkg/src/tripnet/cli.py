"""Command line entry point: ``tripnet build | check | height``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .consistency import inconsistent_triplets, level, reticulation_count
from .distance import DEFAULT_TOL, qot_triplets
from .io import emit_dot, emit_enewick, format_triplets, parse_enewick, parse_matrix, parse_triplets
from .model import network_problems
from .pair_graph import build_pair_graph, dag_height, make_dag
from .reticulation import InternalError, SpeedMode, run_tripnet

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load_triplets(args):
    if args.triplets:
        return parse_triplets(_read(args.triplets))
    d = parse_matrix(_read(args.matrix))
    if not args.outgroup:
        raise ValueError("--matrix requires --outgroup")
    return qot_triplets(d, args.outgroup, args.tol)


def cmd_build(args) -> int:
    triplets = _load_triplets(args)
    if args.debug_pair_graph:
        Path(args.debug_pair_graph).write_text(build_pair_graph(triplets).to_dot())
    result = run_tripnet(triplets, SpeedMode(args.speed, args.seed))
    net = result.network
    problems = network_problems(net)
    missing = inconsistent_triplets(net, triplets)
    if problems or missing:
        raise InternalError(f"output network invalid: {problems} / {len(missing)} triplets not displayed")
    sys.stdout.write(emit_dot(net) if args.out == "dot" else emit_enewick(net) + "\n")
    if args.stats:
        print(
            f"taxa={len(net.taxa)} triplets={len(triplets)} removed_edges={len(result.removed_edges)} "
            f"reticulations={reticulation_count(net)} level={level(net)} "
            f"consistent={len(triplets) - len(missing)}/{len(triplets)}",
            file=sys.stderr,
        )
    if args.trace:
        for line in result.trace:
            print(line, file=sys.stderr)
    return EXIT_OK


def cmd_check(args) -> int:
    net = parse_enewick(_read(args.network))
    triplets = parse_triplets(_read(args.triplets))
    missing = inconsistent_triplets(net, triplets)
    print(f"consistent {len(triplets) - len(missing)}/{len(triplets)}")
    if missing:
        print("inconsistent:")
        sys.stdout.write(format_triplets(missing))
    return EXIT_OK


def cmd_height(args) -> int:
    triplets = _load_triplets(args)
    graph = build_pair_graph(triplets)
    if args.debug_pair_graph:
        Path(args.debug_pair_graph).write_text(graph.to_dot())
    dag, removed = make_dag(graph)
    h = dag_height(dag)
    for (a, b), v in h.items():
        print(f"{a} {b} {v}")
    if removed:
        print(f"removed {len(removed)} pair-graph edges", file=sys.stderr)
    return EXIT_OK


def _add_input(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--triplets", help="triplet file, one 'A B | C' per line ('-' for stdin)")
    src.add_argument("--matrix", help="PHYLIP distance matrix; triplets come from quartets with the outgroup")
    p.add_argument("--outgroup", help="outgroup taxon for --matrix")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="four-point tolerance (absolute)")
    p.add_argument("--debug-pair-graph", metavar="PATH", help="write the pair graph as DOT")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tripnet", description="Rooted phylogenetic networks from triplets.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a network")
    _add_input(b)
    b.add_argument("--speed", choices=("slow", "normal", "fast"), default="slow")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", choices=("enewick", "dot"), default="enewick")
    b.add_argument("--stats", action="store_true", help="one-line summary on stderr")
    b.add_argument("--trace", action="store_true", help="step trace on stderr")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("check", help="count triplets displayed by a network")
    c.add_argument("--network", required=True, help="eNewick file")
    c.add_argument("--triplets", required=True)
    c.set_defaults(func=cmd_check)

    h = sub.add_parser("height", help="print the height function from the pair graph")
    _add_input(h)
    h.set_defaults(func=cmd_height)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
