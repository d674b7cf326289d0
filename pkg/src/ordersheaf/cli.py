"""Command-line entry point: ``ordersheaf <command> ...``.

Data goes to stdout, diagnostics to stderr. Exit codes: 0 a global section
exists, 2 some edge is obstructed, 3 some merged vertex has an empty stalk,
64 usage error, 65 invalid document, 74 I/O failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import bench, mallows
from .catalog import EXAMPLES, TOPOLOGIES, catalog_example, catalog_topology
from .document import DocumentError, emit_profile, parse_profile
from .errors import SheafError
from .obstruction import omega1
from .pushforward import QuotientMap, pushforward_report
from .reports import (
    bench_csv,
    committee_csv,
    family_csv,
    interpolation_csv,
    obstruction_to_csv,
    obstruction_to_dict,
    pushforward_to_dict,
    uniform_csv,
)

EXIT_OK, EXIT_OBSTRUCTED, EXIT_EMPTY_STALK = 0, 2, 3
EXIT_USAGE, EXIT_DATAERR, EXIT_IOERR = 64, 65, 74


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def verdict_exit_code(h0_exists: bool, empty_stalks: bool) -> int:
    if empty_stalks:
        return EXIT_EMPTY_STALK
    return EXIT_OK if h0_exists else EXIT_OBSTRUCTED


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _parse_merge(specs: Sequence[str]) -> dict[str, list[str]]:
    """``V1+V2=V12`` merges V1 and V2 into a vertex named V12."""
    groups = {}
    for spec in specs:
        members, _, name = spec.partition("=")
        parts = [m for m in members.split("+") if m]
        if not parts:
            raise UsageError(f"bad --merge value {spec!r}")
        groups[name or "+".join(parts)] = parts
    return groups


def cmd_analyze(args: argparse.Namespace) -> int:
    sheaf, profile, _ = parse_profile(_read(args.file))
    report = omega1(sheaf, profile)
    if args.csv:
        sys.stdout.write(obstruction_to_csv(sheaf, report))
    else:
        json.dump(obstruction_to_dict(sheaf, report), sys.stdout, indent=2)
        sys.stdout.write("\n")
    return verdict_exit_code(report.h0_exists, bool(report.empty_stalk_vertices))


def cmd_pushforward(args: argparse.Namespace) -> int:
    sheaf, profile, quotient = parse_profile(_read(args.file))
    if args.merge:
        quotient = QuotientMap.merging(sheaf.graph, _parse_merge(args.merge))
    if quotient is None:
        raise UsageError("document has no quotient; add one or pass --merge")
    report = pushforward_report(quotient, sheaf, profile)
    json.dump(pushforward_to_dict(report), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return verdict_exit_code(report.h0_exists, bool(report.empty_stalk_vertices))


def cmd_example(args: argparse.Namespace) -> int:
    sheaf, profile = catalog_example(args.name, args.t)
    quotient = None
    if args.merge:
        quotient = QuotientMap.merging(sheaf.graph, _parse_merge(args.merge))
    sys.stdout.write(emit_profile(sheaf, profile, quotient))
    return EXIT_OK


def cmd_interpolate(args: argparse.Namespace) -> int:
    results = mallows.run_interpolation(mallows.default_grid(args.grid), args.trials, args.seed)
    sys.stdout.write(interpolation_csv(results))
    return EXIT_OK


def cmd_family(args: argparse.Namespace) -> int:
    sys.stdout.write(family_csv(mallows.run_deterministic_family(mallows.default_grid(args.grid))))
    return EXIT_OK


def cmd_uniform(args: argparse.Namespace) -> int:
    names = TOPOLOGIES if args.topology == "all" else (args.topology,)
    rows = [
        (name, len(catalog_topology(name).edges), mallows.run_uniform_experiment(name, args.trials, args.seed))
        for name in names
    ]
    sys.stdout.write(uniform_csv(rows))
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    if args.kind == "alternatives":
        out = bench_csv(bench.bench_alternatives(
            args.sizes or (6, 8, 10, 12), args.voters or 5, args.trials, args.seed,
            naive_trials=args.naive_trials,
        ))
    elif args.kind == "merge":
        out = bench_csv(bench.bench_merge_size(
            args.sizes or (3, 5, 10, 20, 50), args.alternatives or 8, args.trials, args.seed,
            identical_voters=args.identical,
        ))
    else:
        out = committee_csv([
            bench.committee_scenario(
                args.voters or 50, args.alternatives or 8, args.edge_prob, args.merge_size, args.seed + k
            )
            for k in range(args.runs)
        ])
    sys.stdout.write(out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ordersheaf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="obstruction locus of a profile document")
    p.add_argument("file", help="profile document, or - for stdin")
    p.add_argument("--csv", action="store_true", help="per-edge CSV table instead of JSON")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("pushforward", help="stalks and obstructions after merging voters")
    p.add_argument("file", help="profile document, or - for stdin")
    p.add_argument("--merge", action="append", metavar="V1+V2=NAME",
                   help="merge voters (overrides the document's quotient); repeatable")
    p.set_defaults(func=cmd_pushforward)

    p = sub.add_parser("example", help="print a catalog configuration as a document")
    p.add_argument("name", choices=EXAMPLES)
    p.add_argument("--t", type=float, default=0.0, help="parameter for deterministic_family")
    p.add_argument("--merge", action="append", metavar="V1+V2=NAME", help="attach a quotient")
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("interpolate", help="Mallows interpolation experiment (CSV)")
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", type=int, default=21, help="number of evenly spaced t values")
    p.set_defaults(func=cmd_interpolate)

    p = sub.add_parser("family", help="deterministic family experiment (CSV)")
    p.add_argument("--grid", type=int, default=21)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("uniform", help="uniform random profiles on a topology (CSV)")
    p.add_argument("--topology", choices=(*TOPOLOGIES, "all"), default="K3")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_uniform)

    p = sub.add_parser("bench", help="scaling experiments (CSV)")
    p.add_argument("kind", choices=("alternatives", "merge", "committee"))
    p.add_argument("--sizes", type=_ints, help="comma-separated |A| or |P| values")
    p.add_argument("--voters", type=int, help="voters per merge, or committee size")
    p.add_argument("--alternatives", type=int)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--naive-trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--identical", action="store_true", help="merge bench with identical voters")
    p.add_argument("--edge-prob", type=float, default=0.15)
    p.add_argument("--merge-size", type=int, default=5)
    p.add_argument("--runs", type=int, default=1, help="committee runs with consecutive seeds")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ordersheaf: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DocumentError as exc:
        print(json.dumps(exc.to_dict()), file=sys.stderr)
        return EXIT_DATAERR
    except SheafError as exc:
        print(f"ordersheaf: {exc}", file=sys.stderr)
        return EXIT_DATAERR
    except OSError as exc:
        print(f"ordersheaf: {exc}", file=sys.stderr)
        return EXIT_IOERR


if __name__ == "__main__":
    sys.exit(main())
