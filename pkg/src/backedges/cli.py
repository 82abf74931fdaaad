"""Command-line front end.

Subcommands: catalog, enumerate, backedges, optimal-numbering,
forest-numbering, contains, purepair, certificate, blockade, construct,
verify.  Objects are written in the package's textual formats; positions
and vertices print 1-based.  Exit codes: 0 success / all checks pass,
1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .blockade import Blockade, is_support_uniform
from .catalog import catalog
from .construct import ConstructionParams, build_counterexample
from .core import Numbering, OrderedGraph, Tournament, backedge_graph
from .enumeration import all_tournaments, backedge_census
from .errors import BackedgesError
from .numbering import forest_numbering, min_backedge_numbering
from .patterns import find_srseh_certificate, verify_certificate
from .report import emit, jsonable
from .search import contains_ordered, contains_subtournament, greedy_pure_pair, max_pure_pair
from .suites import SUITE_NAMES, run_suite
from .textio import (
    emit_blockade_text,
    emit_ordered_text,
    emit_tournament_text,
    parse_blockade_text,
    resolve,
)


def _one_line(text: str) -> str:
    return " ".join(text.split())


def _out(args, data: bytes):
    sys.stdout.write(data.decode())


def cmd_catalog(args) -> int:
    obj = catalog(args.name)
    _out(args, emit(obj, args.format))
    return 0


def cmd_enumerate(args) -> int:
    for t in all_tournaments(args.vertices):
        sys.stdout.write(_one_line(emit_tournament_text(t)) + "\n")
    return 0


def cmd_backedges(args) -> int:
    t = resolve(args.tournament)
    if not isinstance(t, Tournament):
        raise BackedgesError("backedges expects a tournament")
    for b in backedge_census(t):
        sys.stdout.write(_one_line(emit_ordered_text(b)) + "\n")
    return 0


def _print_numbering(t: Tournament, nu: Numbering):
    perm = " ".join(str(v + 1) for v in nu.perm)
    edges = sorted((p + 1, q + 1) for p, q in backedge_graph(t, nu).edges)
    sys.stdout.write(f"numbering {perm}\n")
    sys.stdout.write("backedges " + " ".join(f"{p}-{q}" for p, q in edges) + "\n")


def cmd_optimal_numbering(args) -> int:
    t = resolve(args.tournament)
    result = min_backedge_numbering(t)
    _print_numbering(t, result.numbering)
    sys.stdout.write(f"count {result.backedge_count}\n")
    return 0


def cmd_forest_numbering(args) -> int:
    t = resolve(args.tournament)
    nu = forest_numbering(t)
    if nu is None:
        sys.stdout.write("none\n")
        return 1
    _print_numbering(t, nu)
    return 0


def cmd_contains(args) -> int:
    host = resolve(args.host)
    pattern = resolve(args.pattern)
    if isinstance(host, Tournament) and isinstance(pattern, Tournament):
        found = contains_subtournament(host, pattern)
        witness = (
            None
            if found is None
            else [found[v] + 1 for v in sorted(found)]
        )
    elif isinstance(host, OrderedGraph) and isinstance(pattern, OrderedGraph):
        found = contains_ordered(host, pattern)
        witness = None if found is None else [p + 1 for p in found]
    else:
        raise BackedgesError("host and pattern must be of the same kind")
    if witness is None:
        sys.stdout.write("none\n")
        return 1
    sys.stdout.write(" ".join(str(v) for v in witness) + "\n")
    return 0


def cmd_purepair(args) -> int:
    t = resolve(args.tournament)
    if not isinstance(t, Tournament):
        raise BackedgesError("purepair expects a tournament")
    if args.exact or t.n <= 24:
        pair = max_pure_pair(t)
        mode = "exact"
    else:
        pair = greedy_pure_pair(t)
        mode = "heuristic"
    if pair is None:
        sys.stdout.write("none\n")
        return 1
    side_a = " ".join(str(v + 1) for v in sorted(pair.side_a))
    side_b = " ".join(str(v + 1) for v in sorted(pair.side_b))
    sys.stdout.write(f"order {pair.order} ({mode})\nA: {side_a}\nB: {side_b}\n")
    return 0


def cmd_certificate(args) -> int:
    t = resolve(args.tournament)
    cert = find_srseh_certificate(t, budget=args.budget or 2_000_000)
    if cert is None:
        sys.stdout.write(json.dumps({"certified": False}) + "\n")
        return 1
    defects = verify_certificate(t, cert)
    doc = {
        "certified": not defects,
        "defects": defects,
        "numberings": [[v + 1 for v in nu.perm] for nu in cert.numberings],
        "graphs": [_one_line(emit_ordered_text(g)) for g in cert.graphs],
        "components": [
            [[p + 1 for p in comp] for comp in g.components] for g in cert.graphs
        ],
        "assignment": {
            ",".join(map(str, choice)): template
            for choice, template in sorted(cert.assignment.items())
        },
    }
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    return 0 if not defects else 1


def cmd_blockade(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        blocks = parse_blockade_text(fh.read())
    host = resolve(args.host) if args.host else None
    host_size = host.n if host is not None else 1 + max(max(b) for b in blocks)
    b = Blockade(host_size, blocks)
    doc = {
        "length": b.length,
        "width": b.width,
        "respectful": b.respectful,
    }
    if host is not None and args.tau:
        if not isinstance(host, OrderedGraph):
            raise BackedgesError("support uniformity needs an ordered-graph host")
        res = is_support_uniform(host, b, args.tau)
        doc["support_uniform"] = res.uniform
        if not res.uniform:
            doc["violating_pattern"] = _one_line(emit_ordered_text(res.violating_pattern))
            doc["violating_support"] = list(res.violating_support)
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    return 0


def cmd_construct(args) -> int:
    params = ConstructionParams(args.k, Fraction(args.c), args.width, args.seed)
    result = build_counterexample(params, strict=False, retries=args.budget or 5)
    if args.emit == "dot":
        _out(args, emit(result.graph, "dot"))
        _out(args, emit(result.tournament, "dot"))
        return 0 if result.report.all_passed else 1
    doc = {
        "params": {
            "k": params.k,
            "c": str(params.c),
            "width": params.width,
            "seed": params.seed,
            "n": params.n,
            "girth_bound": params.g,
            "degree_bound": params.d,
            "closure_degree_bound": str(params.degree_cap),
            "p_nominal": float(params.p_nominal),
        },
        "start_graph": _one_line(emit_ordered_text(result.start_graph)),
        "graph": _one_line(emit_ordered_text(result.graph)),
        "blockade": emit_blockade_text(result.blockade.blocks).splitlines(),
        "tournament": _one_line(emit_tournament_text(result.tournament)),
        "closure_added": {str(k): v for k, v in result.report.closure_added.items()},
        "checks": {
            name: {"status": status, "details": details}
            for name, (status, details) in result.report.checks.items()
        },
        "sampling": jsonable(vars(result.report.girth)),
    }
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    return 0 if result.report.all_passed else 1


def cmd_verify(args) -> int:
    names = SUITE_NAMES if args.suite == "all" else (args.suite,)
    all_ok = True
    payload = b""
    for name in names:
        report = run_suite(name, seed=args.seed, jobs=args.jobs)
        all_ok &= report.passed
        payload += emit(report, args.format, timings=args.timings)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload.decode())
    return 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", default="text", choices=("text", "json", "dot"))
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--budget", type=int, default=None)
    common.add_argument(
        "--timings", action="store_true", help="include wall-clock times in reports"
    )
    parser = argparse.ArgumentParser(
        prog="backedges",
        description="exact combinatorics of tournaments and their backedge graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add_parser("catalog", help="print a named object")
    p.add_argument("name")
    p.set_defaults(fn=cmd_catalog)

    p = add_parser("enumerate", help="all tournament classes of a given order")
    p.add_argument("--vertices", type=int, required=True)
    p.set_defaults(fn=cmd_enumerate)

    p = add_parser("backedges", help="census of distinct backedge graphs")
    p.add_argument("tournament")
    p.set_defaults(fn=cmd_backedges)

    p = add_parser("optimal-numbering", help="minimum-backedge numbering")
    p.add_argument("tournament")
    p.set_defaults(fn=cmd_optimal_numbering)

    p = add_parser("forest-numbering", help="numbering with acyclic backedges")
    p.add_argument("tournament")
    p.set_defaults(fn=cmd_forest_numbering)

    p = add_parser("contains", help="induced containment witness")
    p.add_argument("host")
    p.add_argument("pattern")
    p.set_defaults(fn=cmd_contains)

    p = add_parser("purepair", help="largest pure pair")
    p.add_argument("tournament")
    p.add_argument("--exact", action="store_true")
    p.set_defaults(fn=cmd_purepair)

    p = add_parser("certificate", help="search a pure-pair certificate")
    p.add_argument("tournament")
    p.set_defaults(fn=cmd_certificate)

    p = add_parser("blockade", help="validate a blockade file")
    p.add_argument("file")
    p.add_argument("--host", default=None)
    p.add_argument("--tau", type=int, default=0)
    p.set_defaults(fn=cmd_blockade)

    p = add_parser("construct", help="randomized construction with verification")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--c", required=True, help="target constant, e.g. 1/3")
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--emit", default="json", choices=("json", "dot"))
    p.set_defaults(fn=cmd_construct)

    p = add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITE_NAMES + ("all",))
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except BackedgesError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
