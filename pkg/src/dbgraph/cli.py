"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 malformed input under ``--strict``,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Iterable, Iterator

from . import __version__
from .constructions import (
    WGraphSpec,
    build_complete_bipartite,
    build_cycle,
    build_hypercube,
    build_w_graph,
)
from .decomposition import (
    analyze_minimal_2cut,
    build_layers,
    check_distance3_layers,
    check_end_layer_distance,
    check_edge_class_counts,
    classify_edges,
    match_w_graph,
)
from .errors import GraphError, MalformedRecord, StructureViolation, UnsupportedOrder
from .graph_core import Graph, decode_graph6, encode_graph6, read_graph6_lines
from .metric import all_pairs_distances
from .properties import (
    is_distance_balanced,
    is_partial_cube,
    is_strongly_distance_balanced,
    vertex_connectivity,
)
from .scanner import FilterSyntaxError, InvariantViolation, ScanFailure, default_jobs, parse_filter, scan_stream
from .verify import verify_suite

EXIT_OK, EXIT_USAGE, EXIT_MALFORMED, EXIT_INVARIANT = 0, 1, 2, 3

log = logging.getLogger("dbgraph")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class UsageError(Exception):
    pass


def _records(paths: list[str]) -> Iterator[str]:
    if not paths:
        yield from read_graph6_lines(sys.stdin)
        return
    for path in paths:
        if path == "-":
            yield from read_graph6_lines(sys.stdin)
            continue
        try:
            with open(path, encoding="ascii", errors="replace") as fh:
                yield from read_graph6_lines(fh)
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}") from exc


def _decoded(paths: list[str], state: dict) -> Iterator[tuple[int, str, Graph]]:
    for index, text in enumerate(_records(paths)):
        try:
            yield index, text, decode_graph6(text)
        except (MalformedRecord, UnsupportedOrder) as exc:
            state["malformed"] += 1
            log.warning("record %d skipped: %s", index, exc)


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, separators=(",", ":")) + "\n")


# -- subcommands -------------------------------------------------------------


def cmd_check(args, state) -> int:
    predicate = args.predicate or "db"
    for index, text, g in _decoded(args.inputs, state):
        out = {"record_index": index, "graph6": text, "predicate": predicate}
        try:
            if predicate == "connectivity":
                out["vertex_connectivity"] = vertex_connectivity(g)
            else:
                dm = all_pairs_distances(g)
                fn = {"db": is_distance_balanced, "sdb": is_strongly_distance_balanced,
                      "pcube": is_partial_cube}[predicate]
                verdict = fn(g, dm)
                out["holds"] = verdict.holds
                out["witness"] = verdict.witness
        except GraphError as exc:
            out["error"] = str(exc)
        _emit(out)
    return EXIT_OK


def analysis_report(g: Graph) -> dict:
    """Full decomposition report for one graph, as a JSON-ready dict."""
    dm = all_pairs_distances(g)
    report: dict = {"order": g.order, "size": g.size}
    try:
        an = analyze_minimal_2cut(g, dm)
    except GraphError as exc:
        report["error"] = f"{type(exc).__name__}: {exc}"
        return report
    report.update(
        distance_balanced=is_distance_balanced(g, dm).holds,
        a=an.a,
        b=an.b,
        cut_distance=an.cut_distance,
        component_sizes=[len(c) for c in an.components],
        good_vertices=sorted(an.good_vertices),
        pure_split=an.pure_split,
        bad_component=sorted(an.bad_component) if an.pure_split else None,
        good_component=sorted(an.good_component) if an.pure_split else None,
    )
    if not an.pure_split:
        return report
    try:
        layers = build_layers(g, an, dm)
        classes = classify_edges(g, an, layers)
    except StructureViolation as exc:
        report["structure_violation"] = str(exc)
        return report
    report.update(
        m=layers.m,
        B=[sorted(x) for x in layers.B],
        t=layers.t,
        D=[sorted(x) for x in layers.D],
        tilde_ab=layers.tilde_ab,
        bad_on_geodesics=layers.on_geodesics,
        horizontal_edges=sum(c.kind == "horizontal" for c in classes),
        vertical_edges=sum(c.kind == "vertical" for c in classes),
    )
    checks = {"end_layers_distance": check_end_layer_distance(dm, layers, an)}
    try:
        checks["edge_class_counts"] = check_edge_class_counts(g, dm, an, layers, classes)
    except StructureViolation as exc:
        report["structure_violation"] = str(exc)
    if an.cut_distance == 3:
        checks["distance_3_layers"] = check_distance3_layers(g, an, layers)
    report["checks"] = {k: {"holds": v.holds, "witness": v.witness} for k, v in checks.items()}
    spec = match_w_graph(g, an, layers, iso_cap=max(64, g.order))
    report["w_graph"] = [spec.m, spec.ell] if spec else None
    return report


def cmd_analyze(args, state) -> int:
    for index, text, g in _decoded(args.inputs, state):
        out = {"record_index": index, "graph6": text}
        out.update(analysis_report(g))
        _emit(out)
    return EXIT_OK


def cmd_construct(args, state) -> int:
    family = args.family
    need = {"w": ("m", "ell"), "cycle": ("n",), "hypercube": ("d",), "kpq": ("p", "q")}[family]
    missing = [k for k in need if getattr(args, k) is None]
    if missing:
        raise UsageError(f"--family {family} needs " + ", ".join("--" + k for k in missing))
    if family == "w":
        g = build_w_graph(WGraphSpec(args.m, args.ell))
    elif family == "cycle":
        g = build_cycle(args.n)
    elif family == "hypercube":
        g = build_hypercube(args.d)
    else:
        g = build_complete_bipartite(args.p, args.q)
    if args.format == "graph6":
        print(encode_graph6(g))
    else:
        print(g.order, g.size)
        for u, v in g.edges():
            print(u, v)
    return EXIT_OK


_TABLE_COLUMNS = [
    ("record_index", "idx"), ("order", "n"), ("size", "m"), ("connected", "conn"),
    ("bipartite", "bip"), ("min_degree", "mindeg"), ("distance_balanced", "db"),
    ("strongly_db", "sdb"), ("partial_cube", "pcube"), ("vertex_connectivity", "kappa"),
    ("cut_distance", "cutd"), ("candidate", "cand"), ("graph6", "graph6"),
]


def _cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "y" if value else "n"
    return str(value)


def cmd_scan(args, state) -> int:
    try:
        predicate = parse_filter(args.filter) if args.filter else None
    except FilterSyntaxError as exc:
        raise UsageError(f"bad filter: {exc}") from exc

    def on_error(f: ScanFailure):
        state["malformed"] += 1
        log.warning("record %d skipped: %s", f.record_index, f.message)

    reports = scan_stream(_records(args.inputs), predicate, args.jobs or default_jobs(),
                          short_circuit=not args.no_short_circuit, on_error=on_error)
    if args.format == "table":
        print("  ".join(h for _, h in _TABLE_COLUMNS))
        for r in reports:
            print("  ".join(_cell(getattr(r, k)) for k, _ in _TABLE_COLUMNS))
    else:
        for r in reports:
            sys.stdout.write(r.to_json() + "\n")
    return EXIT_OK


def cmd_verify(args, state) -> int:
    results = verify_suite()
    for res in results:
        print(res.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dbgraph", description="Distance-balanced bipartite graph analysis.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    inputs = _Parser(add_help=False)
    inputs.add_argument("inputs", nargs="*", help="graph6 files (default: standard input)")
    inputs.add_argument("--strict", action="store_true", help="exit 2 if any record is malformed")

    p = sub.add_parser("check", parents=[inputs], help="evaluate one predicate per graph")
    group = p.add_mutually_exclusive_group()
    for flag in ("db", "sdb", "pcube", "connectivity"):
        group.add_argument(f"--{flag}", dest="predicate", action="store_const", const=flag)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("analyze", parents=[inputs], help="minimal 2-cut decomposition report")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("construct", help="print a graph from one of the built-in families")
    p.add_argument("--family", required=True, choices=["w", "cycle", "hypercube", "kpq"])
    for name in ("m", "ell", "n", "d", "p", "q"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--format", choices=["graph6", "edgelist"], default="graph6")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("scan", parents=[inputs], help="filter a graph6 stream")
    p.add_argument("--filter", help="e.g. 'bipartite & db & conn=2 & !cycle' or 'candidate'")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: available CPUs)")
    p.add_argument("--format", choices=["jsonl", "table"], default="jsonl")
    p.add_argument("--no-short-circuit", action="store_true", help="evaluate every predicate")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run the structural checks on the built-in corpus")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Iterable[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    if getattr(args, "jobs", None) is not None and args.jobs < 1:
        print("dbgraph: error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    state = {"malformed": 0}
    try:
        code = args.func(args, state)
    except UsageError as exc:
        print(f"dbgraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphError as exc:
        if isinstance(exc, (InvariantViolation, StructureViolation)):
            print(f"dbgraph: invariant violation: {exc}", file=sys.stderr)
            return EXIT_INVARIANT
        print(f"dbgraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"dbgraph: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    sys.stdout.flush()
    if getattr(args, "strict", False) and state["malformed"]:
        return EXIT_MALFORMED
    return code


if __name__ == "__main__":
    sys.exit(main())
