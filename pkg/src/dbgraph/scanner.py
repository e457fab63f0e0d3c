"""Stream filter over graph6 records.

Each record becomes one :class:`ScanReport`.  Reports come back in input
order whatever the number of workers, and cheap predicates are evaluated
first so that expensive ones are skipped only where their value is already
implied (an SDB graph is DB; a partial cube is bipartite).
"""

from __future__ import annotations

import json
import logging
import os
import re
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, Iterator

from .errors import GraphError, MalformedRecord, UnsupportedOrder
from .graph_core import Graph, decode_graph6, is_connected, two_coloring
from .metric import all_pairs_distances
from .properties import (
    is_distance_balanced,
    is_partial_cube,
    is_strongly_distance_balanced,
    minimal_2cut,
    vertex_connectivity,
)

log = logging.getLogger(__name__)


class InvariantViolation(GraphError):
    """A report contradicts a consequence the flags are known to satisfy."""


class FilterSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class ScanReport:
    record_index: int
    graph6: str
    order: int
    size: int
    connected: bool
    bipartite: bool
    min_degree: int
    cycle: bool
    distance_balanced: bool | None
    strongly_db: bool | None
    partial_cube: bool | None
    vertex_connectivity: int | None
    cut_distance: int | None
    candidate: bool
    witness: dict | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))


@dataclass(frozen=True)
class ScanFailure:
    record_index: int
    graph6: str
    message: str


def evaluate_graph(g: Graph, *, short_circuit: bool = True) -> dict:
    """All report flags for one graph.

    Predicates that need a connected graph are ``None`` on disconnected input;
    the vertex connectivity of a disconnected graph is 0.
    """
    n = g.order
    connected = is_connected(g)
    bipartite = two_coloring(g) is not None
    cycle = connected and n >= 3 and all(len(a) == 2 for a in g.adjacency)
    flags = dict(
        connected=connected,
        bipartite=bipartite,
        min_degree=g.min_degree(),
        cycle=cycle,
        distance_balanced=None,
        strongly_db=None,
        partial_cube=None,
        vertex_connectivity=0,
        cut_distance=None,
        candidate=False,
        witness=None,
    )
    if not connected:
        return flags
    dm = all_pairs_distances(g)
    db = is_distance_balanced(g, dm)
    flags["distance_balanced"] = db.holds
    flags["witness"] = db.witness
    if short_circuit and not db.holds:
        flags["strongly_db"] = False
    else:
        flags["strongly_db"] = is_strongly_distance_balanced(g, dm).holds
    if short_circuit and not bipartite:
        flags["partial_cube"] = False
    else:
        flags["partial_cube"] = is_partial_cube(g, dm).holds
    kappa = vertex_connectivity(g)
    flags["vertex_connectivity"] = kappa
    if kappa == 2:
        # K_3 has connectivity 2 by convention but no 2-cut
        cut = minimal_2cut(g, dm)
        flags["cut_distance"] = cut.distance if cut else None
    # a DB graph needs at least two edges before the question is meaningful (K_2 is trivially DB)
    flags["candidate"] = bool(bipartite and db.holds and g.size >= 2 and kappa < 3 and not cycle)
    if flags["candidate"] and (kappa != 2 or flags["min_degree"] < 3):
        raise InvariantViolation(
            f"candidate with connectivity {kappa} and minimum degree {flags['min_degree']}"
        )
    return flags


def analyze_record(index: int, text: str, *, short_circuit: bool = True) -> ScanReport:
    g = decode_graph6(text)
    return ScanReport(index, text, g.order, g.size, **evaluate_graph(g, short_circuit=short_circuit))


# -- filter expressions -----------------------------------------------------

FIELD_ALIASES = {
    "connected": "connected",
    "bipartite": "bipartite",
    "cycle": "cycle",
    "db": "distance_balanced",
    "distance_balanced": "distance_balanced",
    "sdb": "strongly_db",
    "strongly_db": "strongly_db",
    "pcube": "partial_cube",
    "partial_cube": "partial_cube",
    "conn": "vertex_connectivity",
    "kappa": "vertex_connectivity",
    "vertex_connectivity": "vertex_connectivity",
    "cutdist": "cut_distance",
    "cut_distance": "cut_distance",
    "candidate": "candidate",
    "order": "order",
    "n": "order",
    "size": "size",
    "m": "size",
    "mindeg": "min_degree",
    "min_degree": "min_degree",
}

_TOKEN = re.compile(r"\s*(?:(<=|>=|!=|==|=|<|>)|([!&|()])|([A-Za-z_][A-Za-z_0-9]*)|(-?\d+))")
_COMPARE = {
    "=": lambda x, y: x == y,
    "==": lambda x, y: x == y,
    "!=": lambda x, y: x != y,
    "<": lambda x, y: x < y,
    "<=": lambda x, y: x <= y,
    ">": lambda x, y: x > y,
    ">=": lambda x, y: x >= y,
}

Predicate = Callable[[dict], bool]


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            raise FilterSyntaxError(f"unexpected character at offset {pos}: {text[pos:]!r}")
        op, punct, name, num = match.groups()
        if op:
            tokens.append(("op", op))
        elif punct:
            tokens.append((punct, punct))
        elif name:
            tokens.append(("name", name))
        else:
            tokens.append(("int", num))
        pos = match.end()
    return tokens


class _Parser:
    """expr := conj ('|' conj)* ; conj := unary ('&' unary)* ;
    unary := '!' unary | '(' expr ')' | NAME [OP value]"""

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self, kind=None):
        if self.pos >= len(self.tokens):
            raise FilterSyntaxError("unexpected end of filter expression")
        tok = self.tokens[self.pos]
        if kind and tok[0] != kind:
            raise FilterSyntaxError(f"expected {kind}, got {tok[1]!r}")
        self.pos += 1
        return tok

    def parse(self) -> Predicate:
        pred = self.expr()
        if self.pos != len(self.tokens):
            raise FilterSyntaxError(f"trailing input at {self.tokens[self.pos][1]!r}")
        return pred

    def expr(self) -> Predicate:
        parts = [self.conj()]
        while self.peek() == "|":
            self.take()
            parts.append(self.conj())
        return parts[0] if len(parts) == 1 else (lambda r, ps=tuple(parts): any(p(r) for p in ps))

    def conj(self) -> Predicate:
        parts = [self.unary()]
        while self.peek() == "&":
            self.take()
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else (lambda r, ps=tuple(parts): all(p(r) for p in ps))

    def unary(self) -> Predicate:
        kind = self.peek()
        if kind == "!":
            self.take()
            inner = self.unary()
            return lambda r: not inner(r)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        _, name = self.take("name")
        field = FIELD_ALIASES.get(name.lower())
        if field is None:
            raise FilterSyntaxError(f"unknown flag {name!r}")
        if self.peek() != "op":
            return lambda r: bool(r[field])
        _, op = self.take("op")
        kind, raw = self.take()
        if kind == "int":
            value = int(raw)
        elif kind == "name" and raw.lower() in ("true", "false"):
            value = raw.lower() == "true"
        else:
            raise FilterSyntaxError(f"expected a number or true/false after {op}, got {raw!r}")
        compare = _COMPARE[op]
        return lambda r: r[field] is not None and compare(r[field], value)


def parse_filter(text: str) -> Predicate:
    """Compile a filter such as ``bipartite & db & conn=2 & !cycle`` to a predicate on report dicts."""
    return _Parser(text).parse()


# -- streaming ---------------------------------------------------------------


def _work(item: tuple[int, str]):
    index, text = item
    try:
        return analyze_record(index, text)
    except (MalformedRecord, UnsupportedOrder) as exc:
        return ScanFailure(index, text, str(exc))


def _work_full(item: tuple[int, str]):
    index, text = item
    try:
        return analyze_record(index, text, short_circuit=False)
    except (MalformedRecord, UnsupportedOrder) as exc:
        return ScanFailure(index, text, str(exc))


def default_jobs() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)


def scan_stream(
    records: Iterable[str],
    filter: Predicate | str | None = None,
    jobs: int = 1,
    *,
    short_circuit: bool = True,
    on_error: Callable[[ScanFailure], None] | None = None,
    chunksize: int = 64,
) -> Iterator[ScanReport]:
    """Yield one report per record, in input order, keeping those the filter accepts.

    Malformed records are passed to ``on_error`` (default: a warning on the
    log) and skipped.
    """
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    if isinstance(filter, str):
        filter = parse_filter(filter)
    if on_error is None:
        on_error = lambda f: log.warning("record %d skipped: %s", f.record_index, f.message)
    work = _work if short_circuit else _work_full
    items = enumerate(records)
    if jobs == 1:
        yield from _sink(map(work, items), filter, on_error)
        return
    import multiprocessing

    with multiprocessing.Pool(jobs) as pool:
        # imap hands results back in submission order, buffering early finishers
        yield from _sink(pool.imap(work, items, chunksize=chunksize), filter, on_error)


def _sink(results, filter, on_error):
    for res in results:
        if isinstance(res, ScanFailure):
            on_error(res)
            continue
        if filter is None or filter(res.__dict__):
            yield res
