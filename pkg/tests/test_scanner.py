from __future__ import annotations

import json
import random

import pytest

from dbgraph.constructions import build_complete_bipartite, build_cycle, build_path, build_w_graph
from dbgraph.graph_core import encode_graph6, from_edge_list
from dbgraph.scanner import (
    FilterSyntaxError,
    ScanReport,
    analyze_record,
    evaluate_graph,
    parse_filter,
    scan_stream,
)

from conftest import random_graph


def records(*graphs):
    return [encode_graph6(g) for g in graphs]


def test_candidate_stream():
    stream = records(build_cycle(6), build_complete_bipartite(3, 3), build_w_graph(m=2, ell=3))
    hits = list(scan_stream(stream, "candidate"))
    assert [h.record_index for h in hits] == [2]
    w = hits[0]
    assert (w.order, w.size, w.vertex_connectivity, w.cut_distance, w.min_degree) == (18, 27, 2, 3, 3)
    assert w.distance_balanced and not w.strongly_db and not w.partial_cube


def test_full_reports():
    stream = records(build_cycle(6), build_complete_bipartite(3, 3), build_path(3))
    reps = list(scan_stream(stream))
    assert [r.cycle for r in reps] == [True, False, False]
    assert reps[0].cut_distance == 2 and reps[1].cut_distance is None
    assert reps[2].witness == {"edge": [0, 1], "w_uv": 1, "w_vu": 2}
    assert reps[2].strongly_db is False


def test_empty_stream():
    assert list(scan_stream([])) == []
    assert list(scan_stream([], jobs=2)) == []


def test_disconnected_graph():
    rep = analyze_record(0, encode_graph6(from_edge_list(4, [(0, 1), (2, 3)])))
    assert not rep.connected
    assert rep.distance_balanced is None and rep.vertex_connectivity == 0
    assert not rep.candidate


def test_single_edge_is_not_a_candidate():
    rep = analyze_record(0, "A_")
    assert rep.distance_balanced and not rep.candidate


def test_malformed_records_skipped():
    seen = []
    out = list(scan_stream(["A_", "A", "Cl", "!!"], on_error=seen.append))
    assert [r.record_index for r in out] == [0, 2]
    assert [f.record_index for f in seen] == [1, 3]


def test_json_line_round_trip():
    rep = analyze_record(5, encode_graph6(build_w_graph(m=2, ell=3)))
    line = rep.to_json()
    assert "\n" not in line and ", " not in line
    assert ScanReport(**json.loads(line)) == rep


@pytest.mark.parametrize(
    "expr, expected",
    [
        ("db", [True, True, False, True]),
        ("bipartite & db & conn=2 & !cycle", [False, False, False, True]),
        ("cycle | kappa>=3", [True, True, False, False]),
        ("!(n < 10)", [False, False, False, True]),
        ("cutdist>=3", [False, False, False, True]),
        ("cutdist != 3", [True, False, False, False]),
        ("sdb == true", [True, True, False, False]),
        ("pcube=false & db", [False, True, False, True]),
        ("MinDeg >= 3 & m = 27", [False, False, False, True]),
    ],
)
def test_filter_language(expr, expected):
    stream = records(build_cycle(6), build_complete_bipartite(3, 3), build_path(3), build_w_graph(m=2, ell=3))
    pred = parse_filter(expr)
    got = [pred(r.__dict__) for r in scan_stream(stream)]
    assert got == expected


@pytest.mark.parametrize("expr", ["", "db &", "foo", "db = x", "(db", "db)", "conn >", "db $ sdb", "3"])
def test_filter_syntax_errors(expr):
    with pytest.raises(FilterSyntaxError):
        parse_filter(expr)


def test_parallel_matches_serial():
    rng = random.Random(3)
    stream = [encode_graph6(random_graph(rng, rng.randint(1, 14))) for _ in range(400)]
    stream.insert(17, "bogus?")
    serial = [r.to_json() for r in scan_stream(stream, jobs=1, on_error=lambda f: None)]
    parallel = [r.to_json() for r in scan_stream(stream, jobs=3, chunksize=7, on_error=lambda f: None)]
    assert serial == parallel and len(serial) == 400


def test_short_circuit_does_not_change_flags():
    rng = random.Random(11)
    for _ in range(300):
        g = random_graph(rng, rng.randint(1, 12))
        assert evaluate_graph(g) == evaluate_graph(g, short_circuit=False)


def test_jobs_must_be_positive():
    with pytest.raises(ValueError):
        list(scan_stream(["A_"], jobs=0))
