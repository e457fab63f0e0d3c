from __future__ import annotations

from dbgraph.constructions import build_complete_bipartite
from dbgraph.verify import CHECKS, Fixture, default_corpus, verify_suite


def test_default_corpus_passes():
    results = verify_suite()
    assert len(results) == len(CHECKS)
    failed = [r.line() for r in results if not r.passed]
    assert not failed, failed
    assert all(r.checked > 0 for r in results)


def test_corpus_contents():
    names = {f.name for f in default_corpus()}
    assert {"C_4", "C_12", "Q_1", "Q_4", "K_{2,2}", "K_{4,4}", "W(2,3)", "W(4,7)"} <= names


def test_report_mentions_even_ring_control():
    line = next(r for r in verify_suite() if r.name == "w-graph-dichotomy").line()
    assert "W(2,4) correctly non-DB" in line


def test_negative_control_flags_mislabelled_graph():
    star = Fixture("K_{1,3} (labelled balanced)", build_complete_bipartite(1, 3), assume_db=True)
    results = {r.name: r for r in verify_suite([star])}
    for name in ("db-2-connected", "db-cut-pairs-nonadjacent", "db-min-degree-3"):
        assert not results[name].passed
        assert "K_{1,3}" in results[name].line()
        assert results[name].line().startswith("FAIL")
