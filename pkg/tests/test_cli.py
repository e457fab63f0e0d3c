from __future__ import annotations

import json
import subprocess
import sys

import pytest

from dbgraph.cli import main
from dbgraph.constructions import build_complete_bipartite, build_w_graph
from dbgraph.graph_core import decode_graph6, encode_graph6

W23 = encode_graph6(build_w_graph(m=2, ell=3))


def run(*args, stdin=""):
    proc = subprocess.run([sys.executable, "-m", "dbgraph", *args], input=stdin,
                          capture_output=True, text=True, timeout=120)
    return proc.returncode, proc.stdout, proc.stderr


def test_construct_graph6():
    code, out, _ = run("construct", "--family", "w", "--m", "2", "--ell", "3")
    assert code == 0 and out.strip() == W23


@pytest.mark.parametrize(
    "args, order, size",
    [(["--family", "cycle", "--n", "6"], 6, 6), (["--family", "hypercube", "--d", "3"], 8, 12),
     (["--family", "kpq", "--p", "2", "--q", "3"], 5, 6)],
)
def test_construct_edgelist(args, order, size, capsys):
    assert main(["construct", *args, "--format", "edgelist"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == f"{order} {size}" and len(lines) == size + 1


def test_construct_usage_errors(capsys):
    assert main(["construct", "--family", "w", "--m", "2"]) == 1
    assert main(["construct", "--family", "w", "--m", "1", "--ell", "3"]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["construct", "--family", "tree"])
    assert exc.value.code == 1


def test_bad_usage_exits_1():
    assert run()[0] == 1
    assert run("frobnicate")[0] == 1
    assert run("scan", "--jobs", "0", stdin="")[0] == 1
    assert run("scan", "--filter", "db &&", stdin="")[0] == 1
    assert run("scan", "/nonexistent/file.g6")[0] == 1


def test_check_predicates(tmp_path):
    path = tmp_path / "in.g6"
    path.write_text(f">>graph6<<{W23}\nBW\n")
    code, out, _ = run("check", "--sdb", str(path))
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and [r["holds"] for r in rows] == [False, False]
    assert rows[0]["witness"]["edge"]
    code, out, _ = run("check", "--connectivity", str(path))
    assert [json.loads(line)["vertex_connectivity"] for line in out.splitlines()] == [2, 1]
    code, out, _ = run("check", stdin="Bw\n")
    assert json.loads(out)["holds"] is True


def test_check_disconnected_reports_error():
    code, out, _ = run("check", "--db", stdin="C?\n")
    assert code == 0 and "error" in json.loads(out)


def test_analyze_w23():
    code, out, _ = run("analyze", stdin=W23 + "\n")
    rep = json.loads(out)
    assert code == 0
    assert rep["cut_distance"] == 3 and rep["component_sizes"] == [4, 12]
    assert [len(x) for x in rep["D"]] == [1, 2, 2, 1, 1, 2, 2, 1]
    assert rep["w_graph"] == [2, 3]
    assert all(c["holds"] for c in rep["checks"].values())


def test_analyze_three_connected():
    code, out, _ = run("analyze", stdin=encode_graph6(build_complete_bipartite(3, 3)) + "\n")
    assert code == 0 and json.loads(out)["error"].startswith("Is3Connected")


def test_scan_formats_and_strict():
    stream = f"Cl\nnot a graph\n{W23}\n"
    code, out, err = run("scan", "--filter", "candidate", "--jobs", "1", stdin=stream)
    assert code == 0 and "record 1" in err
    rows = [json.loads(line) for line in out.splitlines()]
    assert [r["record_index"] for r in rows] == [2]
    assert decode_graph6(rows[0]["graph6"]) == build_w_graph(m=2, ell=3)
    assert run("scan", "--strict", stdin=stream)[0] == 2
    code, out, _ = run("scan", "--format", "table", "--no-short-circuit", "--jobs", "2", stdin=stream)
    lines = out.splitlines()
    assert code == 0 and lines[0].split()[0] == "idx" and len(lines) == 3


def test_scan_empty_stream():
    assert run("scan", stdin="") == (0, "", "")


def test_verify_command():
    code, out, _ = run("verify")
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines())


def test_invariant_violation_exit_code(monkeypatch, capsys):
    from dbgraph import cli, scanner

    def broken(*args, **kwargs):
        raise scanner.InvariantViolation("candidate with connectivity 3")
        yield

    monkeypatch.setattr(cli, "scan_stream", broken)
    monkeypatch.setattr(sys, "stdin", open("/dev/null"))
    assert main(["scan"]) == 3
    assert "invariant violation" in capsys.readouterr().err
