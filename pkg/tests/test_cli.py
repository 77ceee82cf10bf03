from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from permsandpile import serialize
from permsandpile.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), stream=out)
    return code, out.getvalue()


def records(*argv):
    code, text = run(*argv, "--format", "structured")
    return code, [json.loads(line) for line in text.splitlines()]


def test_graph_command():
    code, text = run("graph", "23541")
    assert code == 0 and "5 edges" in text and "connected: True" in text
    code, text = run("graph", "23154")
    assert code == 0 and "disconnected" in text
    code, recs = records("graph", "1")
    assert code == 0 and recs[0]["edges"] == [] and recs[0]["n"] == 1


def test_recurrent_command():
    code, recs = records("recurrent", "3421", "--sink", "3")
    configs = {tuple(r["grains"]): r for r in recs if r["kind"] == "config"}
    assert code == 0 and len(configs) == 8
    assert configs[(1, 2, 2, 1)]["level"] == 1 and configs[(1, 2, 2, 1)]["canon"] == "3-2-14"
    code, recs = records("recurrent", "514362", "--sink", "3")
    assert any(r.get("grains") == [0, 3, 3, 1, 3, 0] and r["level"] == 2 for r in recs)
    code, recs = records("recurrent", "21", "--sink", "1")
    assert code == 0 and sum(r["kind"] == "config" for r in recs) == 1


def test_polynomials_command():
    code, text = run("polynomials", "321")
    assert code == 0 and "x^2 + x + y" in text and "2 + x" in text
    code, recs = records("polynomials", "3421", "--all-sinks")
    polys = {tuple(r["coeffs"]) for r in recs if r["kind"] == "poly"}
    assert code == 0 and len(polys) == 1
    code, recs = records("polynomials", "2341")  # a star: tree-shaped graph
    assert [r["coeffs"] for r in recs if r["kind"] == "poly"] == [[1]]


def test_bijection_command():
    code, recs = records("bijection", "514362", "--sink", "3")
    rows = [r for r in recs if r["kind"] == "rooted_tree"]
    assert code == 0 and len(rows) == 16
    hit = [r for r in rows if r["edges"] == [[1, 5], [2, 3], [2, 6], [3, 5], [4, 5]]]
    assert hit[0]["config"]["grains"] == [0, 3, 3, 1, 3, 0] and hit[0]["ext"] == 2
    assert all(r["round_trip"] for r in rows)
    code, recs = records("bijection", "1", "--sink", "1")
    assert code == 0 and sum(r["kind"] == "rooted_tree" for r in recs) == 1


def test_partitions_command():
    code, recs = records("partitions", "25341", "--sink", "3")
    blocks = {r["blocks"] for r in recs if r["kind"] == "partition"}
    assert code == 0 and blocks == {"3-1-24-5", "3-1-25-4", "3-5-1-24", "3-5-4-1-2"}


def test_oeis_command():
    code, recs = records("oeis", "--range", "1..4")
    assert code == 0 and recs[-1]["values"] == [1, 1, 4, 33]
    code, text = run("oeis", "--range", "5..5")
    assert code == 0 and "456" in text and "PASS" in text
    code, recs = records("oeis", "--range", "1..1")
    assert recs[0]["value"] == 1


def test_structured_records_round_trip():
    for argv in (("recurrent", "3421", "--all-sinks"), ("bijection", "3421"), ("partitions", "25341", "--sink", "3")):
        _, recs = records(*argv)
        for r in recs:
            if r["kind"] in ("config", "rooted_tree", "partition", "poly", "graph", "tutte"):
                obj = serialize.from_record(r)
                again = serialize.to_record(obj)
                assert {k: r[k] for k in again} == again


def test_sweep_and_jobs():
    code1, a = run("recurrent", "--range", "1..4", "--limit", "0")
    code2, b = run("recurrent", "--range", "1..4", "--limit", "0", "--jobs", "2")
    assert code1 == code2 == 0 and a == b and a.count("PASS") == 1 + 1 + 3 + 13


def test_errors_and_guards():
    assert run("recurrent", "23154")[0] == 2
    assert run("recurrent", "3421", "--sink", "7")[0] == 2
    assert run("recurrent", "21a")[0] == 2
    assert run("recurrent", "987654321")[0] == 2
    assert run("recurrent", "--range", "1..7")[0] == 2
    assert run("recurrent")[0] == 2
    with pytest.raises(SystemExit):
        run("recurrent", "3421", "--sink", "1", "--all-sinks")


def test_failed_check_sets_exit_status(monkeypatch):
    import permsandpile.cli as cli
    monkeypatch.setattr(cli, "spanning_tree_count", lambda g: -1)
    code, text = run("recurrent", "3421", "--sink", "3")
    assert code == 1 and "FAIL" in text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "permsandpile", "graph", "21"], capture_output=True, text=True)
    assert proc.returncode == 0 and "1 edge" in proc.stdout
