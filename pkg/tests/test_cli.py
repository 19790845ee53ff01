import csv
import io
import json
import os
import subprocess
import sys

import pytest

from graphfp.cli import main, parse_word, resolve_graph
from graphfp.corpus import circulant


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv)
    assert code == 0, err
    return json.loads(out)


@pytest.fixture
def c3_file(tmp_path):
    p = tmp_path / "c3.json"
    p.write_text(json.dumps(circulant(3).to_json()))
    return str(p)


def test_demo_gn_moments():
    rows = run_json("demo-gn", "2", "--order", "8")
    assert [r["chain_moment"] for r in rows] == [0, 4, 0, 32, 0, 320, 0, 3584]
    code, table, _ = run("demo-gn", "2", "--order", "8", "--format", "table")
    assert code == 0 and "3584" in table and "chain_moment" in table


def test_demo_gn_flags_mismatches():
    rows = run_json("demo-gn", "1", "--order", "4")
    assert rows[3]["mismatch"] and not rows[1]["mismatch"]


def test_mu_example(c3_file):
    doc = run_json("mu", "--graph", c3_file, "--word", "[(e1,1),(e1,*),(e1,1),(e1,*)]")
    assert doc == {"mu": -1, "connected_set_size": 3}


def test_lattice_example(c3_file):
    doc = run_json("lattice", "--word", "[(e1,1),(e1,1)]", "--graph", c3_file)
    assert doc["path"] == "EMPTY" and doc["star_axis"] is False
    doc = run_json("lattice", "--word", "[(e1,1),(e1,*)]", "--graph", c3_file, "--ascii")
    assert doc["star_axis"] is True and doc["path"] == [[0, 0], [1, 1], [0, 0]]


def test_word_syntax():
    g = resolve_graph("C3")
    word = parse_word("[(e1.e2,1), (v:v1,1), (e3,*)]", g)
    assert [(str(w), u.value) for w, u in word] == [("e1e2", "1"), ("v1", "1"), ("e3", "*")]
    with pytest.raises(ValueError):
        parse_word("[(e1,2)]", g)


def test_reduce_and_expect():
    doc = run_json("reduce", "--graph", "G1", "--word", "[(l,*),(l,1)]")
    assert doc["canonical"] == "L[v]"
    assert run_json("expect", "--graph", "G1", "--word", "[(l,1),(l,*)]")["value"] == {"v": "1"}
    assert run_json("expect", "--graph", "G1", "--word", "[(l,1),(l,*)]", "--mode", "fock")["value"] == {}


def test_moment_and_cumulant():
    rows = run_json("moment", "--graph", "G1", "--order", "4")
    assert [r["value"] for r in rows] == [{}, {"v": "2"}, {}, {"v": "6"}]
    rows = run_json("cumulant", "--graph", "G1", "--order", "4")
    assert rows[3]["value"] == {"v": "-2"}
    doc = run_json("cumulant", "--graph", "C3", "--word", "[(e1,1),(e1,*)]")
    assert set(doc) == {"order", "mode", "value", "connected_set_size", "mu"}
    assert doc["mu"] == 1 and doc["value"] == {"v1": "1"}


def test_nc_and_freeness():
    doc = run_json("nc", "--order", "4")
    assert doc["count"] == 14 and doc["mobius_0_1"] == -5
    assert run_json("nc", "--order", "4", "--filter", "pairings")["count"] == 2
    doc = run_json("freeness", "--graph", "G1", "--w1", "l.l", "--w2", "l.l.l", "--max-order", "2")
    assert doc["generators_free"] is False and doc["report"]["verdict"] == "nonvanishing"


def test_oracle_defaults_to_fock():
    doc = run_json("oracle", "--graph", "G1", "--word", "[(l,*),(l,*),(l,1),(l,1)]")
    assert doc["match"] and doc["oracle"] == {"v": "1"} and doc["length"] == 6


def test_demo_circulant():
    rows = run_json("demo-circulant", "3", "--order", "4")
    assert [r["mu"] for r in rows] == [0, 1, 0, -1]


def test_csv_is_rfc4180():
    code, text, _ = run("demo-circulant", "3", "--order", "4", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 4 and rows[3]["mu"] == "-1"


def test_exit_codes():
    assert run("nope")[0] == 2
    assert run("mu", "--graph", "C3", "--word", "[(zz,1)]")[0] == 2
    assert run("expect", "--graph", "missing.json", "--word", "[(l,1)]")[0] == 2
    code, _, err = run("nc", "--order", "13")
    assert code == 3 and "refused" in err
    assert run("nc", "--order", "5", "--max-nc", "4")[0] == 3
    code, _, err = run("oracle", "--graph", "G1", "--word", "[(l,*),(l,1),(l,1)]", "--length", "1")
    assert code == 3 and "refused" in err


def test_max_nc_flag_does_not_leak(monkeypatch):
    monkeypatch.delenv("GRAPHFP_MAX_NC", raising=False)
    run("nc", "--order", "3", "--max-nc", "4")
    assert "GRAPHFP_MAX_NC" not in os.environ


def test_byte_identical_across_processes():
    argv = [sys.executable, "-m", "graphfp", "cumulant", "--graph", "C4", "--order", "6", "--format", "csv"]
    outs = {subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)}
    assert len(outs) == 1
