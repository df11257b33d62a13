import csv
import json

import pytest

from superjordan import certs
from superjordan.catalog import build
from superjordan.cli import main


def test_build_prints_dims(tmp_path, capsys):
    out = tmp_path / "osp.json"
    assert main(["build", "osp(3,1)", "--out", str(out)]) == 0
    assert "dim 13" in capsys.readouterr().out
    doc = certs.read(out)
    assert doc["kind"] == "algebra" and doc["payload"]["dim"] == 13


@pytest.mark.parametrize("argv,code", [
    (["build", "K3"], 0),
    (["build", "M(0,2)"], 3),
    (["build", "M(0,2)", "--permissive"], 0),
    (["build", "nonsense(("], 2),
    (["axioms", "Dt(1/2)"], 0),
    (["axioms", "Q(2)"], 0),
    (["verify", "M(3,3)", "example1"], 3),
    (["verify", "M(1,2)", "example1"], 3),
    (["verify", "M(1,2)", "example1", "--permissive"], 1),
    (["verify", "JVf(4,2)", "split", "2", "1"], 0),
    (["verify", "JVf(2,1)", "split", "1", "0"], 1),
    (["verify", "M(3,2)", "search", "osp(3,1)", "M(2,2)", "--trials", "1"], 0),
    (["verify", "M(3,2)", "search", "osp(3,1)", "M(3,1)"], 3),
    (["screen", "K3"], 0),
    (["report", "T9"], 2),
    (["frobnicate"], 2),
])
def test_exit_codes(argv, code, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(argv) == code


def test_corrupted_dump_fails_axioms(tmp_path):
    good = tmp_path / "a.json"
    main(["build", "osp(2,1)", "--out", str(good)])
    doc = json.loads(good.read_text())
    doc["payload"]["structure_constants"][0][3] = "5"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    assert main(["axioms", str(bad)]) == 1


def test_algebra_dump_roundtrip():
    A = build("Dt(1/2)")
    p = certs.algebra_payload(A)
    B = certs.algebra_from_payload(json.loads(json.dumps(p)))
    assert B.quadruples() == A.quadruples() and B.parity == A.parity
    assert certs.algebra_payload(B) == p


def test_documents_use_canonical_ordering(tmp_path):
    out = tmp_path / "v.json"
    main(["verify", "M(2,2)", "example1", "--out", str(out)])
    text = out.read_text()
    assert text == certs.dumps(json.loads(text))
    doc = json.loads(text)
    assert list(doc) == sorted(doc)
    assert set(doc["provenance"]) == {"generator", "rule_set_version", "seed"}


def test_check_reproduces_and_detects_tampering(tmp_path, capsys):
    v = tmp_path / "v.json"
    s = tmp_path / "s.json"
    main(["verify", "M(3,2)", "example1", "--out", str(v)])
    main(["screen", "M(2,2)", "--out", str(s)])
    assert main(["check", str(v), str(s)]) == 0
    doc = json.loads(v.read_text())
    doc["payload"]["span_rank_odd"] = 11
    v.write_text(json.dumps(doc))
    capsys.readouterr()
    assert main(["check", str(v)]) == 1
    assert "span_rank_odd" in capsys.readouterr().out


def test_check_rejects_non_documents(tmp_path):
    junk = tmp_path / "junk.json"
    junk.write_text("[1, 2]")
    assert main(["check", str(junk)]) == 2


def test_report_writes_tsv_and_png(tmp_path):
    assert main(["report", "T4.5", "--out", str(tmp_path)]) == 0
    rows = list(csv.DictReader(open(tmp_path / "T4.5.tsv"), delimiter="\t"))
    assert [r["cell"] for r in rows] == ["P(2)", "P(3)", "Q(2)", "Q(3)"]
    assert all(r["status"] == "match" for r in rows)
    png = (tmp_path / "T4.5.png").read_bytes()
    assert png[:8] == b"\x89PNG\r\n\x1a\n"
    docs = sorted((tmp_path / "documents").glob("*.json"))
    assert len(docs) == 4
    assert main(["check", *map(str, docs)]) == 0


def test_matrix_report_marks_edge_cells(tmp_path):
    assert main(["report", "T2.1", "--grid", "2", "--out", str(tmp_path)]) == 0
    rows = {r["cell"]: r["status"] for r in csv.DictReader(open(tmp_path / "T2.1.tsv"), delimiter="\t")}
    assert rows == {"M(1,1)": "match", "M(1,2)": "edge", "M(2,1)": "edge", "M(2,2)": "match"}
