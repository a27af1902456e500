import json
from pathlib import Path

import pytest

from cdcpipe.cli import FAILED, INPUT_ERROR, OK, main
from cdcpipe.cover import cover_from_dict, verify_cdc
from cdcpipe.errors import GraphError
from cdcpipe.generators import complete, petersen
from cdcpipe.io import (
    format_edgelist,
    format_graph6,
    parse_cycles,
    parse_edgelist,
    parse_graph6,
    read_graph,
    write_graph,
)

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def test_edgelist_keeps_parallels_loops_and_isolated():
    g, names = parse_edgelist("a b\nb a  # again\nc c\n\nd\n")
    assert g.num_edges() == 3 and g.num_vertices() == 4
    assert names == {0: "a", 1: "b", 2: "c", 3: "d"}
    g2, names2 = parse_edgelist(format_edgelist(g, names))
    assert g2.same_structure(g) and names2 == names


def test_edgelist_rejects_long_lines():
    with pytest.raises(GraphError):
        parse_edgelist("a b c\n")


def test_graph6_roundtrip():
    g = petersen()
    text = format_graph6(g)
    h, _ = parse_graph6(text)
    assert sorted(map(sorted, h.edges.values())) == sorted(map(sorted, g.edges.values()))
    with pytest.raises(GraphError):
        parse_graph6("!!!")


def test_petersen_corpus_files_agree():
    a, _ = read_graph(CORPUS / "snarks" / "petersen.g6")
    b, _ = read_graph(CORPUS / "snarks" / "petersen.edgelist")
    assert a.num_edges() == b.num_edges() == 15


def test_parse_cycles_forms():
    g = complete(4)
    assert [w.edges for w in parse_cycles("0 3 1\n", g)] == [(0, 3, 1)]
    assert [w.edges for w in parse_cycles("[[0, 3, 1]]", g)] == [(0, 3, 1)]
    with pytest.raises(GraphError):
        parse_cycles("[[0, 3", g)


@pytest.fixture
def k4_file(tmp_path):
    p = tmp_path / "k4.edgelist"
    write_graph(complete(4), p)
    return p


def test_cli_cdc_then_verify(k4_file, tmp_path, capsys):
    out = tmp_path / "cover.json"
    assert main(["cdc", str(k4_file), "-o", str(out)]) == OK
    doc = json.loads(out.read_text())
    assert doc["mu"] == 1
    assert verify_cdc(complete(4), cover_from_dict(doc, complete(4).edges))
    assert main(["verify", str(k4_file), str(out)]) == OK


def test_cli_verify_flags_bad_cover(k4_file, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"elements": [{"kind": "cycle", "edges": [0, 3, 1]}]}))
    assert main(["verify", str(k4_file), str(bad)]) == FAILED
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert main(["verify", str(k4_file), str(junk)]) == INPUT_ERROR
    malformed = tmp_path / "malformed.json"
    malformed.write_text(json.dumps({"elements": [{"kind": "cycle"}]}))
    assert main(["verify", str(k4_file), str(malformed)]) == INPUT_ERROR


def test_cli_bridges_are_input_errors(tmp_path, capsys):
    p = tmp_path / "path.edgelist"
    p.write_text("a b\nb c\n")
    assert main(["cdc", str(p)]) == INPUT_ERROR
    assert "bridges" in capsys.readouterr().err


def test_cli_missing_file_and_bad_args(tmp_path):
    assert main(["cdc", str(tmp_path / "nope.edgelist")]) == INPUT_ERROR
    assert main(["frobnicate"]) == INPUT_ERROR


def test_cli_ncdc(tmp_path):
    g = tmp_path / "g.edgelist"
    g.write_text("a b\nb c\nc a\nc d\nd e\ne f\nf d\n")
    free = tmp_path / "free.txt"
    free.write_text("a x\ne y\n")
    out = tmp_path / "out.json"
    assert main(["ncdc", str(g), "--free-edges", str(free), "-o", str(out)]) == OK
    doc = json.loads(out.read_text())
    assert doc["free_edges"] == [[7, "a", "x"], [8, "e", "y"]]
    free.write_text("a x\n")
    assert main(["ncdc", str(g), "--free-edges", str(free)]) == INPUT_ERROR


def test_cli_goddyn(k4_file, tmp_path):
    cycles = tmp_path / "c.txt"
    cycles.write_text("0 3 1\n")
    out = tmp_path / "out.json"
    assert main(["goddyn", str(k4_file), str(cycles), "-o", str(out)]) == OK
    assert json.loads(out.read_text())["contains"] == [[0, 1, 3]]
    cycles.write_text("0 3 1\n0 4 2\n1 5 2\n")  # three triangles sharing edges
    assert main(["goddyn", str(k4_file), str(cycles)]) != OK


def test_cli_corpus(tmp_path):
    out = tmp_path / "summary.tsv"
    assert main(["corpus", str(CORPUS / "planar"), "-o", str(out)]) == OK
    lines = out.read_text().splitlines()
    assert lines[0].split("\t")[:3] == ["graph", "vertices", "edges"]
    assert all(line.split("\t")[5] == "cover" for line in lines[1:])
    empty = tmp_path / "empty"
    empty.mkdir()
    assert main(["corpus", str(empty)]) == INPUT_ERROR
    assert main(["corpus", str(tmp_path / "missing")]) == INPUT_ERROR


def test_cli_corpus_parallel_matches_serial(tmp_path):
    a, b = tmp_path / "a.tsv", tmp_path / "b.tsv"
    assert main(["corpus", str(CORPUS / "snarks"), "-o", str(a)]) == OK
    assert main(["corpus", str(CORPUS / "snarks"), "-o", str(b), "-j", "2"]) == OK
    assert a.read_bytes() == b.read_bytes()
