import json
from pathlib import Path

import pytest

from posetrep import cli
from posetrep import groups as G
from posetrep import posets as P


def run(args):
    return cli.main(args)


def test_girth_command(tmp_path, capsys):
    out = tmp_path / "g.json"
    assert run(["girth", "--group", "z:6", "--gens", "1,2", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["girth"] == 3 and data["witness"] == "x x Y"


def test_girth_margulis(tmp_path):
    out = tmp_path / "g.json"
    assert run(["girth", "--group", "sl2:13", "--gens", "margulis",
                "--limit", "24", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["girth"] == 10


def test_aut_command(tmp_path):
    pos = P.build_cayley_poset(G.CyclicGroup(9), [0, 1, 3])
    poset_file = tmp_path / "p.json"
    poset_file.write_text(json.dumps(pos.to_json_dict()))
    out = tmp_path / "aut.json"
    assert run(["aut", "--poset", str(poset_file), "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["order"] == 9 and data["orbit_count"] == 2


def test_search_command_and_cache(tmp_path):
    out1 = tmp_path / "s1.json"
    out2 = tmp_path / "s2.json"
    cache = tmp_path / "cache"
    assert run(["search", "--group", "z:8", "--cache-dir", str(cache),
                "--out", str(out1)]) == 0
    assert run(["search", "--group", "z:8", "--cache-dir", str(cache),
                "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    data = json.loads(out1.read_text())
    assert data["outcome"] == "found"
    assert len(list(cache.glob("*.json"))) == 1


def test_certify_command_exit_codes(tmp_path):
    out = tmp_path / "c.json"
    assert run(["certify", "--group", "sl2:5", "--gens", "margulis",
                "--out", str(out)]) == 1
    data = json.loads(out.read_text())
    assert data["applicable"] is False and data["girth"] == 5


def test_c16_command(tmp_path):
    pres = tmp_path / "pres.txt"
    pres.write_text("<x,y | x y X Y>")
    out = tmp_path / "c.json"
    assert run(["c16", "--pres", str(pres), "--out", str(out)]) == 1
    data = json.loads(out.read_text())
    assert data["satisfies_c_lambda"] is False and data["max_piece"] == 1


def test_sample_command(tmp_path):
    out = tmp_path / "s.json"
    assert run(["sample", "--model", "few", "--n", "2", "--m", "2", "--l", "30",
                "--count", "20", "--seed", "7", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["count"] == 20
    num, den = data["representable_fraction"]
    assert den == 20 and 0 <= num <= 20


def test_extend_command(tmp_path):
    out = tmp_path / "e.json"
    dot = tmp_path / "w.dot"
    assert run(["extend", "--kind", "p1", "--group", "z:9", "--s", "0,1,3",
                "--psi", "id", "--window", "2", "--dot", str(dot),
                "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["points"] == 54 and data["graded"] is True
    assert data["action"]["free"] is True
    assert dot.read_text().startswith("digraph")


def test_export_commands(tmp_path):
    dot = tmp_path / "h.dot"
    assert run(["export", "--what", "hasse", "--group", "z:9", "--s", "0,1,3",
                "--out", str(dot)]) == 0
    text = dot.read_text()
    assert text.count("->") == 27
    png = tmp_path / "tree.png"
    assert run(["export", "--what", "tree", "--out", str(png)]) == 0
    assert png.stat().st_size > 1000
    tree_dot = tmp_path / "tree.dot"
    assert run(["export", "--what", "tree", "--out", str(tree_dot)]) == 0
    assert tree_dot.read_text().count("--") == 31


def test_repro_reports_are_deterministic(tmp_path):
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    for out in (out_a, out_b):
        assert run(["repro", "nongraded", "--outdir", str(out)]) == 0
    assert (out_a / "nongraded.json").read_bytes() == \
        (out_b / "nongraded.json").read_bytes()
    assert (out_a / "nongraded.csv").read_bytes() == \
        (out_b / "nongraded.csv").read_bytes()
    assert (out_a / "nongraded.png").exists()


def test_repro_cache_hit_identical(tmp_path):
    cache = tmp_path / "cache"
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    assert run(["repro", "main-f2", "--outdir", str(out_a),
                "--cache-dir", str(cache), "--no-figures"]) == 0
    assert run(["repro", "main-f2", "--outdir", str(out_b),
                "--cache-dir", str(cache), "--no-figures"]) == 0
    assert (out_a / "main-f2.json").read_bytes() == \
        (out_b / "main-f2.json").read_bytes()


def test_parse_errors_exit_two():
    assert run(["girth", "--group", "nope:3", "--gens", "1"]) == 2
    assert run(["girth", "--group", "z:6", "--gens", "margulis"]) == 2


def test_cap_exceeded_exit_three():
    assert run(["search", "--group", "z:20"]) == 3
