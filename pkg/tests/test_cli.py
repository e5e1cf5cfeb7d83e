"""End-to-end command-line tests: exit codes, JSON schema, determinism."""

import json

import pytest

from cliquedec.cli import main, reproduce_example_51
from cliquedec.graph import Graph
from cliquedec.instances import cycle, cycle_z_presentation, star, wheel


def _write_graph(tmp_path, g, name="g.json"):
    p = tmp_path / name
    p.write_text(json.dumps(g.to_json_dict()))
    return str(p)


def _write_voltage(tmp_path, pres, name="v.json"):
    p = tmp_path / name
    p.write_text(json.dumps(pres.to_json_dict()))
    return str(p)


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


def test_check_chordal_exit_codes(tmp_path, capsys):
    ok_file = _write_graph(tmp_path, star(3))
    assert main(["check-chordal", "--in", ok_file, "--json"]) == 0
    out = _json_out(capsys)
    assert out["schema"] == "v1" and out["chordal"]

    bad_file = _write_graph(tmp_path, cycle(4), "c4.json")
    assert main(["check-chordal", "--in", bad_file, "--json"]) == 1
    out = _json_out(capsys)
    assert not out["chordal"] and len(out["hole"]) == 4


def test_usage_and_input_errors(tmp_path, capsys):
    assert main(["check-chordal", "--in", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["check-chordal", "--in", str(bad)]) == 2
    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"vertices": ["a"], "edges": [], "mystery": 1}))
    assert main(["check-chordal", "--in", str(unknown)]) == 2
    assert main(["no-such-command"]) == 2
    capsys.readouterr()


def test_max_cliques(tmp_path, capsys):
    f = _write_graph(tmp_path, star(3))
    assert main(["max-cliques", "--in", f, "--json"]) == 0
    out = _json_out(capsys)
    assert sorted(map(tuple, out["maximal_cliques"])) == [
        ("1", "c"), ("2", "c"), ("3", "c"),
    ]


def test_canonical_td_and_maximal_td(tmp_path, capsys):
    f = _write_graph(tmp_path, star(3))
    assert main(["canonical-td", "--in", f, "--json"]) == 0
    out = _json_out(capsys)
    assert out["canonical"] and out["regular"] and out["into_cliques"]
    assert not out["into_maximal_cliques"]
    assert out["beta_restricted_to_tight"]
    assert len(out["decomposition"]["nodes"]) == 4

    assert main(["maximal-td", "--in", f, "--json"]) == 0
    out = _json_out(capsys)
    assert out["into_maximal_cliques"]
    assert len(out["decomposition"]["nodes"]) == 3


def test_local_chordal(tmp_path, capsys):
    f = _write_graph(tmp_path, cycle(6))
    assert main(["local-chordal", "--in", f, "-r", "3", "--json"]) == 0
    assert _json_out(capsys)["r_locally_chordal"]
    f = _write_graph(tmp_path, wheel(), "wheel.json")
    assert main(["local-chordal", "--in", f, "-r", "3", "--json"]) == 1
    out = _json_out(capsys)
    assert out["center"] == "h" and len(out["hole"]) == 4


def test_verify_td(tmp_path, capsys):
    f = _write_graph(tmp_path, cycle(3))
    good = tmp_path / "td.json"
    good.write_text(
        json.dumps({"nodes": [{"id": "t0", "bag": ["v0", "v1", "v2"]}], "edges": []})
    )
    assert main(["verify-td", "--in", f, "--td", str(good)]) == 0
    capsys.readouterr()
    bad = tmp_path / "td2.json"
    bad.write_text(
        json.dumps({"nodes": [{"id": "t0", "bag": ["v0", "v1"]}], "edges": []})
    )
    assert main(["verify-td", "--in", f, "--td", str(bad), "--json"]) == 1
    out = _json_out(capsys)
    assert out["uncovered_vertices"] == ["v2"]


def test_fold_and_verify_gd(tmp_path, capsys):
    vf = _write_voltage(tmp_path, cycle_z_presentation(6))
    assert main(["fold", "--voltage", vf, "-L", "4", "--json"]) == 0
    out = _json_out(capsys)
    assert out["ok"] and out["into_cliques"] and out["into_maximal_cliques"]
    assert len(out["decomposition"]["nodes"]) == 6

    gf = _write_graph(tmp_path, cycle(6))
    assert main(["verify-gd", "--in", gf, "--voltage", vf, "-L", "4", "--json"]) == 0
    out = _json_out(capsys)
    assert out["ok"] and out["into_maximal_cliques"]


def test_fold_rejects_nonchordal_window(tmp_path, capsys):
    from cliquedec.instances import identity_presentation

    vf = _write_voltage(tmp_path, identity_presentation(wheel()))
    assert main(["fold", "--voltage", vf, "-L", "4", "--json"]) == 1
    out = _json_out(capsys)
    assert not out["window_chordal"]


def test_r_acyclic(tmp_path, capsys):
    vf = _write_voltage(tmp_path, cycle_z_presentation(6))
    gf = _write_graph(tmp_path, cycle(6))
    assert (
        main(["r-acyclic", "--in", gf, "--voltage", vf, "-L", "4", "-r", "3", "--json"])
        == 0
    )
    out = _json_out(capsys)
    assert out["r_acyclic"] and out["exhaustive"]
    assert (
        main(["r-acyclic", "--in", gf, "--voltage", vf, "-L", "4", "-r", "6", "--json"])
        == 1
    )
    out = _json_out(capsys)
    assert not out["r_acyclic"] and len(out["cycle"]) == 6


def test_gen_deterministic(tmp_path, capsys):
    argv = ["gen", "random_chordal", "-n", "12", "--seed", "7"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first
    g = Graph.from_json_dict(json.loads(first))
    assert len(g) == 12

    assert main(["gen", "star", "-t", "3"]) == 0
    g = Graph.from_json_dict(json.loads(capsys.readouterr().out))
    assert set(g.vertices) == {"c", "1", "2", "3"}


def test_reproduce_example(capsys):
    assert main(["reproduce", "example-5.1", "-t", "3", "--json"]) == 0
    out = _json_out(capsys)
    assert out["candidate_trees"] == 3
    assert out["canonical_into_maximal"] == 0
    assert out["star_decomposition_canonical"]
    assert not out["star_decomposition_into_maximal_cliques"]

    rep = reproduce_example_51(4)
    assert rep["candidate_trees"] == 16 and rep["canonical_into_maximal"] == 0

    assert main(["reproduce", "example-5.1", "-t", "2"]) == 2
    capsys.readouterr()


def test_plain_output_key_value(tmp_path, capsys):
    f = _write_graph(tmp_path, star(3))
    assert main(["check-chordal", "--in", f]) == 0
    out = capsys.readouterr().out
    assert out.startswith("chordal: True")
