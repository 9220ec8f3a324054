import json
import subprocess
import sys

import pytest

from cfguard.cli import (
    EXIT_FAIL, EXIT_INPUT, EXIT_OK, EXIT_PRECONDITION, GuardingFile, InputError,
    PolygonFile, format_rational, main, parse_rational,
)
from cfguard.geometry import mpq


def run(*argv):
    return main([str(a) for a in argv])


def dump(path, doc):
    path.write_text(json.dumps(doc))
    return path


def load(path):
    return json.loads(path.read_text())


def test_rational_round_trip():
    for s in [0, -3, "7/2", "-1/3"]:
        assert format_rational(parse_rational(s)) == s
    assert parse_rational(" 4/6 ") == mpq(2, 3)


@pytest.mark.parametrize("bad", [1.5, True, None, "x", "1/0"])
def test_rational_rejects(bad):
    with pytest.raises(InputError):
        parse_rational(bad)


def test_polygon_file_base_survives_orientation(tmp_path):
    # clockwise input; base given as the edge (1, 2)
    doc = {"vertices": [[0, 0], [0, 4], [4, 4], [4, 0]], "base": [1, 2]}
    P, e = PolygonFile.from_json(doc).polygon()
    assert set(P.edge(e)) == {(0, 4), (4, 4)}


def test_polygon_file_rejects_non_edge_base():
    doc = {"vertices": [[0, 0], [4, 0], [4, 4], [0, 4]], "base": [0, 2]}
    with pytest.raises(InputError):
        PolygonFile.from_json(doc).polygon()


def test_guarding_file_checks():
    gf = GuardingFile.from_json({"guards": [{"vertex": 0, "colour": 1}, {"vertex": 0, "colour": 2}]})
    with pytest.raises(InputError):
        gf.guarding(4)
    with pytest.raises(InputError):
        GuardingFile([(9, 1)]).guarding(4)
    with pytest.raises(InputError):
        GuardingFile.from_json({"guards": [{"vertex": 0, "colour": 1}], "palette_size": 2})


def test_fig3_colour_then_verify(tmp_path):
    poly, g = tmp_path / "p.json", tmp_path / "g.json"
    assert run("gallery", "--name", "fig3", "--out", poly) == EXIT_OK
    assert run("colour", poly, "--mode", "funnel", "--out", g, "--svg", tmp_path / "f.svg") == EXIT_OK
    doc = load(g)
    assert len(doc["guards"]) == 4 and doc["palette_size"] == 3
    assert (tmp_path / "f.svg").read_text().startswith("<svg")
    assert run("verify", poly, g, "--out", tmp_path / "r.json") == EXIT_OK
    assert load(tmp_path / "r.json")["verdict"] == "OK"


def test_verify_empty_guarding_fails(tmp_path):
    poly = tmp_path / "p.json"
    run("gallery", "--name", "fig7a", "--out", poly)
    g = dump(tmp_path / "g.json", {"guards": []})
    out = tmp_path / "r.json"
    assert run("verify", poly, g, "--out", out) == EXIT_FAIL
    assert "witness" in load(out)


def test_verify_vertex_viewers(tmp_path):
    poly = tmp_path / "p.json"
    run("gallery", "--name", "fig7a", "--out", poly)
    g = dump(tmp_path / "g.json", {"guards": [{"vertex": 1, "colour": 1}, {"vertex": 5, "colour": 1}]})
    assert run("verify", poly, g, "--viewers", "vertices", "--out", tmp_path / "r.json") == EXIT_FAIL


def test_gen_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert run("gen", "--kind", "weakvis", "--seed", 3, "--n", 14, "--out", out) == EXIT_OK
    assert a.read_text() == b.read_text()
    assert "base" in load(a)


@pytest.mark.parametrize("mode", ["simple", "weakvis"])
def test_colour_modes_verify(tmp_path, mode):
    poly, g = tmp_path / "p.json", tmp_path / "g.json"
    run("gen", "--kind", "weakvis", "--seed", 11, "--n", 16, "--out", poly)
    assert run("colour", poly, "--mode", mode, "--out", g) == EXIT_OK
    assert run("verify", poly, g, "--out", tmp_path / "r.json") == EXIT_OK


def test_funnel_mode_on_non_funnel(tmp_path):
    poly = tmp_path / "p.json"
    run("gallery", "--name", "fig7b", "--out", poly)
    assert run("colour", poly, "--mode", "funnel", "--out", tmp_path / "g.json") == EXIT_PRECONDITION


def test_decompose_tree(tmp_path):
    poly, out = tmp_path / "p.json", tmp_path / "t.json"
    run("gallery", "--name", "fig6fwd", "--out", poly)
    assert run("decompose", poly, "--out", out) == EXIT_OK
    doc = load(out)
    kinds = [v["kind"] for v in doc["nodes"]]
    assert kinds[0] == "ordinary" and "forward" in kinds
    for v in doc["nodes"][1:]:
        assert v["id"] in doc["nodes"][v["parent"]]["children"]


def test_funnel_guards(tmp_path):
    poly, out = tmp_path / "p.json", tmp_path / "o.json"
    run("gallery", "--name", "fig3", "--out", poly)
    assert run("funnel-guards", poly, "--out", out) == EXIT_OK
    doc = load(out)
    assert len(doc["optimal"]) == 3 and len(doc["simple"]) == 4


def test_bad_input_exit_codes(tmp_path):
    bad = dump(tmp_path / "bad.json", {"vertices": [[0, 0], [1.5, 0], [0, 1]]})
    assert run("colour", bad) == EXIT_INPUT
    assert run("colour", tmp_path / "missing.json") == EXIT_INPUT
    with pytest.raises(SystemExit) as ex:
        run("colour", bad, "--mode", "nonsense")
    assert ex.value.code == EXIT_INPUT


def test_console_script_lists_gallery():
    r = subprocess.run([sys.executable, "-m", "cfguard.cli", "gallery", "--list"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "fig3" in r.stdout.split()
