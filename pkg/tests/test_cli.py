import json

from trophomology.cli import main
from trophomology.tropgeo import canonical_json


def run(argv):
    return main(argv)


def test_gen_line_and_homology(tmp_path, capsys):
    out = tmp_path / "line.json"
    assert run(["gen", "line", "--N", "2", "--out", str(out)]) == 0
    assert run(["homology", "--complex", str(out), "--format", "json"]) == 0
    rep = json.loads(capsys.readouterr().out.splitlines()[-1])
    assert rep["hodge"] == [[1, 0], [0, 1]]
    assert rep["E"] == "1 - u*v"


def test_gen_curve_check_and_build(tmp_path, capsys):
    h = tmp_path / "h.json"
    c = tmp_path / "c.json"
    assert run(["gen", "curve", "--d", "2", "--out", str(h)]) == 0
    assert run(["check", "--heights", str(h), "--balanced", "--smooth", "--unimodular"]) == 0
    assert run(["hypersurface", "--heights", str(h), "--out", str(c)]) == 0
    assert run(["homology", "--complex", str(c), "--format", "json"]) == 0
    rep = json.loads(capsys.readouterr().out.splitlines()[-1])
    assert rep["hodge"] == [[1, 0], [0, 1]]


def test_check_failures(tmp_path, capsys):
    h = tmp_path / "h.json"
    assert run(["gen", "curve", "--d", "2", "--out", str(h)]) == 0
    data = json.loads(h.read_text())
    # flatten all heights: the dual subdivision collapses to one fat cell
    for entry in data["heights"]:
        entry["a"] = "0"
    h.write_text(canonical_json(data))
    capsys.readouterr()
    assert run(["check", "--heights", str(h), "--unimodular"]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out


def test_degree_command(tmp_path, capsys):
    out = tmp_path / "line.json"
    run(["gen", "line", "--N", "2", "--out", str(out)])
    assert run(["degree", "--complex", str(out), "--seed", "3", "--format", "json"]) == 0
    rep = json.loads(capsys.readouterr().out.splitlines()[-1])
    assert rep["degree"] == 1


def test_bergman_command(tmp_path, capsys):
    m = tmp_path / "u34.json"
    m.write_text(json.dumps({"ground": 4, "bases": [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]}))
    out = tmp_path / "plane.json"
    assert run(["bergman", "--matroid", str(m), "--out", str(out)]) == 0
    assert run(["check", "--complex", str(out), "--balanced"]) == 0
    capsys.readouterr()
    assert run(["degree", "--complex", str(out)]) == 0
    assert "degree: 1" in capsys.readouterr().out


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "nope.json"
    assert run(["homology", "--complex", str(bad)]) == 2
    bad.write_text("{not json")
    assert run(["homology", "--complex", str(bad)]) == 2
    empty = tmp_path / "empty_heights.json"
    empty.write_text(json.dumps({"N": 2, "d": 1, "heights": []}))
    assert run(["hypersurface", "--heights", str(empty)]) == 2
    capsys.readouterr()


def test_generated_artifacts_roundtrip_bytes(tmp_path):
    from trophomology.tropgeo import TropicalComplex

    out = tmp_path / "plane.json"
    run(["gen", "plane", "--N", "3", "--out", str(out)])
    x = TropicalComplex.load(str(out))
    out2 = tmp_path / "plane2.json"
    x.save(str(out2))
    assert out.read_bytes() == out2.read_bytes()


def test_chi_epoly_commands(tmp_path, capsys):
    out = tmp_path / "line.json"
    run(["gen", "line", "--N", "2", "--out", str(out)])
    capsys.readouterr()
    assert run(["chi", "--complex", str(out)]) == 0
    assert "chi: [1, -1]" in capsys.readouterr().out
    assert run(["epoly", "--complex", str(out)]) == 0
    assert "E = 1 - u*v" in capsys.readouterr().out
    assert run(["homology", "--complex", str(out), "--p", "1", "--format", "json"]) == 0
    rep = json.loads(capsys.readouterr().out.splitlines()[-1])
    assert rep["h"] == [0, 1] and rep["chi_p"] == -1
