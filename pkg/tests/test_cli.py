import json
from pathlib import Path

import pytest

from cubefix.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def data(name):
    return DATA / name


def test_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", data("square.json"))
    assert code == 0 and "ok" in out
    hexagon = {"type": "finite", "vertices": [f"v{i}" for i in range(6)],
               "edges": [[f"v{i}", f"v{(i + 1) % 6}"] for i in range(6)]}
    f = tmp_path / "c6.json"
    f.write_text(json.dumps(hexagon))
    code, out, _ = run(capsys, "verify", f, "--json")
    assert code == 1 and json.loads(out)["ok"] is False
    code, _, err = run(capsys, "info", f)
    assert code == 2 and "median" in err
    assert run(capsys, "info", f, "--unchecked")[0] == 0


def test_info_distance_median(capsys):
    code, out, _ = run(capsys, "info", data("square.json"), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["dimension"] == 2 and doc["hyperplanes"] == 2
    assert run(capsys, "distance", data("plane.json"), "[0,0]", "[3,2]")[1].strip() == "5"
    code, out, _ = run(capsys, "median", data("plane.json"), "[0,0]", "[2,2]", "[2,0]")
    assert json.loads(out) == [2, 0]
    code, out, _ = run(capsys, "hyperplanes", data("plane.json"), "[0,0]", "[2,0]")
    assert json.loads(out)["hyperplanes"] == [{"axis": 0, "wall": 0}, {"axis": 0, "wall": 1}]


def test_prop1(capsys, tmp_path):
    code, out, _ = run(capsys, "prop1", data("plane.json"), data("walls.json"))
    doc = json.loads(out)
    assert code == 0 and doc["triple"] == [{"axis": 0, "wall": w} for w in (0, 1, 2)]
    few = tmp_path / "few.json"
    few.write_text('[{"axis": 0, "wall": 0}, {"axis": 1, "wall": 0}]')
    assert run(capsys, "prop1", data("plane.json"), few)[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text('[{"axis": 5, "wall": 0}]')
    code, _, err = run(capsys, "prop1", data("plane.json"), bad)
    assert code == 2 and "$[0].axis" in err


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", data("dihedral_line.json"),
                       data("dihedral_action.json"), "t,s")
    doc = json.loads(out)
    assert code == 1 and doc["certificate"]["kind"] == "hyperbolic"
    assert doc["translation_estimate"] == "2"
    code, out, _ = run(capsys, "classify", data("square.json"), data("square_rotation.json"), "r")
    assert code == 0 and json.loads(out)["certificate"]["cube"]["dim"] == 2
    code, out, _ = run(capsys, "classify", data("plane.json"), data("glide_action.json"), "g")
    assert code == 1
    code, out, _ = run(capsys, "classify", data("dihedral_line.json"),
                       data("dihedral_action.json"), "t", "--radius", "0", "--power", "1")
    assert code == 3 and json.loads(out)["certificate"]["kind"] == "undecided"
    code, _, err = run(capsys, "classify", data("dihedral_line.json"),
                       data("dihedral_action.json"), "q")
    assert code == 2


def test_fixed_point(capsys):
    code, out, _ = run(capsys, "fixed-point", data("dihedral_line.json"),
                       data("dihedral_action.json"))
    doc = json.loads(out)
    assert code == 1 and doc["outcome"] == "hyperbolic_witness" and doc["word"] == ["t", "s"]
    code, out, _ = run(capsys, "fixed-point", data("square.json"), data("square_rotation.json"))
    assert code == 0 and json.loads(out)["cube"]["vertices"] == ["a", "b", "c", "d"]
    code, out, _ = run(capsys, "fixed-point", data("dihedral_line.json"),
                       data("dihedral_action.json"), "--power", "0", "--radius", "0")
    assert code == 3 and json.loads(out)["outcome"] == "undecided"
    code, _, _ = run(capsys, "fixed-point", data("dihedral_line.json"),
                     data("dihedral_action.json"), "--orbit-cap", "2")
    assert code == 3


def test_fix_set_and_orbit(capsys):
    code, out, _ = run(capsys, "fix-set", data("square.json"), data("square_rotation.json"))
    doc = json.loads(out)
    assert code == 0 and doc["vertices"] == [] and doc["cubes"] == [["a", "b", "c", "d"]]
    code, out, _ = run(capsys, "orbit", data("square.json"), data("square_rotation.json"))
    assert code == 0 and json.loads(out)["size"] == 4
    code, out, _ = run(capsys, "orbit", data("dihedral_line.json"), data("dihedral_action.json"),
                       "--orbit-cap", "10")
    assert code == 3 and json.loads(out)["complete"] is False


def test_fuzz_command(capsys):
    code, out, _ = run(capsys, "fuzz", "--cases", "5", "--seed", "2", "--suites", "helly,prop1")
    assert code == 0 and json.loads(out)["ok"]
    assert run(capsys, "fuzz", "--cases", "5", "--seed", "2", "--suites", "helly,prop1")[1] == out
    assert run(capsys, "fuzz", "--suites", "")[0] == 2
    assert run(capsys, "fuzz", "--suites", "bogus")[0] == 2


def test_export_dot(capsys):
    code, out, _ = run(capsys, "export-dot", data("square.json"), "--hyperplanes")
    assert code == 0 and out.startswith('graph "square"') and out.count("--") == 4
    code, out, _ = run(capsys, "export-dot", data("square.json"), "--action",
                       data("square_rotation.json"), "--overlay-orbit", "--overlay-fixed-cube")
    assert out.count("fillcolor") == 4 and out.count("doublecircle") == 4
    assert run(capsys, "export-dot", data("plane.json"))[0] == 2


def test_missing_file(capsys):
    assert run(capsys, "info", "/nonexistent.json")[0] == 2


def test_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
