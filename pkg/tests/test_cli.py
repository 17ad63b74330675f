import json
import shutil
import subprocess

import pytest

from circlegraphs.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--json", *argv)
    assert code == 0
    return json.loads(out)


def test_recognize_fixtures(capsys):
    assert run_json(capsys, "recognize", "@W5", "--method", "both")["verdict"] == "NOT_CIRCLE"
    data = run_json(capsys, "recognize", "@W7", "--method", "obstruction")
    assert data["obstruction"] == "W7" and data["ops"] == []
    data = run_json(capsys, "recognize", "@BW4", "--method", "obstruction")
    assert data["obstruction"] in ("W5", "BW3", "W7") and data["ops"]


def test_interlace_k44(capsys):
    data = run_json(capsys, "interlace", "@K44_DOW")
    nb = {b for a, b in data["edges"] if a == "1"} | {a for a, b in data["edges"] if b == "1"}
    assert nb == {"2", "a", "d"}


def test_realize_roundtrip(capsys, tmp_path):
    g = tmp_path / "p4.txt"
    g.write_text("graph P 4\ne 0 1\ne 1 2\ne 2 3\n")
    code, out, _ = run(capsys, "realize", str(g))
    assert code == 0
    w = tmp_path / "w.txt"
    w.write_text(out)
    data = run_json(capsys, "interlace", str(w))
    assert sorted(map(sorted, data["edges"])) == [["0", "1"], ["1", "2"], ["2", "3"]]
    assert run_json(capsys, "realize", str(g), "--planar")["planar"] is True


def test_matrix_and_circuit_commands(capsys):
    data = run_json(capsys, "ias", "@W5")
    assert len(data["rows"]) == 6 and len(data["labels"]) == 18
    assert run_json(capsys, "tcircuits", "@W7", "--max", "3")["circuits"] == []
    circs = run_json(capsys, "tcircuits", "@W7", "--max", "4")["circuits"]
    assert circs and all(len(c) == 8 and c.count("-") == 4 for c in circs)
    assert run_json(capsys, "aut", "@W7")["automorphisms"] == 336


def test_touch_and_detach(capsys):
    data = run_json(capsys, "touch", "@K44_DOW", "--partition", "pppppppp")
    assert data["order"] == 1
    data = run_json(capsys, "detach", "@K44_DOW", "--vertex", "1", "--kind", "s")
    assert data["n"] == 7 and data["dow"]


def test_delta_matroid_commands(capsys, tmp_path):
    m = tmp_path / "m.txt"
    m.write_text("matrix 2 2 gf2\n0 1\n1 0\n")
    code, out, _ = run(capsys, "dm", "from-matrix", str(m))
    assert code == 0 and out.splitlines() == ["dm 2", "-", "0 1"]
    d = tmp_path / "d.txt"
    d.write_text(out)
    assert run_json(capsys, "dm", "check", str(d)) == {"binary": True, "delta_matroid": True,
                                                       "even": True}
    assert run_json(capsys, "dm", "twist", str(d), "--set", "0")["feasible"] == [[0], [1]]
    assert run_json(capsys, "dm", "loop", str(d), "--set", "0")["feasible"] == [[], [0], [0, 1]]
    assert run_json(capsys, "dm", "reconstruct", str(d))["rows"] == [[0, 1], [1, 0]]
    assert run_json(capsys, "dm", "eulerian", str(d))["eulerian"] is True
    assert run_json(capsys, "dm", "regular", str(d))["regular"] is True


def test_signing_and_regularity(capsys):
    assert run_json(capsys, "t-regular", "@BW3")["t_regular"] is False
    code, out, _ = run(capsys, "pu-sign", "@K5_MCP")
    assert code == 2


def test_cross_bound_and_report(capsys, tmp_path):
    code, out, _ = run(capsys, "fixture", "K44_DOW")
    w = tmp_path / "k44.txt"
    w.write_text(out)
    code, out, _ = run(capsys, "interlace", str(w))
    g = tmp_path / "g.txt"
    g.write_text(out)
    assert run_json(capsys, "cross-bound", str(g))["bound"] == 2
    rep = run_json(capsys, "report", "@W5")
    assert rep["circle"] is False and rep["consistent"] is True


def test_enumerate(capsys):
    assert run_json(capsys, "enumerate-4regular", "8", "--simple")["count"] == 6


@pytest.mark.parametrize("argv,code", [
    (["recognize", "/nonexistent/file"], 2),
    (["fixture", "NOPE"], 2),
    (["recognize", "@K44_DOW"], 2),
    (["cross-bound", "@BW4"], 3),
    (["dm", "twist", "@W5"], 2),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


@pytest.mark.skipif(shutil.which("circlegraphs") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["circlegraphs", "recognize", "@BW3"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("NOT_CIRCLE")
