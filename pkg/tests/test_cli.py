import io
import json
import subprocess
import sys

import pytest

from plumbing_hom.algebra import hom_dim
from plumbing_hom.cli import HomDimTable, main
from plumbing_hom.quiver import build_dynkin, build_omega


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_dims_a5_quotient():
    code, text = run("dims", "--quiver", "A5", "--from", "1", "--to", "1", "--window", "-16..4",
                     "--side", "quotient")
    assert code == 0
    table = HomDimTable.from_json(json.loads(text))
    assert table.window == (-16, 4) and table.side == "quotient"
    assert sorted(p for p, d in table.dims.items() if d) == [-16, -14, -8, -6, 0, 2]
    assert set(table.dims.values()) <= {0, 1}
    assert HomDimTable.from_json(table.to_json()) == table


def test_dims_a1():
    code, text = run("dims", "--quiver", "A1", "--from", "1", "--to", "1", "--window", "-4..4",
                     "--side", "quotient")
    assert code == 0
    dims = json.loads(text)["dims"]
    assert dims == {str(p): int(p % 2 == 0) for p in range(-4, 5)}


def test_dims_e6_vertex2():
    code, text = run("dims", "--quiver", "E6", "--from", "2", "--to", "2", "--window", "-21..21",
                     "--side", "quotient")
    assert code == 0
    dims = {int(p): d for p, d in json.loads(text)["dims"].items()}
    omega = build_omega(build_dynkin("E", 6))
    for p in range(-21, 1):
        assert dims[p] == hom_dim(omega, 2, 2, p)
    assert all(dims[p] == dims[2 - p] for p in range(-19, 22))
    assert all(dims[p] == 1 for p in (-21, -14, -7, 0, 7, 14, 21))
    assert dims[1] == 0


def test_formats_and_determinism():
    args = ("dims", "--quiver", "A3", "--window", "-6..6")
    first = run(*args)[1]
    assert first == run(*args)[1]
    data = json.loads(first)
    assert len(data) == 2 * 3 * 3
    _, csv_text = run(*args, "--format", "csv")
    lines = csv_text.splitlines()
    assert lines[0] == "from,to,side,degree,dim"
    assert len(lines) == 1 + 18 * 13
    _, md = run(*args, "--format", "md")
    assert md.startswith("| from | to | side | degree | dim |")


def test_default_window():
    _, text = run("dims", "--quiver", "A2", "--from", "1", "--to", "2", "--side", "wrapped")
    assert json.loads(text)["window"] == [-15, 13]


def test_window_cap(monkeypatch):
    code, _ = run("dims", "--quiver", "A2", "--window", "-150..150")
    assert code == 2
    monkeypatch.setenv("PLUMBING_HOM_MAX_WINDOW", "400")
    code, _ = run("dims", "--quiver", "A2", "--from", "1", "--to", "1", "--window", "-150..150",
                  "--side", "wrapped")
    assert code == 0
    monkeypatch.setenv("PLUMBING_HOM_MAX_WINDOW", "many")
    assert run("dims", "--quiver", "A2", "--window", "0..1")[0] == 2


@pytest.mark.parametrize("argv", [
    ("dims",),
    ("dims", "--quiver", "B3"),
    ("dims", "--quiver", "A3", "--window", "4..1"),
    ("dims", "--quiver", "A3", "--window", "nonsense"),
    ("dims", "--quiver", "A3", "--from", "7"),
    ("frobnicate", "--quiver", "A3"),
    ("mul", "--quiver", "E6", "e(1)"),
    ("mul", "--quiver", "A3", "x(9)"),
    ("mul", "--quiver", "A3", "u(1,3)"),
    ("pairing", "--quiver", "A3", "--from", "1"),
])
def test_config_errors(argv, capsys):
    assert run(*argv)[0] == 2
    err = json.loads(capsys.readouterr().err)
    assert set(err) == {"error", "message"}


def test_mul():
    code, text = run("mul", "--quiver", "A5", "x(1)", "x(1)")
    assert code == 0 and text.splitlines()[0] == "0"
    code, text = run("mul", "--quiver", "A5", "v_inv(1) * v(1)")
    assert text.splitlines() == ["e(1)", "# from 1 to 1, degree 0"]
    code, text = run("mul", "--quiver", "A5", "u(2,3) u(3,2) u(2,3) u(1,2) u(2,1)", "--format", "json")
    payload = json.loads(text)
    assert payload["element"] == "0" and payload["degree"] == -2
    code, text = run("mul", "--quiver", "A5", "x(3)", "x(3)", "--format", "json")
    assert json.loads(text)["element"] == "v(3,3) v(3,3)"


def test_mul_not_composable(capsys):
    assert run("mul", "--quiver", "A5", "u(1,2)", "u(3,4)")[0] == 3
    assert json.loads(capsys.readouterr().err)["error"] == "NotComposable"


def test_mul_de_flag():
    code, text = run("mul", "--quiver", "E6", "--experimental-de", "v(2)", "v_inv(2)")
    assert code == 0 and text.startswith("e(2)")


@pytest.mark.parametrize("argv,expected", [
    (("verify", "--quiver", "A5", "--suite", "duality", "--window", "-12..14"), 0),
    (("verify", "--quiver", "A3", "--suite", "ginzburg", "--window", "-8..0"), 0),
    (("verify", "--quiver", "A1", "--suite", "all"), 0),
    (("verify", "--quiver", "A2", "--suite", "all", "--seed-check", "--window", "-8..8"), 0),
    (("verify", "--quiver", "E6", "--suite", "e6-rings", "--window", "-21..21"), 1),
])
def test_verify(argv, expected):
    code, text = run(*argv)
    assert code == expected
    assert text.splitlines()[-1].startswith("PASS" if expected == 0 else "FAIL")


def test_verify_json():
    code, text = run("verify", "--quiver", "D4", "--suite", "gap", "--window", "-4..4", "--format", "json")
    data = json.loads(text)
    assert code == 0 and data["ok"] and data["checks"][0]["check"] == "degree-1 gap"


def test_build_and_basis():
    _, text = run("build", "--quiver", "A2")
    data = json.loads(text)
    assert data["phi"] == {"1": 2, "2": 1}
    assert [a["name"] for a in data["arrows"]].count("vinv(2,1)") == 1
    _, md = run("build", "--quiver", "A2", "--format", "md")
    assert md.startswith("# A2, h = 3")
    _, text = run("basis", "--quiver", "A3", "--from", "1", "--to", "2", "--window", "-6..0",
                  "--side", "wrapped")
    rows = json.loads(text)
    assert [r["degree"] for r in rows] == [-6, -3, 0]
    assert rows[-1]["basis"] == ["u(1,2)"]


def test_pairing_cli():
    code, text = run("pairing", "--quiver", "A3", "--from", "1", "--to", "1", "--degree", "2",
                     "--format", "json")
    data = json.loads(text)
    assert code == 0 and data["determinant"] == "1"
    code, text = run("pairing", "--quiver", "A3", "e(1)", "u(2,1) u(3,2) vinv(3,1)")
    assert code == 0 and text.strip() == "1"
    assert run("pairing", "--quiver", "A3", "e(1)", "e(1)")[0] == 2


def test_quiver_file(tmp_path):
    path = tmp_path / "d4.json"
    path.write_text(json.dumps({"series": "D", "rank": 4, "arrows": [[2, 1], [2, 3], [2, 4]]}))
    code, text = run("dims", "--quiver", str(path), "--from", "1", "--to", "1", "--window", "-4..0",
                     "--side", "wrapped")
    assert code == 0
    assert json.loads(text)["dims"]["0"] == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run("dims", "--quiver", str(bad))[0] == 2


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "plumbing_hom.cli", "mul", "--quiver", "A1", "x(1)", "x(1)"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "v(1,1) v(1,1)"
