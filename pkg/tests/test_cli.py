import io
import json
import subprocess
import sys

import pytest

from conftest import CORPUS
from fwpre.cli import main

MOTIVATING = str(CORPUS / "motivating.fw")


def call(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_pretty(capsys):
    code, out, _ = call(capsys, "parse", MOTIVATING)
    assert code == 0 and out.startswith("v := a - c;\nu := a + b;\nfork {")


def test_parse_ast_json(capsys):
    code, out, _ = call(capsys, "parse", "--ast-json", MOTIVATING)
    tree = json.loads(out)
    assert code == 0 and tree["kind"] == "seq" and tree["id"] == 1
    assert tree["first"] == {"id": 2, "kind": "assign", "target": "v", "expr": "a - c", "span": tree["first"]["span"]}


def test_parse_error(capsys, monkeypatch):
    code, _, err = call(capsys, "parse", stdin="x := a + ", monkeypatch=monkeypatch)
    assert code == 1
    assert err.startswith("<stdin>:1:10:") and "expected" in err


def test_analyze(capsys):
    code, out, _ = call(capsys, "analyze", MOTIVATING)
    data = json.loads(out)
    assert code == 0 and data["universe"] == ["a-c", "a+b"]
    n12 = data["nodes"]["12"]
    assert n12["stmt"] == "x := a + b"
    assert n12["C"] == ["c", "y", "z"] and n12["mce"] == ["a-c"]
    assert n12["cpavPre"] == ["a+b"]
    assert set(n12) >= {"mPre", "mPost", "antPre", "antPost", "cpavPost"}


def test_analyze_point(capsys):
    code, out, _ = call(capsys, "analyze", "--point", "5", MOTIVATING)
    assert code == 0 and list(json.loads(out)["nodes"]) == ["5"]
    code, _, err = call(capsys, "analyze", "--point", "99", MOTIVATING)
    assert code == 2


def test_optimize(capsys, tmp_path):
    target = tmp_path / "out.fw"
    code, _, err = call(capsys, "optimize", "--dump-rewrites", "-o", str(target), MOTIVATING)
    assert code == 0
    assert target.read_text() == (CORPUS / "expected" / "motivating.fw").read_text()
    record = json.loads(err)
    assert record["temps"] == {"a+b": "t1"}
    assert [r["kind"] for r in record["rewrites"]] == ["split", "replace", "replace"]


def test_optimize_prefix(capsys, monkeypatch):
    code, out, _ = call(capsys, "optimize", "--temp-prefix", "h", stdin="x := a+b; y := a+b", monkeypatch=monkeypatch)
    assert out.split() == "h1 := a + b; x := h1; y := h1".split()


def test_run(capsys):
    code, out, _ = call(capsys, "run", MOTIVATING, "--state", '{"a":1,"b":2,"c":3}')
    data = json.loads(out)
    assert code == 0
    assert data["state"] == {"a": 1, "b": 2, "c": 2, "u": 3, "v": -2, "x": 3, "y": 3, "z": -1}
    code, out, _ = call(capsys, "run", MOTIVATING, "--state", '{"a":1,"b":2,"c":3}', "--schedule", "5:2,1")
    assert code == 0 and json.loads(out)["state"]["z"] == -1


def test_run_skip(capsys, monkeypatch):
    code, out, _ = call(capsys, "run", stdin="skip", monkeypatch=monkeypatch)
    assert code == 0 and json.loads(out)["state"] == {}


def test_run_state_from_file(capsys, tmp_path):
    f = tmp_path / "s.json"
    f.write_text('{"a": 1, "b": 2, "c": 3}')
    code, out, _ = call(capsys, "run", MOTIVATING, "--state", f"@{f}")
    assert code == 0 and json.loads(out)["state"]["u"] == 3


def test_run_errors(capsys, monkeypatch):
    code, out, _ = call(capsys, "run", stdin="x := y + 1", monkeypatch=monkeypatch)
    assert code == 2 and json.loads(out)["error"]["kind"] == "UnboundVariable"
    code, out, _ = call(capsys, "run", "--state", "[1]", stdin="skip", monkeypatch=monkeypatch)
    assert code == 2


def test_run_fuel(capsys, monkeypatch):
    code, out, _ = call(
        capsys, "run", "--fuel", "5", "--state", '{"x": 0}', stdin="while 0 <= x do { x := x + 1 }", monkeypatch=monkeypatch
    )
    assert code == 2 and json.loads(out)["error"]["kind"] == "FuelExhausted"


def test_verify(capsys):
    code, out, _ = call(capsys, "verify", "--states", "50", MOTIVATING)
    assert code == 0 and out.startswith("PASS: 100 comparisons")
    code, out, _ = call(capsys, "verify", "--json", "--seed", "3", MOTIVATING)
    assert json.loads(out)["passed"] is True


def test_verify_bound(capsys, monkeypatch):
    code, _, err = call(capsys, "verify", stdin="fork { {skip} {skip} {skip} {skip} {skip} }", monkeypatch=monkeypatch)
    assert code == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fwpre", "parse", MOTIVATING], capture_output=True, text=True)
    assert proc.returncode == 0 and "fork {" in proc.stdout
