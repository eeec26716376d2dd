import io
import json

import pytest

from prelie_pbw.cli import run
from prelie_pbw.prelie import Element, element_from_json, parse_element


def call(*argv):
    out = io.StringIO()
    rc = run(list(argv), out=out)
    return rc, out.getvalue()


def test_magnus():
    rc, out = call("magnus", "--order", "2")
    assert rc == 0
    assert out.splitlines() == ["a", "-1/2 a(a)"]
    rc, fp = call("magnus", "-n", "4", "--route", "fixed_point")
    assert fp == call("magnus", "-n", "4")[1]


def test_solomon():
    rc, out = call("solomon", "--i", "1", "--input", "a.a", "--order", "3")
    assert rc == 0 and out.strip() == "-1 a(a)"
    rc, out = call("solomon", "--i", "2", "-i", "a.a", "-n", "3")
    assert out.splitlines() == ["a.a", "a(a)"]


def test_pbw():
    rc, out = call("pbw", "--input", "a.a.a", "--order", "3")
    lines = out.splitlines()
    assert rc == 0
    assert lines[0] == "sol_1: 1/2 a(a,a) + 2 a(a(a))"
    assert lines[-1] == "sum check: ok"
    rc, js = call("pbw", "--input", "a.a + b", "--generators", "a,b", "--format", "json")
    data = json.loads(js)
    assert data["sum_check"] is True and len(data["components"]) == 4


def test_star_and_coproduct():
    rc, out = call("star", "--lhs", "a", "--rhs", "a.a")
    assert out.splitlines() == ["a.a.a", "2 a.a(a)", "a(a,a)"]
    rc, out = call("coproduct", "--input", "a")
    assert out.strip() == "1 (x) a + a (x) 1"


def test_json_matches_text():
    for argv in (["magnus", "-n", "4"], ["star", "--lhs", "a + a(a)", "--rhs", "a.a"],
                 ["solomon", "--i", "1", "-i", "a.a.a", "-n", "4"]):
        _, text = call(*argv)
        _, js = call(*argv, "--format", "json")
        from_text = parse_element(" + ".join(text.splitlines()).replace("+ -", "-"))
        assert element_from_json(js) == from_text


def test_output_is_stable():
    assert call("magnus", "-n", "5") == call("magnus", "-n", "5")


def test_verify():
    rc, out = call("verify", "--suite", "hopf", "--max-degree", "4")
    assert rc == 0
    assert out.strip().endswith("0 failed")
    rc, out = call("verify", "--suite", "magnus", "--max-degree", "5", "--format", "json")
    assert rc == 0 and json.loads(out)["failed"] == 0


def test_ode(tmp_path):
    p = tmp_path / "airy.json"
    p.write_text(json.dumps({"dim": 2, "entries": [["0", "1"], ["t", "0"]]}))
    rc, out = call("ode", "--matrix", str(p), "--order", "4", "--time", "0.2", "--step", "1/1000")
    assert rc == 0 and "estimated convergence order" in out
    rc, js = call("ode", "--matrix", str(p), "--order", "2", "--time", "1/5", "--format", "json")
    rep = json.loads(js)
    assert rep["order"] == 2 and len(rep["deviations"]) == 3


def test_errors(capsys):
    assert call("solomon", "--i", "1", "--input", "a(", "--order", "3")[0] == 2
    assert "offset 2" in capsys.readouterr().err
    assert call("magnus", "--order", "0")[0] == 2
    assert call("magnus", "--order", "9")[0] == 2
    assert call("magnus", "--bogus")[0] == 2
    assert call("star", "--lhs", "a", "--rhs", "c")[0] == 2  # unknown label
    assert call("ode", "--matrix", "/nonexistent.json")[0] == 1
