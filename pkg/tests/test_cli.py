import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings

from conftest import LANDAU, LANDAU_L1, field_elements, operators
from orejordan import load_spec, parse_operator
from orejordan.cli import Report, Session, dump_reports, load_reports, main, run_command, \
    run_session
from orejordan.cli.main import DEFAULT_FIELD

ROOT = Path(__file__).resolve().parent.parent
CORPUS = sorted((ROOT / "corpus").glob("*.session"))


def fresh():
    return Session.from_field(DEFAULT_FIELD)


def run(session, *commands):
    return [run_command(session, c) for c in commands]


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_corpus_matches_pinned(path):
    _, reports, code = run_session(path.read_text(encoding="utf-8"))
    assert code == 0
    assert all(r.ok for r in reports)
    pinned = path.with_suffix(".expected.json").read_text(encoding="utf-8")
    assert dump_reports(reports, timing=False) == pinned
    assert "\r" not in pinned


def test_determinism():
    text = CORPUS[0].read_text(encoding="utf-8")
    a = dump_reports(run_session(text)[1], timing=False)
    b = dump_reports(run_session(text)[1], timing=False)
    assert a == b


def test_report_round_trip():
    for path in CORPUS:
        _, reports, _ = run_session(path.read_text(encoding="utf-8"))
        for r in reports:
            assert Report.from_json(r.to_json()) == r
        assert load_reports(dump_reports(reports)) == reports
    assert dump_reports([]) == "[]\n"


def test_gauge_command():
    s = fresh()
    (_, r) = run(s, f"def L = {LANDAU}", "gauge L")
    assert r.ok and r.result["gauge"] == [1, 3]
    assert r.result["omega"]["expanded"] == "3*s"
    assert r.result["staircase"] == [[3, 0]]


def test_intersect_then_member():
    s = fresh()
    reports = run(s, "def A = dx+1", "def B = dx+x*dy", "intersect A B",
                  f"def L1 = {LANDAU_L1}", "member L1 result")
    assert all(r.ok for r in reports)
    assert reports[2].result["staircase"] == [[2, 1], [3, 0]]
    assert reports[-1].result == {"member": True}


@pytest.mark.parametrize("commands, code, kind", [
    (["analyze {chain()}"], 2, "InvalidChain"),
    (["mul dx +"], 1, "ParseError"),
    (["gb {ideal(dx + q)}"], 1, "UnknownSymbol"),
    (["def A = dx", "def A = dy"], 1, "DuplicateName"),
    (["def unit = dx"], 1, "ParseError"),
    (["def x = dx"], 1, "DuplicateName"),
    (["def I = ideal(dx)", "mul I dy"], 2, "WrongKind"),
    (["mul {dx/0} dy"], 2, "DivisionByZero"),
    (["frobnicate dx"], 1, "ParseError"),
    (["gauge"], 1, "ParseError"),
    (["refine {factors(dx)} {factors(dy)}"], 2, "MismatchedTop"),
])
def test_error_reports(commands, code, kind):
    reports = run(fresh(), *commands)
    last = reports[-1]
    assert not last.ok and last.exit_code == code
    assert last.error["type"] == kind and last.result == {}


def test_parse_error_position():
    (r,) = run(fresh(), "mul {dx + * dy} dy")
    assert r.error["type"] == "ParseError" and isinstance(r.error["position"], int)


def test_budget_exit_code():
    s = Session.from_field(DEFAULT_FIELD, pair_budget=1)
    (r,) = run(s, "intersect {dx+1} {dx+x*dy}")
    assert r.exit_code == 3 and r.error["type"] == "ResourceExceeded"


def test_session_stops_at_first_error():
    text = "[field]\nderivations = d\nvariables = x\n[run]\nmul d d\nchain {chain(d, unit)}\nanalyze {chain()}\nmul d d\n"
    _, reports, code = run_session(text)
    assert [r.ok for r in reports] == [True, True, False]
    assert code == 2 and reports[-1].error["type"] == "InvalidChain"


def test_field_errors():
    _, reports, code = run_session("[field]\nderivations = dx\ngenerators = T\n")
    assert code == 1 and reports[0].command == "[field]"
    assert reports[0].error["type"] == "ClosureError"
    _, reports, code = run_session("mul dx\n")
    assert code == 1 and reports[0].error["type"] == "ParseError"


def test_main_flags(tmp_path, capsys):
    path = tmp_path / "s.session"
    path.write_text("[field]\nderivations = dx, dy\nvariables = x, y\n"
                    "[defs]\nA = dx + y*dy\n[run]\nmul A A\n", encoding="utf-8")
    assert main(["--session", str(path), "--json", "--eval", "gauge A"]) == 0
    reports = json.loads(capsys.readouterr().out)
    assert [r["command"] for r in reports] == ["def A = dx + y*dy", "mul A A", "gauge A"]
    assert reports[1]["result"]["operator"] == "dx^2 + 2*y*dx*dy + y^2*dy^2 + y*dy"

    assert main(["--session", str(path), "--order", "dy>dx", "--json"]) == 0
    reports = json.loads(capsys.readouterr().out)
    assert reports[1]["result"]["operator"] == "y^2*dy^2 + 2*y*dx*dy + dx^2 + y*dy"

    assert main(["--eval", "mul dx x"]) == 0
    assert "x*dx + 1" in capsys.readouterr().out
    assert main(["--pair-budget", "1", "--eval", "intersect {dx+1} {dx+x*dy}"]) == 3
    assert main(["--pair-budget", "0", "--eval", "mul dx"]) == 1
    assert main([]) == 1
    assert main(["--session", str(tmp_path / "missing")]) == 1
    capsys.readouterr()


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "orejordan", "--json", "--eval", "gauge {dx^2}"],
                         capture_output=True, text=True, check=True).stdout
    (report,) = json.loads(out)
    assert report["result"]["gauge"] == [1, 2]


def test_render_round_trip_corpus():
    for path in CORPUS:
        session, reports, _ = run_session(path.read_text(encoding="utf-8"))
        for value in session.operators().values():
            text = value.render(session.order)
            assert parse_operator(text, session.spec) == value


DEFAULT_SPEC = load_spec(DEFAULT_FIELD)


@settings(max_examples=50, deadline=None)
@given(operators(DEFAULT_SPEC, field_elements(DEFAULT_SPEC, ["x", "y"]), max_order=3))
def test_render_round_trip_random(f):
    s = fresh()
    assert parse_operator(s.render(f), s.spec) == f
