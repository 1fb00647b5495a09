import csv
import io
import json

import pytest

from invgen import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_s6(capsys):
    code, out, _ = run(capsys, "analyze", "S(6)")
    assert code == 0
    assert "order      720" in out
    assert "d          2" in out
    assert "d_I        3 (cover)" in out
    assert "half-n: 3  slack 0  ok" in out


def test_analyze_json(capsys):
    code, out, _ = run(capsys, "analyze", "B(4)", "--json")
    rep = json.loads(out)
    assert code == 0
    assert (rep["order"], rep["d_I"], rep["degree"]) == (18, 3, 6)
    assert len(rep["witness"]) == 3
    assert any(b["bound"].startswith("completely reducible") and b["holds"] for b in rep["bounds"])


def test_analyze_trivial():
    rep = cli.analyze("C(1)")
    assert rep["order"] == 1 and rep["d"] == 0 and rep["d_I"] == 0
    assert rep["witness"] == []


def test_analyze_primitivity():
    assert cli.analyze("S(5)")["primitive"]
    rep = cli.analyze("wr(C(2),S(3))")
    assert rep["transitive"] and not rep["primitive"]
    assert not cli.analyze("dp(C(2),C(3))")["transitive"]


def test_parse_error_exit(capsys):
    code, _, err = run(capsys, "analyze", "wr(C(2)")
    assert code == 2
    assert "offset 7" in err
    assert err.splitlines()[-1] == "  " + " " * 7 + "^"


def test_build_error_exit(capsys):
    code, _, err = run(capsys, "analyze", "D(2)")
    assert code == 2
    assert "error" in err


def test_bounds_csv(capsys):
    code, out, _ = run(capsys, "bounds", "--s-range", "2..4", "--primes", "2,3", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 6
    assert rows[2] == {"s": "3", "p": "2", "s_p": "1", "lpp": "3", "ws": "3/2", "E_sol": "1",
                       "E": "1"}


def test_bounds_json_and_text(capsys):
    code, out, _ = run(capsys, "bounds", "--s-range", "12..12", "--primes", "2", "--format", "json")
    assert json.loads(out) == [{"s": 12, "p": 2, "s_p": 4, "lpp": 4, "ws": "9/2", "E_sol": 4,
                                "E": 4}]
    code, out, _ = run(capsys, "bounds", "--s-range", "2..3", "--primes", "5")
    assert out.splitlines()[0].split() == cli.BOUND_FIELDS
    assert out.splitlines()[1].split()[-1] == "1"


@pytest.mark.parametrize("argv", [
    ["bounds", "--s-range", "4..2"],
    ["bounds", "--s-range", "x"],
    ["bounds", "--primes", "2,4"],
    ["audit", "--suite", "nope"],
    ["frobnicate"],
])
def test_bad_arguments(argv, capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(argv)
    assert info.value.code == 2


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    assert "Sym(6)" in out and "d_I=3" in out
    code, out, _ = run(capsys, "catalog", "--json")
    entries = json.loads(out)
    names = {e["name"] for e in entries}
    assert {"Sym(6)", "B(4)", "Sp(4,2)"} <= names


def test_audit_json_lines(capsys):
    code, out, _ = run(capsys, "audit", "--suite", "cor4.10", "--json")
    lines = [json.loads(x) for x in out.splitlines()]
    assert lines[0]["schema"] == "invgen-report/1" and lines[0]["type"] == "header"
    assert lines[-1]["type"] == "summary"
    assert code == (1 if lines[-1]["fail"] else 0)
    assert all(x["type"] == "claim" for x in lines[1:-1])


def test_audit_exit_on_failure(capsys):
    # the bounds suite carries known false statements, so the exit status is 1
    code, out, _ = run(capsys, "audit", "--suite", "bounds")
    assert code == 1
    assert "FAIL" in out
    assert out.splitlines()[-1].endswith("claims")


def test_audit_infrastructure_error(monkeypatch, capsys):
    def boom(*a, **k):
        raise RuntimeError("disk on fire")
    monkeypatch.setattr(cli, "run_audit", boom)
    code, _, err = run(capsys, "audit")
    assert code == 2
    assert "internal error" in err
