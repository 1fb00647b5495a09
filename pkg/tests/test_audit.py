import json

import pytest

from invgen import audit, config
from invgen.audit import AUDIT_DEFAULTS, SUITES, Claim, audit_config, run_audit, run_claim
from invgen.perm import CapExceeded, InvgenError


def test_config_precedence(monkeypatch):
    monkeypatch.delenv("INVGEN_CAP_LATTICE_ORDER", raising=False)
    assert audit_config().lattice_order == AUDIT_DEFAULTS["lattice_order"]
    monkeypatch.setenv("INVGEN_CAP_LATTICE_ORDER", "700")
    assert audit_config().lattice_order == 700
    assert audit_config({"lattice_order": 900}).lattice_order == 900
    assert audit_config({"lattice_order": None}).lattice_order == 700


def test_run_audit_restores_config():
    before = config.get_config()
    run_audit(["cor4.10"], overrides={"elements": 123_456})
    assert config.get_config() == before


def test_unknown_suite():
    with pytest.raises(InvgenError):
        run_audit(["no-such-suite"])


def test_cap_becomes_skipped():
    def compute():
        raise CapExceeded("lattice order", 10, 5)
    r = run_claim(Claim("x/1", "anchor", "S(9)", 2, "PAPER", compute))
    assert r.status == "skipped" and r.computed is None
    assert "cap is 5" in r.detail


def test_bool_expectations_are_strict():
    r = run_claim(Claim("x/1", "a", "e", True, "PAPER", lambda: (1, "")))
    assert r.status == "fail"
    r = run_claim(Claim("x/2", "a", "e", 3, "PAPER", lambda: (3, "")))
    assert r.status == "pass"


def test_suites_registered():
    assert {"prop4.1", "prop4.2", "prop4.3", "prop4.4", "prop4.5", "lemma4.7", "prop4.8",
            "cor4.10", "prop4.11", "thm2.5", "thm2.7", "thm2.8", "lemma2.2", "bounds"} <= set(SUITES)


def test_report_shape_and_determinism():
    a = run_audit(["prop4.2"])
    b = run_audit(["prop4.2"])
    assert a.canonical() == b.canonical()
    d = a.to_dict()
    assert d["schema"] == "invgen-report/1"
    assert d["summary"]["total"] == len(d["records"])
    ids = [r["id"] for r in d["records"]]
    assert len(set(ids)) == len(ids)
    for line in a.json_lines():
        json.loads(line)
    assert "elapsed_ms" not in a.canonical()


def test_workers_do_not_change_records():
    one = run_audit(["prop4.4"], workers=1)
    four = run_audit(["prop4.4"], workers=4)
    strip = lambda rep: [r.as_dict(timings=False) for r in rep.records]
    assert strip(one) == strip(four)


def test_prop44_exception():
    rep = run_audit(["prop4.4"])
    assert rep.summary["fail"] == 0
    exc = [r for r in rep.records if r.id.endswith("exceptions")]
    assert exc and all(r.computed == 1 for r in exc if isinstance(r.computed, int))


def test_bounds_suite_reports_known_defects():
    rep = run_audit(["bounds"])
    failed = {r.id for r in rep.records if r.status == "fail"}
    assert rep.exit_status == 1
    assert any("E_sol" in f for f in failed)
    quoted = [r for r in rep.records if r.id.startswith("bounds/E(") or "E(16" in r.id]
    assert len(quoted) == 6 and all(r.passed for r in quoted)


def test_helpers():
    assert audit.cycles1((1, 0, 3, 4, 2)) == ((1, 2), (3, 4, 5))
    assert audit.is_2group(32) and not audit.is_2group(24)
