import json

import pytest

from loopkit.core import cyclic_group
from loopkit.fixtures import load_fixture
from loopkit.suites import SUITES, THEOREMS, theorems_for
from loopkit.suites import (
    central_squares_aip_iff_endomorphic, dihedral_rejected_by_decompose, fixture_profiles_and_witnesses,
    lip_left_equals_middle_nucleus, mns_transfers_to_isostrophe_rns, nucleus_autotopism_forms,
)
from loopkit.verify import (
    COUNTEREXAMPLE, EXPECTED_FAILURE_MISSING, SKIPPED, VERIFIED, build_catalog, parse_suites, run_suites,
    verify_theorems,
)


def test_every_suite_has_theorems_with_unique_names():
    names = [t.name for t in THEOREMS]
    assert len(names) == len(set(names))
    for s in SUITES:
        assert theorems_for([s])


def test_parse_suites():
    assert parse_suites("S1..S8") == SUITES
    assert parse_suites("s5, S2,S2") == ("S2", "S5")
    assert parse_suites("S3-S4") == ("S3", "S4")
    assert parse_suites("all") == SUITES
    with pytest.raises(ValueError):
        parse_suites("S9")


# the checks must notice a violated conclusion when handed a loop outside the hypothesis

def test_checks_flag_violations():
    dot = load_fixture("iso_pair_dot")
    assert lip_left_equals_middle_nucleus(dot) is not None
    assert central_squares_aip_iff_endomorphic(load_fixture("lns_aip_nonendo6")) is not None
    assert mns_transfers_to_isostrophe_rns(dot) is not None
    assert nucleus_autotopism_forms(dot) is None


def test_fixture_check_detects_substituted_table():
    q = cyclic_group(6)
    q.name = "lns_aip_nonendo6"
    assert fixture_profiles_and_witnesses(q)["mismatches"]
    z8 = cyclic_group(8)
    z8.name = "dihedral8"
    assert dihedral_rejected_by_decompose(z8) == {"decomposed": True}


def test_small_catalog_verifies():
    report = run_suites(max_order=4)
    assert report.ok
    statuses = {r.name: r.status for r in report.results}
    assert statuses["mns_transfers_to_isostrophe_rns"] == "expected-failure-confirmed"
    assert statuses["central_squares_order_two_subloop"] == "expected-failure-confirmed"
    assert COUNTEREXAMPLE not in statuses.values()


def test_expected_failure_missing_fails_the_report():
    entries = [(f"z{n}", cyclic_group(n)) for n in range(1, 6)]
    for name, q in entries:
        q.name = name
    report = verify_theorems(entries, ["S5"])
    statuses = {r.name: r.status for r in report.results}
    assert statuses["mns_transfers_to_isostrophe_rns"] == EXPECTED_FAILURE_MISSING
    assert statuses["left_middle_nucleus_normal"] == VERIFIED
    assert not report.ok


def test_skipped_when_nothing_qualifies():
    entries = [("z3", cyclic_group(3))]
    report = verify_theorems(entries, ["S8"])
    statuses = {r.name: r.status for r in report.results}
    assert statuses["left_c_left_nucleus_normal"] == VERIFIED
    report = verify_theorems([("z1", cyclic_group(1))], ["S7"])
    assert {r.status for r in report.results if not r.name.startswith("dihedral")} >= {VERIFIED}
    assert [r.status for r in report.results if r.name == "dihedral_rejected_by_decompose"] == [SKIPPED]


def test_counterexample_carries_table_and_witness():
    from loopkit.suites import Theorem
    from loopkit import suites
    bogus = Theorem("S1", "always_commutative", "every loop commutes",
                    lambda q: None if q.is_commutative() else {"commutative": False})
    suites.THEOREMS.append(bogus)
    try:
        report = verify_theorems(build_catalog(5, fixtures=False), ["S1"])
    finally:
        suites.THEOREMS.remove(bogus)
    r = [r for r in report.results if r.name == "always_commutative"][0]
    assert r.status == COUNTEREXAMPLE
    assert r.first_failure["table"].startswith("order 5\nbase 0\n")
    assert r.first_failure["witness"] == {"commutative": False}
    assert not report.ok
    assert "always_commutative" in report.to_text()


def test_report_is_deterministic_and_worker_independent():
    entries = build_catalog(4)
    a = verify_theorems(entries, SUITES).to_text()
    b = verify_theorems(build_catalog(4), SUITES).to_text()
    c = verify_theorems(build_catalog(4), SUITES, workers=2).to_text()
    assert a == b == c
    doc = json.loads(verify_theorems(entries, ["S6"]).to_json())
    assert doc["ok"] and "seconds" not in doc
