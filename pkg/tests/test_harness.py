import json

import pytest

from knsub.harness import (
    CatalogError,
    hunt,
    hunt_names,
    load_catalog,
    parse_catalog,
    run_suite,
)
from knsub.harness.core import (
    FAILS_STATUS,
    HOLDS_STATUS,
    VACUOUS_STATUS,
    MalformedCaseError,
    PropertyCase,
    SuiteContext,
    all_properties,
    expect,
    get_property,
    run_property,
)
from knsub.predicates import HOLDS

from conftest import cyclic_sub, zmod

REQUIRED = (
    "T-l1 T-t0 T-tsm1 T-tsm2 T-lsm T-c2 T-prop-colon T-t1-1 T-t1-2 T-t1-3 T-t1-4 T-t1-5 T-t1-6 "
    "T-ti T-ciff T-t2 T-rad T-l3 T-tf2 T-chain T-int1 T-int2 T-int3 T-divint T-tsec T-csec T-l2 "
    "T-pid T-resmod T-NL T-st1 T-st2 T-s1 T-sloc T-NP T-hom1 T-hom2 T-cor-sub T-cor-quot T-ds1 "
    "T-ds2 T-ds3 T-tkn T-cor-semi-n T-cor-semi-2 T-pid-fact T-Pt E-e1 E-e E-30 E-pn E-int"
).split()

SCRUTINY_EXPECTED = {"T-int1", "T-int2", "T-int3", "T-sloc", "E-e1", "E-e"}


def _find(name, modules, instance):
    for case in get_property(name).cases(SuiteContext(modules)):
        if case.instance == instance:
            return case
    raise LookupError(instance)


def test_registry_covers_required_properties():
    names = {p.name for p in all_properties()}
    assert set(REQUIRED) <= names
    tiers = {p.name: p.tier for p in all_properties()}
    assert all(tiers[n] == "scrutiny" for n in SCRUTINY_EXPECTED)
    assert tiers["E-30"] == tiers["E-pn"] == tiers["E-int"] == "verified"


def test_run_property_holds():
    N = cyclic_sub(12, 4)
    case = _find("T-t0", [N.module], f"{N} | k=2, n=2")
    assert run_property(case).status == HOLDS_STATUS


def test_run_property_fails_with_witness():
    N = cyclic_sub(36, 6)
    case = _find("T-t1-1[n=1]", [N.module], f"{N} | k=2, n=1")
    res = run_property(case)
    assert res.status == FAILS_STATUS
    assert (res.witness["r"], res.witness["x"]) == (2, "3")
    # 2^2 * 9 = 36 is in (6) as well; both replay as violations
    M = N.module
    for x in (3, 9):
        assert M.act(4, x) in N and M.act(1, x) not in N and 2 not in N.residual


def test_run_property_vacuous_skips_conclusion():
    called = []
    case = PropertyCase("demo", "verified", "none", lambda: False, lambda: called.append(1) or HOLDS)
    assert run_property(case).status == VACUOUS_STATUS
    assert not called


def test_run_property_rejects_malformed():
    with pytest.raises(MalformedCaseError):
        run_property(PropertyCase("demo", "bogus", "x", lambda: True, lambda: HOLDS))

    def broken():
        zmod(12).index("13")

    with pytest.raises(MalformedCaseError):
        run_property(PropertyCase("demo", "verified", "x", lambda: True, broken))


def test_expect():
    assert expect(True, r=1) is HOLDS
    assert expect(False, r=1).witness == {"r": 1}


def test_empty_catalog_passes():
    report = run_suite(parse_catalog([]))
    assert report.status == "PASS" and report.tallies == []


def test_z8_catalog_ciff_all_hold():
    cat = parse_catalog([{"ring": {"zmod": 8}, "factors": [8]}])
    t = run_suite(cat, properties=["T-ciff"]).tally("T-ciff")
    assert t.fails == 0 and t.holds > 0


def test_runs_are_deterministic():
    cat = parse_catalog([{"ring": {"zmod": 12}, "factors": [12]}, {"ring": {"zmod": 4}, "factors": [4, 2]}])
    names = ["T-t1-1[n=1]", "T-prop-colon[k<n-1]", "T-ciff", "T-csec"]
    a = run_suite(cat, properties=names).to_json()
    b = run_suite(cat, properties=names).to_json()
    c = run_suite(cat, properties=names, jobs=2).to_json()
    assert a == b == c


def test_tier_selection_and_gating():
    cat = parse_catalog([{"ring": {"zmod": 6}, "factors": [6]}])
    rep = run_suite(cat, tier="scrutiny", properties=["T-t1-1", "T-t1-1[n=1]"])
    assert [t.name for t in rep.tallies] == ["T-t1-1[n=1]"]
    assert rep.tally("T-t1-1[n=1]").fails and rep.status == "PASS"
    with pytest.raises(ValueError):
        run_suite(cat, tier="bogus")


def test_catalog_parsing():
    cat = load_catalog()
    assert len(cat) == 19 and cat.symbolic == {"cmax": 1000, "tmax": 12}
    assert cat.fingerprint(kmax=4) == load_catalog().fingerprint(kmax=4) != cat.fingerprint(kmax=3)
    entry = parse_catalog([{"ring": {"zmod": 4}, "factors": [4, 2]}]).entries[0]
    assert entry.origin == "Z_4×Z_2 over Z_4"
    for bad in ({"no": 1}, [{"ring": 4}], {"modules": [], "symbolic": {"cmax": 1}}):
        with pytest.raises(CatalogError):
            parse_catalog(bad)
    with pytest.raises(CatalogError):
        parse_catalog([{"ring": {"zmod": 12}, "factors": [8]}]).modules()


def test_catalog_file_errors(tmp_path):
    with pytest.raises(CatalogError):
        load_catalog(tmp_path / "missing.json")
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(CatalogError):
        load_catalog(p)
    p.write_text(json.dumps([{"ring": {"zmod": 8}, "factors": [8]}]))
    assert load_catalog(p).modules()[0].size == 8


def test_hunts():
    res = hunt("intersection-of-semi-n-not-semi-n", bound=100)
    assert res.witness == {"c": 36, "n": 2, "parts": [4, 9], "r": 2, "m": 9}
    assert hunt("intersection-of-semi-n-not-semi-n", bound=100, space="general").witness["c"] == 12
    assert hunt("converse-of-T-t0", bound=100).witness == {"c": 6, "k": 2, "n": 1, "r": 2, "m": 9}
    assert not hunt("monotonicity").found
    assert hunt("semiprime-not-(k,1)-closed").witness["submodule"] == "0 in Z_6 over Z_6"
    assert "T-t0" in hunt_names()
    with pytest.raises(KeyError):
        hunt("no-such-property")


def test_property_hunt_on_catalog():
    assert hunt("T-csec").found
    assert not hunt("T-ciff").found


def test_default_report(default_report):
    assert default_report.status == "PASS"
    assert default_report.verified_failures == []
    assert default_report.vacuity_audit()["missing"] == []
    findings = {t.name for t in default_report.scrutiny_findings}
    assert {"T-t1-1[n=1]", "T-t2[n=1]", "E-e1", "E-e", "T-prop-colon[k<n-1]"} <= findings
    assert default_report.tally("T-int1").fails == 0
    doc = default_report.to_json()
    assert json.loads(json.dumps(doc)) == doc
