import json

import pytest

from weylarr.rootsys import RootSystemId
from weylarr.verify import (
    EXHAUSTIVE,
    PAIR_LABELS,
    RANK_REQUIRED,
    REPRESENTATIVES,
    check_system,
    expected_census,
    jsonable,
    run_suite,
    summarize,
    write_report,
)


def by_prefix(results, prefix):
    return [r for r in results if r.check_id.startswith(prefix + "/")]


@pytest.fixture(scope="module")
def a3():
    return check_system("A3", EXHAUSTIVE)


def test_a3_all_pass(a3):
    assert summarize(a3)["fail"] == 0
    (card,) = by_prefix(a3, "thm:card")
    assert card.witness["|A^H1|-|A^X|"] == card.witness["h/2"] == card.witness["expected"] == 2


def test_d4_orbits_and_differences():
    res = check_system("D4", EXHAUSTIVE)
    assert summarize(res)["fail"] == 0
    cards = by_prefix(res, "thm:card")
    assert len(cards) == 3
    assert all(c.witness["ro"] and c.witness["|A^H1|-|A^X|"] == c.witness["|A^H2|-|A^X|"] == 3 for c in cards)
    assert any(r.check_id.startswith("ex:basis-RO/D4") and r.passed for r in res)


def test_f4_non_ro_difference():
    res = check_system("F4", EXHAUSTIVE)
    assert summarize(res)["fail"] == 0
    cards = by_prefix(res, "thm:card")
    assert cards and all(not c.witness["ro"] and c.witness["|A^H1|-|A^X|"] == 7 for c in cards)
    (census,) = by_prefix(res, "rem:numerical")
    assert census.witness["ro_orbits"] == 0


def test_rank_two_skips_pair_checks():
    res = check_system("G2", EXHAUSTIVE)
    skipped = [r for r in res if r.status == "skipped"]
    assert {r.check_id.split("/")[0] for r in skipped} == set(PAIR_LABELS) | {"thm:half2"}
    assert all(r.reason == RANK_REQUIRED for r in skipped)
    assert summarize(res)["fail"] == 0
    assert any(r.check_id.startswith("thm:iso/G2") and r.passed for r in res)


def test_serial_and_parallel_agree():
    scope = ["B3", "G2", "A3"]
    serial = [r.to_record() for r in run_suite(scope, REPRESENTATIVES, workers=1)]
    parallel = [r.to_record() for r in run_suite(scope, REPRESENTATIVES, workers=2)]
    assert serial == parallel
    assert [r["check_id"].split("/")[1] for r in serial][0] == "A3"


def test_d3_alias_runs_once():
    res = run_suite(["D3", "A3"], REPRESENTATIVES, workers=1)
    assert {r.check_id.split("/")[1] for r in res} == {"A3"}


def test_bad_depth():
    with pytest.raises(ValueError):
        run_suite(["A3"], "shallow")


def test_report_is_line_delimited(tmp_path):
    res = check_system("B3", REPRESENTATIVES)
    path = tmp_path / "report.jsonl"
    write_report(res, str(path), extra={"schema_version": 1})
    lines = path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == len(res)
    recs = [json.loads(x) for x in lines]
    assert all(r["schema_version"] == 1 and r["status"] in ("pass", "fail", "skipped") for r in recs)


def test_jsonable():
    from fractions import Fraction

    assert jsonable({1: Fraction(3, 2), "a": {2, 1}, "b": (Fraction(4, 2),)}) == {"1": "3/2", "a": [1, 2], "b": [2]}


@pytest.mark.parametrize("name, census", [("D4", (3, 3)), ("D7", (2, 1)), ("C6", (2, 0)), ("B3", (1, 0)), ("A3", (1, 1)), ("E7", (1, 0)), ("G2", None)])
def test_expected_census(name, census):
    assert expected_census(RootSystemId.parse(name)) == census
