import json
import subprocess
import sys

import pytest

from weylarr import __version__
from weylarr.cli import main
from weylarr.verify import IN_SCOPE_LABELS


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_roots_c3(capsys):
    code, out, _ = run(capsys, "roots", "C3", "--json")
    recs = records(out)
    assert code == 0 and len(recs) == 9
    assert sorted(r["result"]["height"] for r in recs) == [1, 1, 1, 2, 2, 3, 3, 4, 5]
    assert [r["result"]["coeffs"] for r in recs if r["result"]["is_highest"]] == [[2, 2, 1]]


def test_roots_a1_text(capsys):
    code, out, _ = run(capsys, "roots", "A1")
    assert code == 0
    assert "1 positive roots, h = 2, exponents = [1]" in out


def test_roots_e8_json(capsys):
    _, out, _ = run(capsys, "roots", "E8", "--json")
    assert len(records(out)) == 120


def test_record_schema(capsys):
    _, out, _ = run(capsys, "roots", "A2", "--json")
    for rec in records(out):
        assert set(rec) == {"schema_version", "command", "inputs", "version", "elapsed", "result"}
        assert rec["schema_version"] == 1 and rec["command"] == "roots" and rec["version"] == __version__
        assert rec["inputs"] == {"type": "A2"}


def test_pairs_d4_orbits(capsys):
    _, out, _ = run(capsys, "pairs", "D4", "--orbits", "--json")
    recs = records(out)
    assert len(recs) == 3 and all(r["result"]["is_ro"] for r in recs)


def test_pairs_b4_ro_a12_empty(capsys):
    code, out, _ = run(capsys, "pairs", "B4", "--ro-only", "--a12-only", "--json")
    assert code == 0 and records(out) == []


def test_pairs_a3(capsys):
    _, out, _ = run(capsys, "pairs", "A3")
    assert out.strip().splitlines()[-1].endswith("1 A1^2 orbit(s), 1 RO")


def test_pairs_rank_two(capsys):
    code, out, _ = run(capsys, "pairs", "G2", "--json")
    assert code == 0 and records(out)[0]["result"] == {"skipped": "ℓ ≥ 3 required"}


@pytest.mark.parametrize("name, spec, key, value", [
    ("D4", "orbit:0", "difference", [3, 3]),
    ("E8", "orbit:0", "difference", [23, 23]),
    ("A3", "orbit:0", "|A^X|", 1),
    ("D5", "orbit:1", "difference", [5, 5]),
])
def test_restrict(capsys, name, spec, key, value):
    code, out, _ = run(capsys, "restrict", name, spec, "--json")
    (rec,) = records(out)
    assert code == 0 and rec["result"][key] == value and rec["result"]["passed"]


def test_restrict_by_indices(capsys):
    # roots 1 and 3 of A3 are a3 and a1
    code, out, _ = run(capsys, "restrict", "A3", "1,3")
    assert code == 0 and "|A^X| = 1" in out


@pytest.mark.parametrize("argv", [
    ["restrict", "A3", "1,2"],
    ["restrict", "A3", "orbit:5"],
    ["restrict", "A3", "7,1"],
    ["restrict", "B2", "1,2"],
    ["roots", "Q7"],
])
def test_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_verify_g2(capsys):
    code, out, _ = run(capsys, "verify", "--scope", "G2", "--verbose")
    assert code == 0
    assert "ℓ ≥ 3 required" in out and "0 failed" in out


def test_verify_d4_text_and_json_agree(capsys):
    _, text, _ = run(capsys, "verify", "--scope", "D4", "--depth", "representatives")
    _, js, _ = run(capsys, "verify", "--scope", "D4", "--depth", "representatives", "--json")
    recs = records(js)
    summary = recs[-1]["result"]["summary"]
    assert f"total: {summary['pass']} passed, {summary['fail']} failed, {summary['skipped']} skipped" in text
    assert any(r["result"]["check_id"].startswith("ex:basis-RO/D4") for r in recs[:-1])


def test_verify_all_representatives(capsys, tmp_path):
    report = tmp_path / "report.jsonl"
    code, out, _ = run(capsys, "verify", "--scope", "all", "--depth", "representatives", "--report", str(report))
    assert code == 0, out
    recs = records(report.read_text(encoding="utf-8"))
    assert not [r for r in recs if r["status"] == "fail"]
    covered = {r["check_id"].split("/")[0] for r in recs if r["status"] == "pass"}
    assert set(IN_SCOPE_LABELS) <= covered


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "weylarr", "--version"], capture_output=True, text=True, check=True)
    assert out.stdout.strip() == f"weylarr {__version__}"
