import json

import pytest

from modvertex.cli import main
from modvertex.config import Config
from modvertex.perm import Perm
from modvertex.verify import (compare_fixtures, convention_canary, dump_fixtures, expected_row,
                              fixture_texts, selftest, sylow_identities, verify_n)

ROW_KEYS = {"n", "parts", "case", "dim_E", "restriction_indecomposable", "vertex", "source",
            "checks", "seed", "budgets", "version"}


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expected_rows():
    assert expected_row(6) == {"order": 4, "label": "<(1,2)(3,4),(3,4)(5,6)>",
                               "source_dim": 2, "trivial": False}
    assert expected_row(8)["order"] == 64 and expected_row(8)["source_dim"] == 6
    assert expected_row(5)["order"] == 1 and expected_row(5)["trivial"]
    assert expected_row(11)["order"] == 64


def test_verify_row_n8():
    row = verify_n(8)
    assert row.ok
    assert row.vertex.vertex_order == 64 and row.vertex.source_dim == 6
    assert row.restriction_indecomposable


def test_verify_row_n14_three_block_checks():
    row = verify_n(14)
    assert row.case == "nl2_l3" and row.ok
    names = [c.name for c in row.checks]
    assert any("[8, 4]" in c.name or "[8, 4]" in c.details for c in row.checks), names


def test_json_schema(capsys):
    code, out, _ = run_cli(capsys, "verify", "--n", "6", "--normalize-timings")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == 1 and data["seed"] == 0
    row = data["rows"][0]
    assert ROW_KEYS <= set(row)
    assert set(row["vertex"]) >= {"order", "generators", "expected", "conjugacy_mode", "witness"}
    assert row["vertex"]["order"] == 4 and row["source"] == {"dim": 2, "trivial": False}
    assert all(c["status"] == "pass" for c in row["checks"])
    assert any("GF(4)" in c["name"] for c in row["checks"])


def test_byte_identical_reruns(capsys):
    _, a, _ = run_cli(capsys, "verify", "--from", "3", "--to", "7", "--normalize-timings")
    _, b, _ = run_cli(capsys, "verify", "--from", "3", "--to", "7", "--normalize-timings")
    assert a == b


def test_budget_one_coset_is_incomplete(capsys):
    code, out, _ = run_cli(capsys, "verify", "--n", "8", "--budget-cosets", "1")
    assert code == 1
    row = json.loads(out)["rows"][0]
    assert row["incomplete"]


def test_text_report(capsys):
    code, out, _ = run_cli(capsys, "verify", "--from", "3", "--to", "5", "--report", "text")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split()[:3] == ["n", "case", "dim_E"]
    assert sum(line.rstrip().endswith("ok") for line in lines) == 3


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("MODVERTEX_SEED", "17")
    _, out, _ = run_cli(capsys, "verify", "--n", "5")
    assert json.loads(out)["seed"] == 17
    _, out, _ = run_cli(capsys, "verify", "--n", "5", "--seed", "3")
    assert json.loads(out)["seed"] == 3
    monkeypatch.setenv("MODVERTEX_SEED", "x")
    code, _, err = run_cli(capsys, "verify", "--n", "5")
    assert code == 2 and "MODVERTEX_SEED" in err


def test_config_errors(capsys):
    code, _, err = run_cli(capsys, "verify", "--n", "5", "--field-degree", "7")
    assert code == 2 and "field degree" in err
    code, _, _ = run_cli(capsys, "verify", "--n", "2")
    assert code == 2
    with pytest.raises(SystemExit):
        main(["verify"])


def test_fixture_round_trip(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "dump-fixtures", "--n", "10", "--out", str(tmp_path))
    assert code == 0
    names = {p.rsplit("/", 1)[-1] for p in out.split()}
    assert names == set(fixture_texts(10))
    assert {"natural_E.txt", "generators.txt", "endo_phi1.txt"} <= names
    assert compare_fixtures(10, tmp_path) == []


def test_corrupted_fixture_is_named(tmp_path):
    dump_fixtures(6, tmp_path)
    path = tmp_path / "natural_E.txt"
    lines = path.read_text().splitlines()
    i = next(k for k, ln in enumerate(lines) if set(ln) <= set("0123") and ln)
    lines[i] = ("1" if lines[i][0] == "0" else "0") + lines[i][1:]
    path.write_text("\n".join(lines) + "\n")
    (tmp_path / "generators.txt").unlink()
    diffs = compare_fixtures(6, tmp_path)
    assert "natural_E.txt: differs" in diffs
    assert "generators.txt: missing" in diffs


def test_selftest_with_corrupted_fixture_fails(tmp_path, capsys):
    d = tmp_path / "n8"
    dump_fixtures(8, d)
    (d / "natural_D.txt").write_text("garbage\n")
    code, out, _ = run_cli(capsys, "selftest", "--fixtures", str(d))
    assert code == 1
    assert "natural_D.txt" in out


def test_selftest_passes():
    results = selftest(Config(), linalg_cases=50, decomp_cases=10)
    assert all(c.status == "pass" for c in results), [c for c in results if c.status != "pass"]


def test_convention_canary_detects_flipped_product(monkeypatch):
    assert convention_canary().status == "pass"
    orig = Perm.__mul__
    monkeypatch.setattr(Perm, "__mul__", lambda g, h: orig(h, g))
    assert convention_canary().status == "fail"


def test_sylow_identities_small():
    assert all(c.status == "pass" for c in sylow_identities(8))
    assert all(c.status == "pass" for c in sylow_identities(10))


def test_selftest_without_fixture_sets_fails(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "selftest", "--fixtures", str(tmp_path))
    assert code == 1
    assert "FAIL fixture sets found" in out


def test_selftest_accepts_parent_of_fixture_sets(tmp_path):
    dump_fixtures(6, tmp_path / "n6")
    dump_fixtures(10, tmp_path / "10")
    results = selftest(Config(), tmp_path, linalg_cases=5, decomp_cases=2)
    names = [c.name for c in results if c.status == "pass"]
    assert "fixture round-trip n=6" in names and "fixture round-trip n=10" in names
