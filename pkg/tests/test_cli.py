import json
import subprocess
import sys

import pytest

from robustpd.cli import main, render


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_krpds_solve_json(capsys):
    code, out, _ = run(capsys, "krpds-solve", "--family", "kpq:3,3", "--k", "5", "--out", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] == 8 and payload["status"] == "optimal"
    assert sum(c for _, c in payload["witness"]) == 8


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "krpds-verify", "--family", "star:16", "--k", "1", "--placement", "0:2", "--out", "json")
    assert code == 0 and json.loads(out) == {"ok": True}
    code, out, _ = run(capsys, "krpds-verify", "--family", "star:16", "--k", "1", "--placement", "1:2", "--out", "json")
    assert code == 1 and json.loads(out)["counterexample"] == [[1, 1]]


def test_formula(capsys):
    code, out, _ = run(capsys, "formula", "--family", "kpq:3,3", "--k", "12", "--out", "json")
    assert code == 0 and json.loads(out)["value"] == 16
    code, out, _ = run(capsys, "formula", "--family", "kpq:4,6", "--k", "4", "--out", "json")
    assert json.loads(out) == {"k": 4, "source": "bip_lower/bip_upper", "lower": 7, "upper": 9}
    code, out, _ = run(capsys, "formula", "--family", "tree:9,3", "--k", "2", "--out", "json")
    assert json.loads(out)["source"] == "tree"


@pytest.mark.parametrize("argv", [
    ["krpds-solve", "--family", "kpq:3", "--k", "1"],
    ["krpds-solve", "--family", "kpq:3,3"],
    ["krpds-solve", "--family", "kpq:3,3", "--k", "-1"],
    ["pd"],
    ["krpds-verify", "--family", "star:4", "--k", "1"],
    ["krpds-verify", "--family", "star:4", "--k", "3", "--placement", "0:2"],
    ["formula", "--family", "kpq:3,2", "--k", "6"],
    ["formula", "--family", "kpq:3,3", "--k", "1", "--graph", "x.txt"],
])
def test_usage_errors_exit_2(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse rejects some forms itself
        code = exc.code
    assert code == 2


def test_graph_file_and_parse_error(tmp_path, capsys):
    good = tmp_path / "g.txt"
    good.write_text("0 1\n1 2\n2 3\n")
    code, out, _ = run(capsys, "pd", "--graph", str(good), "--out", "json")
    assert code == 0 and json.loads(out)["value"] == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1\n2 2\n")
    code, _, err = run(capsys, "pd", "--graph", str(bad))
    assert code == 2 and "line 2" in err
    code, _, err = run(capsys, "pd", "--graph", str(tmp_path / "missing.txt"))
    assert code == 2


def test_json_is_deterministic_without_timing(capsys):
    argv = ["krpds-solve", "--family", "kpq:4,4", "--k", "3", "--out", "json", "--no-timing"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second and json.loads(first)["millis"] == 0


def test_human_and_tsv_derive_from_json():
    payload = {"value": 3, "bounds": {"lower": 2, "upper": 4}, "witness": [[0, 2]]}
    tsv = render(payload, "tsv").splitlines()
    assert tsv[0].split("\t") == ["value", "bounds.lower", "bounds.upper", "witness"]
    assert tsv[1].split("\t") == ["3", "2", "4", "[[0,2]]"]
    human = render(payload, "human")
    assert "bounds.lower" in human and "[[0,2]]" in human


def test_other_verbs(capsys):
    code, out, _ = run(capsys, "q", "--family", "kpq:3,3", "--out", "json")
    assert json.loads(out)["value"] == 6
    code, out, _ = run(capsys, "ftpd", "--family", "star:16", "--k", "1", "--out", "json")
    assert json.loads(out)["value"] == 15
    code, out, _ = run(capsys, "gen", "--family", "path:3", "--out", "json")
    assert json.loads(out) == {"n": 3, "edges": [[0, 1], [1, 2]]}
    code, out, _ = run(capsys, "bounds", "--family", "kpq:3,3", "--k", "5", "--out", "json")
    assert {e["source"] for e in json.loads(out)} >= {"basic_lower", "q_upper", "k33"}


def test_search_flags_do_not_change_values(capsys):
    base = ["krpds-solve", "--family", "kpq:3,4", "--k", "3", "--out", "json"]
    _, out, _ = run(capsys, *base)
    _, plain, _ = run(capsys, *base, "--no-deg3", "--no-forced", "--no-symmetry")
    assert json.loads(out)["value"] == json.loads(plain)["value"] == 6


@pytest.mark.parametrize("suite", ["fig-k33", "star-contrast", "knn-balanced"])
def test_corpus_suites_pass(suite, capsys):
    code, out, _ = run(capsys, "corpus", suite, "--out", "json", "--no-timing")
    payload = json.loads(out)
    assert code == 0 and payload["ok"]
    assert all(r["millis"] == 0 for r in payload["rows"])


def test_corpus_worker_count_keeps_order():
    # row order and contents must not depend on --workers
    args = [sys.executable, "-m", "robustpd.cli", "corpus", "fig-k33", "--out", "json", "--no-timing"]
    serial = subprocess.run(args, capture_output=True, text=True, check=True).stdout
    pooled = subprocess.run(args + ["--workers", "3"], capture_output=True, text=True, check=True).stdout
    assert serial == pooled
    rows = json.loads(serial)["rows"]
    assert [r["expected"] for r in rows] == [2, 3, 4, 5, 6, 8, 9, 10]
