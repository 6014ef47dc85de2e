from __future__ import annotations

import json
from pathlib import Path

import pytest

from qbailey.cli import EXIT_MISMATCH, EXIT_PASS, EXIT_USAGE, run
from qbailey.constants import TRANSFORM_IDS

PARTITIONS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297, 385, 490]


@pytest.fixture(autouse=True)
def isolated(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    # Keep a stray config.json or environment override out of the run
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("QBAILEY_ORDER", raising=False)
    monkeypatch.delenv("QBAILEY_REGISTRY", raising=False)
    return tmp_path


def run_json(capsys: pytest.CaptureFixture, *argv: str):
    code = run([*argv, "--format", "json", "--no-timing"])
    return code, json.loads(capsys.readouterr().out)


def test_verify_identity(capsys) -> None:
    assert run(["verify-identity", "PNS123", "--order", "10"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert out.startswith("PNS123")
    assert "Pass" in out


def test_unknown_identity() -> None:
    assert run(["verify-identity", "NOSUCH", "--order", "10"]) == EXIT_USAGE


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["verify-identity", "RRa1", "--order", "0"],
    ["verify-identity", "RRa1", "--order", "ten"],
    ["verify-identity", "RRa1", "--format", "xml"],
])
def test_usage_errors(argv) -> None:
    assert run(argv) == EXIT_USAGE


def test_json_without_timing_is_reproducible(capsys) -> None:
    argv = ["verify-identity", "RRa1", "--order", "15", "--format", "json", "--no-timing"]
    assert run(argv) == EXIT_PASS
    first = capsys.readouterr().out
    assert run(argv) == EXIT_PASS
    assert capsys.readouterr().out == first
    assert json.loads(first) == {"id": "RRa1", "status": "pass", "order": "15"}


def test_cross_check(capsys) -> None:
    code, data = run_json(capsys, "verify-identity", "RRa2", "--order", "15", "--cross-check")
    assert code == EXIT_PASS
    assert data["cross_check"] == {"lhs": None, "rhs": None, "balance": None, "status": "pass"}


def test_output_file(isolated: Path, capsys) -> None:
    target = isolated / "report.json"
    argv = ["verify-identity", "RRa1", "--order", "10", "--format", "json", "--output", str(target)]
    assert run(argv) == EXIT_PASS
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["status"] == "pass"


def test_verify_all_with_custom_registry(isolated: Path, capsys) -> None:
    entries = [
        {
            "id": "good",
            "variables": ["n"],
            "lhs": {"exponent": "n^2", "den": ["(q;q)_n"]},
            "rhs": {"num": ["(q^2,q^3,q^5;q^5)_inf"], "den": ["(q;q)_inf"]},
        },
        {
            "id": "bad",
            "variables": ["n"],
            "lhs": {"exponent": "n^2", "den": ["(q;q)_n"]},
            "rhs": {"num": ["(q^2,q^3,q^6;q^6)_inf"], "den": ["(q;q)_inf"]},
        },
    ]
    path = isolated / "identities.json"
    path.write_text(json.dumps({"identities": entries}))
    code, data = run_json(capsys, "verify-all", "--registry", str(path), "--order", "20")
    assert code == EXIT_MISMATCH
    assert data["totals"] == {"pass": 1, "fail": 1, "error": 0}
    assert [e["status"] for e in data["entries"]] == ["pass", "fail"]


def test_vanishing_denominator_is_a_usage_error(isolated: Path) -> None:
    entry = {
        "id": "zero",
        "variables": ["n"],
        "lhs": {"exponent": "n^2", "den": ["(q;q)_n", "(1;q)_1"]},
        "rhs": {"num": ["(q^2,q^3,q^5;q^5)_inf"], "den": ["(q;q)_inf"]},
    }
    path = isolated / "identities.json"
    path.write_text(json.dumps({"identities": [entry]}))
    argv = ["expand", "zero:lhs", "--registry", str(path), "--order", "10"]
    assert run(argv) == EXIT_USAGE


def test_missing_registry_file(isolated: Path) -> None:
    missing = str(isolated / "missing.json")
    assert run(["verify-all", "--registry", missing, "--order", "5"]) == EXIT_USAGE


def test_verify_pair(capsys) -> None:
    code, data = run_json(capsys, "verify-pair", "BP123", "--n-max", "2", "--order", "10")
    assert code == EXIT_PASS
    assert data["id"] == "BP123"
    assert len(data["checks"]) == 4 * 3


def test_verify_printed_pair(capsys) -> None:
    argv = ["verify-pair", "BP337", "--printed", "--a", "1", "--n-max", "2", "--order", "10"]
    assert run(argv) == EXIT_MISMATCH
    assert "BP337-printed" in capsys.readouterr().out


def test_verify_transform(capsys) -> None:
    code, data = run_json(
        capsys, "verify-transform", "WQW", "--assign", "a=q^4", "b=q", "c=q^2", "d=q^3", "e=q",
        "--n", "3", "--order", "12"
    )
    assert code == EXIT_PASS
    assert data[0]["status"] == "pass"
    assert data[0]["assignment"]["a"] == "q^4"


def test_verify_transform_bad_assignment() -> None:
    argv = ["verify-transform", "WQW", "--assign", "a", "--n", "3", "--order", "12"]
    assert run(argv) == EXIT_USAGE


def test_lemma(capsys) -> None:
    code, data = run_json(
        capsys, "lemma", "1,1,2", "--a", "q", "--rho1", "q", "--rho2", "q", "--N", "3",
        "--order", "15"
    )
    assert code == EXIT_PASS
    assert data["status"] == "pass"
    assert data["lhs"] == data["rhs"]


@pytest.mark.parametrize("argv", [
    ["lemma", "1,1", "--order", "10"],
    ["lemma", "1,1,2", "--N", "many", "--order", "10"],
    ["lemma", "1,1,2", "--a", "inf", "--order", "10"],
])
def test_lemma_usage_errors(argv) -> None:
    assert run(argv) == EXIT_USAGE


def test_expand(capsys) -> None:
    code, data = run_json(capsys, "expand", "RRa1:lhs", "--order", "7")
    assert code == EXIT_PASS
    assert "rhs" not in data
    assert [e for e, _ in data["lhs"]] == ["0", "1", "2", "3", "4", "5", "6"]
    assert data["lhs"][4] == ["4", ["2", "0", "0", "0"]]


def test_recognize_identity(capsys) -> None:
    code, data = run_json(capsys, "recognize", "RRa1", "--order", "30")
    assert code == EXIT_PASS
    assert data["matches"]
    assert data["lhs"]["product"] == "(q,q^4;q^5)_{inf}^(-1)"


def test_recognize_input(isolated: Path, capsys) -> None:
    path = isolated / "series.json"
    path.write_text(json.dumps({"series": PARTITIONS}))
    code, data = run_json(capsys, "recognize", "--input", str(path), "--order", "20")
    assert code == EXIT_PASS
    assert data["exponents"] == [1] * 19
    assert data["period"] == 1
    assert run(["recognize", "--order", "20"]) == EXIT_USAGE


def test_list(capsys) -> None:
    code, data = run_json(capsys, "list", "transforms")
    assert code == EXIT_PASS
    assert [t["id"] for t in data["transforms"]] == list(TRANSFORM_IDS)
    notes = {t["id"]: t["source_typo"] for t in data["transforms"]}
    assert notes["WQW"] is None
    assert "base q^2" in notes["VJ2"]
    assert run(["list", "pairs"]) == EXIT_PASS
    assert "BP417" in capsys.readouterr().out


def test_classical(capsys) -> None:
    code, data = run_json(capsys, "classical", "--dek", "1,1,2", "--order", "25")
    assert code == EXIT_PASS
    assert [e.get("period") for e in data["entries"]] == [None, 5]
    assert run(["classical", "--dek", "9,9,9", "--order", "10"]) == EXIT_USAGE


@pytest.mark.slow
def test_verify_all_at_full_order(capsys) -> None:
    code, data = run_json(capsys, "verify-all", "--order", "60", "--threads", "4")
    assert code == EXIT_PASS, [e for e in data["entries"] if e["status"] != "pass"]
    assert data["totals"]["pass"] == len(data["entries"]) >= 47
