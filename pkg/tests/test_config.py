from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest

from qbailey.config import load_config
from qbailey.constants import DEFAULT_ORDER, DEFAULT_REGISTRY_PATH


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv("QBAILEY_ORDER", raising=False)
    monkeypatch.delenv("QBAILEY_REGISTRY", raising=False)


def test_defaults(tmp_path: Path) -> None:
    config = load_config(str(tmp_path / "config.json"))
    assert config["DEFAULT_ORDER"] == DEFAULT_ORDER
    assert config["REGISTRY_PATH"] == DEFAULT_REGISTRY_PATH
    assert config["THREADS"] == 1


def test_file_values(tmp_path: Path) -> None:
    path = tmp_path / "config.json"
    path.write_text('{"DEFAULT_ORDER": "45/2", "THREADS": 8}')
    config = load_config(str(path))
    assert config["DEFAULT_ORDER"] == Fraction(45, 2)
    assert config["THREADS"] == 8
    assert config["MAX_TERMS"] > 0


def test_invalid_file_is_ignored(tmp_path: Path, caplog: pytest.LogCaptureFixture) -> None:
    path = tmp_path / "config.json"
    path.write_text("[1, 2")
    config = load_config(str(path))
    assert config["DEFAULT_ORDER"] == DEFAULT_ORDER
    assert "Ignoring" in caplog.text


def test_environment_overrides(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("QBAILEY_ORDER", "30")
    monkeypatch.setenv("QBAILEY_REGISTRY", "elsewhere.json")
    config = load_config(str(tmp_path / "config.json"))
    assert config["DEFAULT_ORDER"] == 30
    assert config["REGISTRY_PATH"] == "elsewhere.json"
