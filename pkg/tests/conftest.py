"""Shared fixtures."""

import pytest

from src.lebesgue import lebesgue_table


@pytest.fixture
def isolated_env(monkeypatch, tmp_path):
    """Run from an empty directory with no configuration in the environment."""
    for name in ("LEBESGUE_CONFIG", "LEBESGUE_WORKERS", "LEBESGUE_DIGITS", "LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)
    return tmp_path


@pytest.fixture(scope="session")
def table_4096():
    return lebesgue_table(1 << 12)
