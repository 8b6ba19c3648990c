"""Tests for configuration loading and validation."""

import pytest

from src.config import (
    Config,
    GuardConfig,
    load_config,
    parse_int,
    validate_config,
)


def test_parse_int():
    assert parse_int(12) == 12
    assert parse_int("2^20") == 1 << 20
    assert parse_int("2**10") == 1024
    assert parse_int("1_000") == 1000
    with pytest.raises(ValueError):
        parse_int("two")


def test_defaults_without_file(isolated_env):
    config = load_config()
    assert config.guards == GuardConfig()
    assert config.guards.integral_max_n == 1 << 20
    assert config.guards.walsh_sum_max_n == 1 << 10
    assert config.output.decimal_digits == 12
    assert config.output.format == "csv"
    assert config.execution.workers >= 1
    assert validate_config(config) == []


def test_yaml_file_and_power_notation(isolated_env):
    path = isolated_env / "custom.yaml"
    path.write_text(
        "guards:\n"
        "  table_max_n: 2^12\n"
        "  gf_max_terms: 512\n"
        "output:\n"
        "  decimal_digits: 6\n"
        "  format: JSON\n"
        "execution:\n"
        "  workers: 3\n"
        "  chunk_size: 64\n"
        "logging:\n"
        "  level: debug\n"
    )
    config = load_config(str(path))
    assert config.guards.table_max_n == 4096
    assert config.guards.gf_max_terms == 512
    assert config.guards.sort_max_n == 1 << 22
    assert config.output.decimal_digits == 6
    assert config.output.format == "json"
    assert config.execution.workers == 3
    assert config.execution.chunk_size == 64
    assert config.logging.level == "DEBUG"


def test_default_location_is_picked_up(isolated_env):
    (isolated_env / "config").mkdir()
    (isolated_env / "config" / "config.yaml").write_text("output:\n  decimal_digits: 4\n")
    assert load_config().output.decimal_digits == 4


def test_environment_overrides(isolated_env, monkeypatch):
    path = isolated_env / "env.yaml"
    path.write_text("execution:\n  workers: 8\n")
    monkeypatch.setenv("LEBESGUE_CONFIG", str(path))
    monkeypatch.setenv("LEBESGUE_WORKERS", "2")
    monkeypatch.setenv("LEBESGUE_DIGITS", "20")
    monkeypatch.setenv("LOG_LEVEL", "warning")
    config = load_config()
    assert config.execution.workers == 2
    assert config.output.decimal_digits == 20
    assert config.logging.level == "WARNING"


def test_unset_variable_falls_back_to_cpu_count(isolated_env):
    path = isolated_env / "vars.yaml"
    path.write_text("execution:\n  workers: ${LEBESGUE_WORKERS}\n")
    assert load_config(str(path)).execution.workers >= 1


def test_missing_explicit_file(isolated_env):
    with pytest.raises(FileNotFoundError):
        load_config("does-not-exist.yaml")


def test_missing_file_from_environment(isolated_env, monkeypatch):
    monkeypatch.setenv("LEBESGUE_CONFIG", "nowhere.yaml")
    with pytest.raises(FileNotFoundError):
        load_config()


class TestValidation:
    def test_rejects_bad_values(self):
        config = Config()
        config.output.format = "xml"
        with pytest.raises(ValueError, match="Invalid output format"):
            validate_config(config)

        config = Config()
        config.guards.sort_max_n = 0
        with pytest.raises(ValueError, match="sort_max_n"):
            validate_config(config)

        config = Config()
        config.execution.workers = 0
        with pytest.raises(ValueError):
            validate_config(config)

        config = Config()
        config.guards.block_formula_max_r = 61
        with pytest.raises(ValueError):
            validate_config(config)

    def test_warns_on_expensive_guards(self):
        config = Config()
        config.guards.integral_max_n = 1 << 24
        config.guards.walsh_sum_max_n = 1 << 16
        warnings = validate_config(config)
        assert len(warnings) == 2
        assert any("integral_max_n" in w for w in warnings)
