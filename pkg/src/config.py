"""Configuration loading and validation for the Lebesgue constant toolkit."""

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import yaml
from dotenv import load_dotenv

OUTPUT_FORMATS = {"csv", "json"}


@dataclass
class GuardConfig:
    """Resource guards; arguments above these limits are rejected."""

    integral_max_n: int = 1 << 20  # Dirichlet kernel integral, O(n * 2^n_1)
    table_max_n: int = 1 << 26  # lebesgue_table memory
    gf_max_terms: int = 1 << 14  # generating function truncation order
    sort_max_n: int = 1 << 22  # order-statistics discrepancy
    sweep_max_n: int = 1 << 16  # incremental prefix sweeps, quadratic in N
    walsh_sum_max_n: int = 1 << 10  # Walsh-sum discrepancy, O(n * 2^n_1)
    block_brute_max_r: int = 24
    block_formula_max_r: int = 60
    clt_max_n: int = 1 << 26
    max_index: int = (1 << 63) - 1


@dataclass
class OutputConfig:
    """Output formatting configuration."""

    decimal_digits: int = 12
    format: str = "csv"  # "csv" or "json"


@dataclass
class ExecutionConfig:
    """Sweep execution configuration."""

    workers: int = field(default_factory=lambda: os.cpu_count() or 1)
    chunk_size: int = 256


@dataclass
class LoggingConfig:
    """Logging configuration."""

    level: str = "INFO"
    file: Optional[str] = None


@dataclass
class Config:
    """Complete application configuration."""

    guards: GuardConfig = field(default_factory=GuardConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    execution: ExecutionConfig = field(default_factory=ExecutionConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)


def expand_env_vars(value):
    """Expand ${VAR} string values from the environment."""
    if isinstance(value, str) and value.startswith("${") and value.endswith("}"):
        env_var = value[2:-1]
        return os.environ.get(env_var, value)
    return value


def parse_int(value) -> int:
    """Parse an integer, also accepting the power notation "2^k"."""
    if isinstance(value, int):
        return value
    text = str(expand_env_vars(value)).strip().replace("_", "")
    if "^" in text:
        base, exponent = text.split("^", 1)
        return int(base) ** int(exponent)
    if "**" in text:
        base, exponent = text.split("**", 1)
        return int(base) ** int(exponent)
    return int(text)


def _find_config_file(config_path: Optional[str]) -> Optional[Path]:
    if config_path is not None:
        config_file = Path(config_path)
        if not config_file.exists():
            raise FileNotFoundError(f"Config file not found at {config_path}")
        return config_file

    env_path = os.environ.get("LEBESGUE_CONFIG")
    if env_path:
        config_file = Path(env_path)
        if not config_file.exists():
            raise FileNotFoundError(f"Config file not found at {env_path} (LEBESGUE_CONFIG)")
        return config_file

    for alt_path in (Path("config/config.yaml"), Path("config.yaml")):
        if alt_path.exists():
            return alt_path
    return None


def load_config(config_path: Optional[str] = None) -> Config:
    """Load configuration from an optional YAML file and environment variables."""
    # Load .env file if present
    load_dotenv()

    config_file = _find_config_file(config_path)
    raw_config: dict = {}
    if config_file is not None:
        with open(config_file) as f:
            raw_config = yaml.safe_load(f) or {}

    defaults = GuardConfig()
    guard_config = raw_config.get("guards", {}) or {}
    guards = GuardConfig(
        **{
            name: parse_int(guard_config.get(name, getattr(defaults, name)))
            for name in GuardConfig.__dataclass_fields__
        }
    )

    out_config = raw_config.get("output", {}) or {}
    output = OutputConfig(
        decimal_digits=parse_int(
            os.environ.get("LEBESGUE_DIGITS", out_config.get("decimal_digits", 12))
        ),
        format=str(out_config.get("format", "csv")).lower(),
    )

    exec_config = raw_config.get("execution", {}) or {}
    workers = os.environ.get("LEBESGUE_WORKERS") or expand_env_vars(exec_config.get("workers"))
    if isinstance(workers, str) and workers.startswith("${"):
        # unset variable, fall back to the CPU count
        workers = None
    execution = ExecutionConfig(
        workers=parse_int(workers) if workers not in (None, "") else (os.cpu_count() or 1),
        chunk_size=parse_int(exec_config.get("chunk_size", 256)),
    )

    log_config = raw_config.get("logging", {}) or {}
    logging_cfg = LoggingConfig(
        level=os.environ.get("LOG_LEVEL", log_config.get("level", "INFO")).upper(),
        file=expand_env_vars(log_config.get("file")),
    )

    return Config(guards=guards, output=output, execution=execution, logging=logging_cfg)


def validate_config(config: Config) -> list[str]:
    """Validate configuration and return list of warnings."""
    warnings = []

    for name in GuardConfig.__dataclass_fields__:
        value = getattr(config.guards, name)
        if value < 1:
            raise ValueError(f"Guard '{name}' must be positive, got {value}")

    if config.guards.block_formula_max_r > 60:
        raise ValueError("block_formula_max_r above 60 overflows 64-bit argmax values")

    if config.output.decimal_digits < 1:
        raise ValueError(f"decimal_digits must be >= 1, got {config.output.decimal_digits}")

    if config.output.format not in OUTPUT_FORMATS:
        raise ValueError(
            f"Invalid output format '{config.output.format}'. "
            f"Must be one of: {', '.join(sorted(OUTPUT_FORMATS))}"
        )

    if config.execution.workers < 1:
        raise ValueError(f"workers must be >= 1, got {config.execution.workers}")

    if config.execution.chunk_size < 1:
        raise ValueError(f"chunk_size must be >= 1, got {config.execution.chunk_size}")

    if config.guards.integral_max_n > 1 << 22:
        warnings.append(
            "integral_max_n above 2^22 - a single Dirichlet kernel integral may take minutes"
        )

    if config.guards.walsh_sum_max_n > 1 << 14:
        warnings.append("walsh_sum_max_n above 2^14 - Walsh-sum discrepancy is quadratic in n")

    if config.guards.table_max_n > 1 << 28:
        warnings.append("table_max_n above 2^28 - the Lebesgue table needs 8 bytes per entry")

    return warnings
