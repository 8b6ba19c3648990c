# Publishers module
from typing import Any, Optional, Union

from .csv_writer import CsvWriter
from .json_writer import JsonWriter

Writer = Union[CsvWriter, JsonWriter]


def open_writer(
    fmt: str,
    columns: list[str],
    path: Optional[str] = None,
    envelope: Optional[dict[str, Any]] = None,
) -> Writer:
    """Create and connect a writer for the given output format."""
    if fmt == "csv":
        writer: Writer = CsvWriter(columns, path)
    elif fmt == "json":
        writer = JsonWriter(columns, path, envelope=envelope)
    else:
        raise ValueError(f"Unknown output format '{fmt}'")
    if not writer.connect():
        raise OSError(f"Could not open output {path}")
    return writer


__all__ = ["CsvWriter", "JsonWriter", "Writer", "open_writer"]
