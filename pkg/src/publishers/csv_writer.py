"""CSV writer for result rows."""

import csv
import logging
import sys
from typing import Any, Optional, TextIO

logger = logging.getLogger(__name__)


class CsvWriter:
    """Write rows with a fixed header to a file or to stdout.

    Exact values arrive as strings, so nothing is lost to float formatting.
    """

    def __init__(self, columns: list[str], path: Optional[str] = None):
        self.columns = columns
        self.path = path
        self._stream: Optional[TextIO] = None
        self._writer: Optional[csv.DictWriter] = None
        self._total_written = 0

    def connect(self) -> bool:
        """Open the destination and write the header."""
        try:
            if self.path:
                self._stream = open(self.path, "w", newline="", encoding="utf-8")
            else:
                self._stream = sys.stdout
            self._writer = csv.DictWriter(
                self._stream, fieldnames=self.columns, lineterminator="\n"
            )
            self._writer.writeheader()
            return True
        except OSError as e:
            logger.error(f"Failed to open {self.path}: {e}")
            return False

    def start_section(self, columns: list[str]):
        """Begin a second table in the same output: a blank line, then a new header."""
        if not self._writer:
            logger.warning("CSV writer not connected - section dropped")
            return
        self._stream.write("\n")
        self.columns = columns
        self._writer = csv.DictWriter(self._stream, fieldnames=columns, lineterminator="\n")
        self._writer.writeheader()

    def write(self, row: dict[str, Any]) -> bool:
        if not self._writer:
            logger.warning("CSV writer not connected - row dropped")
            return False
        self._writer.writerow(row)
        self._total_written += 1
        return True

    def flush(self):
        if self._stream:
            self._stream.flush()

    def close(self):
        self.flush()
        if self._stream and self._stream is not sys.stdout:
            self._stream.close()
            logger.info(f"Wrote {self._total_written} rows to {self.path}")
        self._stream = None
        self._writer = None

    @property
    def total_written(self) -> int:
        return self._total_written
