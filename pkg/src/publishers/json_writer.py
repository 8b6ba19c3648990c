"""JSON writer for result rows."""

import json
import logging
import sys
from typing import Any, Optional

logger = logging.getLogger(__name__)


class JsonWriter:
    """Collect rows and emit them as one JSON document on close.

    Without an envelope the document is a list of row objects. With one, the
    rows are stored under "rows" next to the envelope fields.
    """

    def __init__(
        self,
        columns: list[str],
        path: Optional[str] = None,
        envelope: Optional[dict[str, Any]] = None,
    ):
        self.columns = columns
        self.path = path
        self.envelope = envelope
        self._rows: list[dict[str, Any]] = []
        self._connected = False

    def connect(self) -> bool:
        if self.path:
            try:
                # fail early rather than after the computation
                open(self.path, "w", encoding="utf-8").close()
            except OSError as e:
                logger.error(f"Failed to open {self.path}: {e}")
                return False
        self._connected = True
        return True

    def write(self, row: dict[str, Any]) -> bool:
        if not self._connected:
            logger.warning("JSON writer not connected - row dropped")
            return False
        self._rows.append({column: row.get(column) for column in self.columns})
        return True

    def flush(self):
        pass

    def document(self) -> Any:
        if self.envelope is None:
            return self._rows
        return {**self.envelope, "rows": self._rows}

    def close(self):
        if not self._connected:
            return
        text = json.dumps(self.document(), indent=2) + "\n"
        if self.path:
            with open(self.path, "w", encoding="utf-8") as f:
                f.write(text)
            logger.info(f"Wrote {len(self._rows)} rows to {self.path}")
        else:
            sys.stdout.write(text)
            sys.stdout.flush()
        self._connected = False

    @property
    def total_written(self) -> int:
        return len(self._rows)
