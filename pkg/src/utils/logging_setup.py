"""Logging setup for the command-line tools.

Console output goes to stderr so stdout stays reserved for CSV/JSON data.
"""

import logging
import sys
from logging.handlers import RotatingFileHandler
from typing import Optional

LOG_FORMAT = "%(asctime)s %(levelname)-8s %(name)s: %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def setup_logging(
    name: str,
    level: int = logging.INFO,
    log_file: Optional[str] = None,
    max_bytes: int = 5 * 1024 * 1024,
    backup_count: int = 3,
) -> logging.Logger:
    """
    Configure the root logger once for a command-line run.

    Args:
        name: Name of the application logger to return
        level: Log level for all handlers
        log_file: Optional path for a rotating file log

    Returns:
        The application logger
    """
    root = logging.getLogger()
    root.setLevel(level)
    for handler in list(root.handlers):
        root.removeHandler(handler)

    formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)

    console = logging.StreamHandler(sys.stderr)
    console.setFormatter(formatter)
    root.addHandler(console)

    if log_file:
        file_handler = RotatingFileHandler(
            log_file, maxBytes=max_bytes, backupCount=backup_count
        )
        file_handler.setFormatter(formatter)
        root.addHandler(file_handler)

    # Reduce noise from the standard library helpers used by the sweeps
    for noisy in ("asyncio", "concurrent.futures"):
        logging.getLogger(noisy).setLevel(max(level, logging.WARNING))

    return logging.getLogger(name)
