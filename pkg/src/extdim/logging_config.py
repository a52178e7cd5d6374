"""Logging setup shared by the extdim library and its CLI."""

from __future__ import annotations

import logging
import sys
import time
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path

LOGGER_NAME = "extdim"

_LEVEL_PREFIXES = {
    logging.DEBUG: "[debug] ",
    logging.WARNING: "Warning: ",
    logging.ERROR: "Error: ",
    logging.CRITICAL: "Error: ",
}


def get_logger(name: str | None = None) -> logging.Logger:
    """Return a logger below the ``extdim`` package logger.

    Args:
        name: Module name, usually ``__name__``. ``None`` gives the package logger.
    """
    if name is None:
        return logging.getLogger(LOGGER_NAME)
    if name == LOGGER_NAME or name.startswith(LOGGER_NAME + "."):
        return logging.getLogger(name)
    return logging.getLogger(f"{LOGGER_NAME}.{name}")


class ConsoleFormatter(logging.Formatter):
    """Plain console output: INFO is the bare message, other levels get a prefix."""

    def format(self, record: logging.LogRecord) -> str:
        message = record.getMessage()
        if record.levelno == logging.INFO:
            return message
        prefix = _LEVEL_PREFIXES.get(record.levelno)
        if prefix is None:
            return super().format(record)
        return prefix + message


class InfoFilter(logging.Filter):
    """Pass only records below WARNING (those belong on stdout)."""

    def filter(self, record: logging.LogRecord) -> bool:
        return record.levelno < logging.WARNING


def _console_level(verbosity: int, quiet: bool) -> int:
    if quiet:
        return logging.ERROR
    if verbosity >= 2:
        return logging.DEBUG
    return logging.INFO


def setup_logging(
    verbosity: int = 0,
    quiet: bool = False,
    log_file: Path | None = None,
    stdout_stream=None,
    stderr_stream=None,
) -> None:
    """Configure console and file handlers for the CLI.

    Args:
        verbosity: 0 normal, 1 verbose (-v), 2 or more debug (-vv)
        quiet: Show errors only
        log_file: Optional file receiving every record with timestamps
        stdout_stream: Replacement for sys.stdout (tests)
        stderr_stream: Replacement for sys.stderr (tests)
    """
    logger = logging.getLogger(LOGGER_NAME)
    logger.handlers.clear()
    logger.setLevel(logging.DEBUG)

    out = logging.StreamHandler(stdout_stream if stdout_stream is not None else sys.stdout)
    out.setLevel(_console_level(verbosity, quiet))
    out.setFormatter(ConsoleFormatter())
    out.addFilter(InfoFilter())
    logger.addHandler(out)

    err = logging.StreamHandler(stderr_stream if stderr_stream is not None else sys.stderr)
    err.setLevel(logging.WARNING)
    err.setFormatter(ConsoleFormatter())
    logger.addHandler(err)

    if log_file:
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s"))
        logger.addHandler(file_handler)


@contextmanager
def log_duration(logger: logging.Logger, label: str) -> Iterator[dict[str, float]]:
    """Log how long a block took at DEBUG; the yielded dict receives ``seconds``."""
    timing: dict[str, float] = {}
    start = time.perf_counter()
    try:
        yield timing
    finally:
        timing["seconds"] = time.perf_counter() - start
        logger.debug("%s took %.3fs", label, timing["seconds"])
