"""
Structured logging configuration.
Supports JSON records with run context and a plain, optionally coloured, console format.
"""

import json
import logging
import os
import sys
from datetime import datetime, timezone
from typing import Optional

from stabscan.core.config import settings

_LEVEL_COLOURS = {
    "DEBUG": "\033[36m",
    "INFO": "\033[32m",
    "WARNING": "\033[33m",
    "ERROR": "\033[31m",
    "CRITICAL": "\033[1;31m",
}
_RESET = "\033[0m"


class JSONFormatter(logging.Formatter):
    """Custom JSON formatter for structured logging."""

    def format(self, record: logging.LogRecord) -> str:
        """Format log record as JSON."""
        log_data = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }

        # Add optional fields if present
        if hasattr(record, "run_id"):
            log_data["run_id"] = record.run_id
        if hasattr(record, "signal"):
            log_data["signal"] = record.signal

        if record.exc_info:
            log_data["exception"] = self.formatException(record.exc_info)

        return json.dumps(log_data)


class PlainFormatter(logging.Formatter):
    """Plain text formatter for human-readable logs."""

    def __init__(self, colour: bool = False):
        super().__init__("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
        self.colour = colour

    def format(self, record: logging.LogRecord) -> str:
        """Format log record as plain text."""
        text = super().format(record)
        if self.colour and record.levelname in _LEVEL_COLOURS:
            text = text.replace(
                record.levelname,
                f"{_LEVEL_COLOURS[record.levelname]}{record.levelname}{_RESET}",
                1,
            )
        return text


def use_colour(stream=None) -> bool:
    """Colour only interactive terminals, and never when NO_COLOR is set."""
    stream = stream or sys.stderr
    if os.environ.get("NO_COLOR"):
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def setup_logging(level: Optional[str] = None, log_format: Optional[str] = None) -> logging.Logger:
    """Configure the package logger; standard output is left to command results."""
    level = (level or settings.log_level).upper()
    log_format = log_format or settings.log_format

    package_logger = logging.getLogger("stabscan")
    package_logger.setLevel(level)

    # Remove existing handlers to avoid duplicates
    for handler in package_logger.handlers[:]:
        package_logger.removeHandler(handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)

    if log_format == "json":
        console_handler.setFormatter(JSONFormatter())
    else:
        console_handler.setFormatter(PlainFormatter(colour=use_colour(sys.stderr)))

    package_logger.addHandler(console_handler)
    return package_logger


def get_logger(name: str) -> logging.Logger:
    """Get a logger instance with the specified name."""
    return logging.getLogger(name)


class RunContextFilter(logging.Filter):
    """Filter to inject run context into log records."""

    def __init__(self, run_id: Optional[str] = None, signal: Optional[str] = None):
        super().__init__()
        self.run_id = run_id
        self.signal = signal

    def filter(self, record: logging.LogRecord) -> bool:
        """Add run_id and signal to log record."""
        if self.run_id:
            record.run_id = self.run_id
        if self.signal:
            record.signal = self.signal
        return True
