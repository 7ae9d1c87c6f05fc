"""Core application configuration and utilities."""

from stabscan.core.config import Settings, settings
from stabscan.core.exceptions import (
    ConvergenceError,
    ParameterError,
    SignalDataError,
    StabScanError,
)
from stabscan.core.logging import get_logger, setup_logging

__all__ = [
    "settings",
    "Settings",
    "get_logger",
    "setup_logging",
    "StabScanError",
    "ParameterError",
    "SignalDataError",
    "ConvergenceError",
]
