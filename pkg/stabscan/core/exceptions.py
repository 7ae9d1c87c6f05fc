"""Error hierarchy shared by the services, the CLI and the HTTP API."""

from typing import Optional


class StabScanError(Exception):
    """Base class for all package errors."""


class ParameterError(StabScanError, ValueError):
    """An operation was called outside its preconditions."""


class SignalDataError(StabScanError, ValueError):
    """A signal or correlation cannot be analysed (short, non-finite, degenerate, unparsable)."""


class ConvergenceError(StabScanError, RuntimeError):
    """The largest-eigenvalue iteration stopped before reaching its tolerance."""

    def __init__(self, message: str, iterations: int = 0, residual: Optional[float] = None):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual
