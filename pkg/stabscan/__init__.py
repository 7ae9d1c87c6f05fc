"""StabScan: Toeplitz-norm stability statistics and Fejér jump scans for stationary signals."""

__version__ = "1.0.0"
