"""
Correlation sequences from measured signals and from synthetic spectra.

The empirical estimator is

    b(k) = [ Σ_{p=0}^{n-1-k} ξ(p+k) ξ(p) ] / (n - k) - m²,   m = (1/n) Σ ξ(p),

evaluated on the centered series so that large offsets do not cancel away
the signal.
"""

import logging

import numpy as np
from scipy import signal

from stabscan.core.exceptions import ParameterError, SignalDataError
from stabscan.models import CorrelationSequence, SyntheticSpectrum, TimeSeries

logger = logging.getLogger(__name__)


def estimate_correlation(ts: TimeSeries, max_lag: int) -> CorrelationSequence:
    """
    Estimate lags 0..max_lag of the correlation function of a measured series.

    Args:
        ts: Measured signal
        max_lag: Largest lag, 1 <= max_lag < len(ts)

    Returns:
        Unnormalized CorrelationSequence with the series' sampling interval

    Raises:
        ParameterError: If max_lag is out of range
        SignalDataError: If the samples are not finite
    """
    xi = ts.as_array()
    n = xi.size
    if not 1 <= max_lag < n:
        raise ParameterError(f"max_lag must satisfy 1 <= max_lag < {n}, got {max_lag}")
    if not np.all(np.isfinite(xi)):
        raise SignalDataError("samples must be finite")

    if np.ptp(xi) == 0:
        # Rounding in the mean would leave O(eps) residue at every lag
        return CorrelationSequence(values=[0.0] * (max_lag + 1), dt=ts.dt, normalized=False)

    mean = xi.sum() / n
    x = xi - mean

    # Full correlation has length 2n-1 with lag 0 at index n-1
    lagged = signal.correlate(x, x, mode="full", method="auto")[n - 1 : n + max_lag]

    # ξ(p+k)ξ(p) = x(p+k)x(p) + m(x(p+k) + x(p)) + m², summed over p < n-k
    prefix = np.concatenate(([0.0], np.cumsum(x)))
    lags = np.arange(max_lag + 1)
    tail_sums = prefix[n] - prefix[lags]  # Σ_{p=k}^{n-1} x(p)
    head_sums = prefix[n - lags]  # Σ_{p=0}^{n-1-k} x(p)
    counts = n - lags
    values = (lagged + mean * (tail_sums + head_sums)) / counts

    if np.any(np.abs(values[1:]) > values[0]):
        logger.warning("Estimated correlation violates |b(k)| <= b(0); keeping raw estimate")

    return CorrelationSequence(values=values.tolist(), dt=ts.dt, normalized=False)


def normalize(corr: CorrelationSequence) -> CorrelationSequence:
    """
    Divide every lag by b(0).

    Raises:
        SignalDataError: If b(0) <= 0 (degenerate signal)
    """
    if corr.normalized:
        return corr
    values = corr.as_array()
    b0 = values[0]
    if not b0 > 0:
        raise SignalDataError(f"b(0) must be positive to normalize, got {b0!r}")
    scaled = values / b0
    scaled[0] = 1.0
    return CorrelationSequence(values=scaled.tolist(), dt=corr.dt, normalized=True)


def analytic_correlation(
    spec: SyntheticSpectrum,
    max_lag: int,
    dt: float = 1.0,
) -> CorrelationSequence:
    """
    Exact lags of a synthetic spectrum.

    b(0) = p + Σ m_α and b(k) = Σ m_α cos(k θ_α) for k >= 1.
    """
    if max_lag < 0:
        raise ParameterError(f"max_lag must be >= 0, got {max_lag}")

    k = np.arange(max_lag + 1, dtype=float)
    values = np.zeros(max_lag + 1)
    for atom in spec.atoms:
        values += atom.pair_mass * np.cos(k * atom.theta)
    values[0] = spec.total_mass

    return CorrelationSequence(
        values=values.tolist(),
        dt=dt,
        normalized=bool(values[0] == 1.0),
    )
