"""
Fejér-smoothed jump scan of the spectral distribution.

    Θ_N(θ) = b(0) + 2 Σ_{k=1}^{N-1} (1 - k/N) b(k) cos kθ
           = ∫ sin²(N(θ - θ')/2) / (N sin²((θ - θ')/2)) dσ(θ'),

so Θ_N(θ)/N tends to the jump σ(θ+0) - σ(θ-0) at every θ.
"""

import logging
import math
from typing import Literal, Optional

import numpy as np
from scipy import fft
from scipy.signal import find_peaks

from stabscan.core.exceptions import ParameterError
from stabscan.models import CorrelationSequence, JumpEstimate, ThetaScan
from stabscan.services.correlation import normalize

logger = logging.getLogger(__name__)

MIN_GRID_COUNT = 16
# Chunk of grid points per direct evaluation block
_DIRECT_CHUNK = 512


def _tapered(corr: CorrelationSequence, N: int) -> np.ndarray:
    """Coefficients w_k = (1 - k/N) b(k), k < N, of the normalized correlation."""
    if not 1 <= N <= len(corr):
        raise ParameterError(f"N must satisfy 1 <= N <= {len(corr)}, got {N}")
    b = normalize(corr).as_array()[:N]
    return (1.0 - np.arange(N) / N) * b


def theta_statistic(corr: CorrelationSequence, N: int, theta: float) -> float:
    """Θ_N(θ); the cosine sum starts at k = 1 so b(0) is counted once."""
    w = _tapered(corr, N)
    k = np.arange(1, N)
    return float(w[0] + 2.0 * np.sum(w[1:] * np.cos(k * theta)))


def scan_grid(grid_count: int) -> np.ndarray:
    """grid_count + 1 points from -π to π, exactly symmetric about 0."""
    return np.pi * np.arange(-grid_count, grid_count + 1, 2) / grid_count


def _scan_direct(w: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    k = np.arange(1, w.size)
    out = np.empty(thetas.size)
    for start in range(0, thetas.size, _DIRECT_CHUNK):
        block = thetas[start : start + _DIRECT_CHUNK]
        out[start : start + block.size] = w[0] + 2.0 * np.cos(np.outer(block, k)) @ w[1:]
    return out


def _scan_fft(w: np.ndarray, grid_count: int) -> np.ndarray:
    # θ_i = π(2i - G)/G, so e^{ikθ_i} = (-1)^k e^{2πi k i / G}
    signed = w * np.where(np.arange(w.size) % 2 == 0, 1.0, -1.0)
    folded = np.zeros(grid_count)
    np.add.at(folded, np.arange(w.size) % grid_count, signed)
    folded[0] -= w[0] / 2  # lag 0 enters once, every other lag twice (cos = Re)
    series = grid_count * fft.ifft(folded)
    values = 2.0 * series.real
    return np.append(values, values[0])


def theta_scan(
    corr: CorrelationSequence,
    N: int,
    grid_count: int,
    method: Literal["fft", "direct"] = "fft",
) -> ThetaScan:
    """
    Θ_N(θ)/N on a uniform grid of grid_count segments over [-π, π].

    Both methods evaluate the same finite sum and agree to round-off.
    """
    if grid_count < MIN_GRID_COUNT:
        raise ParameterError(f"grid_count must be >= {MIN_GRID_COUNT}, got {grid_count}")
    w = _tapered(corr, N)
    thetas = scan_grid(grid_count)

    if method == "direct":
        values = _scan_direct(w, thetas)
    elif method == "fft":
        values = _scan_fft(w, grid_count)
    else:
        raise ParameterError(f"unknown scan method: {method}")

    values = values / N
    has_negative = bool(np.any(values < -1e-9))
    if has_negative:
        logger.warning(f"Scan N={N} dips below zero (min {values.min():.3e}); correlation is not positive definite")

    return ThetaScan(
        thetas=thetas.tolist(),
        values=values.tolist(),
        N=N,
        dt=corr.dt,
        has_negative=has_negative,
    )


def default_min_separation(N: int, grid_count: int) -> float:
    """Spacing 1/N (from N·l0·δ ~ 1), never below one grid cell."""
    return max(1.0 / N, 2 * math.pi / grid_count)


def detect_jumps(
    scan: ThetaScan,
    min_mass: float,
    min_separation: Optional[float] = None,
) -> list[JumpEstimate]:
    """
    Local maxima of the scan over [0, π] with value >= min_mass.

    Smaller maxima within min_separation of a larger accepted one are
    suppressed; the mass is the scan value at the peak. Sorted by
    descending mass.
    """
    if not min_mass > 0:
        raise ParameterError(f"min_mass must be positive, got {min_mass}")
    spacing = scan.spacing
    if min_separation is None:
        min_separation = default_min_separation(scan.N, scan.grid_count)
    if min_separation < spacing * (1 - 1e-9):
        raise ParameterError(f"min_separation {min_separation} is below the grid spacing {spacing}")

    values = np.asarray(scan.values)
    G = scan.grid_count
    # First grid point with θ >= 0: index G/2 (θ = 0) or (G+1)/2 (θ = π/G)
    start = (G + 1) // 2
    if G % 2 == 0:
        left_pad = values[start - 1]
    else:
        # ±π/G carry equal values, so a plateau straddles 0
        left_pad = -np.inf
    # Beyond π the periodic scan continues with θ = -π + δ, which mirrors π - δ
    extended = np.concatenate(([left_pad], values[start:], [values[G - 1]]))

    distance = max(1, int(round(min_separation / spacing)))
    peaks, _ = find_peaks(extended, height=min_mass, distance=distance)

    jumps = []
    for peak in peaks:
        index = start + peak - 1
        theta = abs(scan.thetas[index])
        jumps.append(
            JumpEstimate(
                theta=min(theta, math.pi),
                mass=max(float(values[index]), 0.0),
                frequency_hz=theta_to_hz(theta, scan.dt),
            )
        )
    jumps.sort(key=lambda j: (-j.mass, j.theta))
    return jumps


def fold_frequency(lam: float, omega: float) -> float:
    """
    Alias a continuous-time angular frequency into [-Ω, Ω), Ω = π/Δ.

    θ' = (frac(λ/(2Ω) + 1/2) - 1/2)·2Ω with frac(x) = x - floor(x).
    """
    if not omega > 0:
        raise ParameterError(f"omega must be positive, got {omega}")
    x = lam / (2 * omega) + 0.5
    return (x - math.floor(x) - 0.5) * 2 * omega


def theta_to_hz(theta: float, dt: float) -> float:
    """Radians per sample to Hz: θ / (2π dt)."""
    if not dt > 0:
        raise ParameterError(f"dt must be positive, got {dt}")
    return theta / (2 * math.pi * dt)


def hz_to_theta(frequency_hz: float, dt: float) -> float:
    """Hz to radians per sample: 2π f dt."""
    if not dt > 0:
        raise ParameterError(f"dt must be positive, got {dt}")
    return 2 * math.pi * frequency_hz * dt
