"""
Stability statistics of truncated Toeplitz correlation matrices Q_N = (b(j - k)).

For a normalized correlation (b(0) = 1):
- hs_ratio        (1/N²) ||Q_N||_2² -> Σ over individual atoms of μ²
- max_eigen_ratio λ_max(Q_N) / N    -> largest individual atom mass
- abs_sum_ratio   (1/N) Σ |b(p)|    -> 0 is sufficient for stability
plus the row-sum norm bound, the Gram-matrix oracle for purely atomic
spectra, and the continuous-time counterparts.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np
from scipy import integrate, linalg

from stabscan.core.config import settings
from stabscan.core.exceptions import ParameterError
from stabscan.models import (
    CorrelationSequence,
    DiagnosticCurve,
    EigenSolveOptions,
    StatisticKind,
    SyntheticSpectrum,
)
from stabscan.services.correlation import normalize
from stabscan.services.toeplitz_operator import SymmetricToeplitzOperator, lanczos_largest

logger = logging.getLogger(__name__)


def _check_size(corr: CorrelationSequence, N: int) -> None:
    if not 1 <= N <= len(corr):
        raise ParameterError(f"N must satisfy 1 <= N <= {len(corr)}, got {N}")


def _normalized(corr: CorrelationSequence) -> np.ndarray:
    return normalize(corr).as_array()


def default_eigen_options() -> EigenSolveOptions:
    return EigenSolveOptions(rel_tolerance=settings.eigen_rel_tolerance, seed=settings.eigen_seed)


def hs_ratio(corr: CorrelationSequence, N: int) -> float:
    """(1/N²)||Q_N||_2² = 1/N + (2/N²) Σ_{k=1}^{N-1} (N - k) b(k)², in O(N)."""
    _check_size(corr, N)
    b = _normalized(corr)[:N]
    k = np.arange(1, N)
    return float(1.0 / N + 2.0 * np.sum((N - k) * b[1:] ** 2) / N**2)


def hs_ratio_curve(corr: CorrelationSequence, sizes: Sequence[int]) -> DiagnosticCurve:
    values = [hs_ratio(corr, int(n)) for n in sizes]
    return DiagnosticCurve(sizes=list(sizes), values=values, statistic_kind=StatisticKind.HS_RATIO)


def max_eigen_ratio(
    corr: CorrelationSequence,
    N: int,
    opts: Optional[EigenSolveOptions] = None,
) -> float:
    """
    λ_max(Q_N) / N for the normalized correlation.

    Uses Lanczos on the FFT-backed Toeplitz operator; raises ConvergenceError
    rather than returning an unconverged value.
    """
    _check_size(corr, N)
    opts = opts or default_eigen_options()
    operator = SymmetricToeplitzOperator(_normalized(corr)[:N])
    result = lanczos_largest(operator, opts)
    return result.eigenvalue / N


def eigen_ratio_curve(
    corr: CorrelationSequence,
    sizes: Sequence[int],
    opts: Optional[EigenSolveOptions] = None,
    max_workers: Optional[int] = None,
) -> DiagnosticCurve:
    """Eigen ratios for every size; sizes are solved concurrently, assembled in order."""
    opts = opts or default_eigen_options()
    corr = normalize(corr)
    workers = max_workers or settings.max_workers
    with ThreadPoolExecutor(max_workers=workers) as executor:
        values = list(executor.map(lambda n: max_eigen_ratio(corr, int(n), opts), sizes))
    return DiagnosticCurve(sizes=list(sizes), values=values, statistic_kind=StatisticKind.EIGEN_RATIO)


def dense_max_eigen_oracle(corr: CorrelationSequence, N: int) -> float:
    """Largest eigenvalue of the explicit Toeplitz matrix of the raw lags (LAPACK)."""
    _check_size(corr, N)
    if N > settings.dense_oracle_limit:
        raise ParameterError(f"dense oracle limited to N <= {settings.dense_oracle_limit}, got {N}")
    matrix = linalg.toeplitz(corr.as_array()[:N])
    return float(linalg.eigvalsh(matrix, subset_by_index=[N - 1, N - 1])[0])


def gram_max_eigen(locations: Sequence[float], masses: Sequence[float], N: int) -> float:
    """
    Largest eigenvalue of Σ_j μ_j e_j e_j^* with e_j = (exp(i p x_j))_{p<N}.

    Computed from the small Hermitian Gram matrix
    A_ab = sqrt(μ_a μ_b) (e_b, e_a), (e_b, e_a) = Σ_p exp(i p (x_b - x_a)),
    which shares the nonzero eigenvalues.
    """
    x = np.asarray(locations, dtype=float)
    mu = np.asarray(masses, dtype=float)
    if x.size == 0:
        raise ParameterError("at least one atom is required")
    if N < 1:
        raise ParameterError(f"N must be >= 1, got {N}")

    delta = x[None, :] - x[:, None]
    half = delta / 2
    sin_half = np.sin(half)
    on_lattice = np.isclose(np.abs(sin_half), 0.0, atol=1e-15)
    safe = np.where(on_lattice, 1.0, sin_half)
    # (e^{iNδ} - 1)/(e^{iδ} - 1) = e^{i(N-1)δ/2} sin(Nδ/2)/sin(δ/2)
    kernel = np.exp(1j * (N - 1) * half) * np.sin(N * half) / safe
    kernel = np.where(on_lattice, N * np.exp(1j * (N - 1) * half) * np.cos(N * half) / np.cos(half), kernel)

    weights = np.sqrt(np.outer(mu, mu))
    gram = weights * kernel
    return float(linalg.eigvalsh(gram)[-1])


def atomic_gram_max_eigen(spec: SyntheticSpectrum, N: int) -> float:
    """λ_max of the purely atomic part of Q_N, from the 2s x 2s Gram matrix."""
    if not spec.atoms:
        raise ParameterError("spectrum has no atoms")
    locations, masses = spec.individual_atoms()
    return gram_max_eigen(locations, masses, N)


def abs_sum_ratio(corr: CorrelationSequence, N: int) -> float:
    """(1/N) Σ_{p=0}^{N-1} |b(p)| / b(0)."""
    _check_size(corr, N)
    b = _normalized(corr)[:N]
    return float(np.sum(np.abs(b)) / N)


def abs_sum_curve(corr: CorrelationSequence, sizes: Sequence[int]) -> DiagnosticCurve:
    values = [abs_sum_ratio(corr, int(n)) for n in sizes]
    return DiagnosticCurve(sizes=list(sizes), values=values, statistic_kind=StatisticKind.ABS_SUM)


def toeplitz_norm_upper_bound(corr: CorrelationSequence, N: int) -> float:
    """Row-sum bound |b(0)| + 2 Σ_{p=1}^{N-1} |b(p)| on the operator norm of Q_N."""
    _check_size(corr, N)
    b = corr.as_array()[:N]
    return float(abs(b[0]) + 2.0 * np.sum(np.abs(b[1:])))


def _horizon_grid(corr: CorrelationSequence, T: float) -> tuple[np.ndarray, float]:
    if not T > 0:
        raise ParameterError(f"T must be positive, got {T}")
    steps = int(math.floor(T / corr.dt + 1e-9))
    if steps > corr.max_lag:
        raise ParameterError(
            f"T={T} exceeds the available lag span {corr.max_lag * corr.dt}"
        )
    if steps < 1:
        raise ParameterError(f"T={T} is shorter than one lag step dt={corr.dt}")
    snapped = steps * corr.dt
    if abs(snapped - T) > 1e-9 * T:
        logger.warning(f"Snapping horizon T={T} onto the lag grid: T={snapped}")
    b = _normalized(corr)[: steps + 1]
    return b, snapped


def continuous_hs_functional(corr: CorrelationSequence, T: float) -> float:
    """Trapezoidal (2/T) ∫_0^T (1 - t/T) b(t)² dt on the native lag grid."""
    b, T = _horizon_grid(corr, T)
    t = np.arange(b.size) * corr.dt
    return float(2.0 / T * integrate.trapezoid((1.0 - t / T) * b**2, dx=corr.dt))


def continuous_abs_functional(corr: CorrelationSequence, T: float) -> float:
    """Trapezoidal (1/T) ∫_0^T |b(t)| dt on the native lag grid."""
    b, T = _horizon_grid(corr, T)
    return float(integrate.trapezoid(np.abs(b), dx=corr.dt) / T)


def continuous_curve(
    corr: CorrelationSequence,
    horizons: Sequence[float],
    kind: StatisticKind = StatisticKind.CONT_HS,
) -> DiagnosticCurve:
    if kind == StatisticKind.CONT_HS:
        functional = continuous_hs_functional
    elif kind == StatisticKind.CONT_ABS:
        functional = continuous_abs_functional
    else:
        raise ParameterError(f"not a continuous-time statistic: {kind.value}")
    values = [functional(corr, float(T)) for T in horizons]
    return DiagnosticCurve(sizes=[float(T) for T in horizons], values=values, statistic_kind=kind)


def holder_exponent_fit(curve: DiagnosticCurve) -> float:
    """
    Least-squares slope γ of log ||Q_N||_2 against log N, with ||Q_N||_2 = N sqrt(hs_ratio).

    A spectrum whose density is Hölder of order ν keeps γ <= 2/(2 + ν);
    pure atoms give γ = 1 and white noise γ = 1/2.
    """
    if curve.statistic_kind != StatisticKind.HS_RATIO:
        raise ParameterError(f"expected an hs_ratio curve, got {curve.statistic_kind.value}")
    if len(curve.sizes) < 4:
        raise ParameterError(f"need at least 4 sizes, got {len(curve.sizes)}")
    sizes = np.asarray(curve.sizes, dtype=float)
    values = np.asarray(curve.values, dtype=float)
    if sizes[-1] / sizes[0] < 8:
        raise ParameterError("sizes must span a factor of at least 8")
    if np.any(values <= 0):
        raise ParameterError("hs_ratio values must be positive for a log-log fit")

    norms = sizes * np.sqrt(values)
    slope, _ = np.polyfit(np.log(sizes), np.log(norms), deg=1)
    return float(slope)
