"""
Ground-truth signal generators and exact oracles.

- random-phase cosines plus white noise, whose correlation is exactly the
  analytic correlation of the SyntheticSpectrum;
- the colored-noise Langevin oscillator (Euler–Maruyama);
- decay-ratio conversions for the damped linear oscillator;
- exact HS ratios of synthetic spectra.

Random numbers come from a Philox counter-based stream so a seed gives the
same series on every platform.
"""

import logging
import math

import numpy as np

from stabscan.core.exceptions import ParameterError
from stabscan.models import LangevinParams, SyntheticSpectrum, TimeSeries
from stabscan.services.correlation import analytic_correlation
from stabscan.services.toeplitz_norms import hs_ratio

logger = logging.getLogger(__name__)


class RngStream:
    """Seeded Philox-4x64 (10 rounds) stream; identical seeds give identical draws."""

    algorithm = "philox4x64-10"

    def __init__(self, seed: int):
        if seed < 0:
            raise ParameterError(f"seed must be non-negative, got {seed}")
        self.seed = int(seed)
        self.generator = np.random.Generator(np.random.Philox(self.seed))

    def normal(self, size: int) -> np.ndarray:
        return self.generator.standard_normal(size)

    def phases(self, size: int) -> np.ndarray:
        return self.generator.uniform(0.0, 2 * math.pi, size)


def simulate_cosine_noise(
    spec: SyntheticSpectrum,
    n: int,
    seed: int = 0,
    dt: float = 1.0,
) -> TimeSeries:
    """
    ξ(t) = sqrt(p) w(t) + Σ_α sqrt(2 m_α) cos(θ_α t + φ_α), t = 0..n-1.

    Phases are drawn first, then the white noise, from one seeded stream.

    Raises:
        ParameterError: If the spectrum does not have total mass 1
    """
    if not spec.is_normalized:
        raise ParameterError(f"spectrum must have total mass 1, got {spec.total_mass}")
    if n < 1:
        raise ParameterError(f"n must be positive, got {n}")

    stream = RngStream(seed)
    phases = stream.phases(len(spec.atoms))
    noise = stream.normal(n)

    t = np.arange(n, dtype=float)
    xi = math.sqrt(spec.noise_level) * noise
    for atom, phase in zip(spec.atoms, phases):
        xi += math.sqrt(2 * atom.pair_mass) * np.cos(atom.theta * t + phase)

    return TimeSeries(
        samples=xi.tolist(),
        dt=dt,
        metadata={"kind": "cosine", "seed": str(seed), "rng": RngStream.algorithm},
    )


def simulate_langevin(params: LangevinParams) -> TimeSeries:
    """
    Integrate ξ'' + c ξ' + U(ξ) = F with the Ornstein–Uhlenbeck force F.

    Per step: v <- v + dt(-c v - U(ξ) + F), ξ <- ξ + dt v, and
    F <- F - dt F/τ + (sqrt(D dt)/τ) g with g standard normal. The state
    starts at (0, 0, 0); burn-in steps are discarded, then ξ is emitted
    every output_stride steps.
    """
    burn_in = params.effective_burn_in
    total_steps = burn_in + params.n_samples * params.output_stride
    gains = RngStream(params.seed).normal(total_steps) * (math.sqrt(params.D * params.dt) / params.tau)

    c, a1, a2, a3 = params.c, params.a1, params.a2, params.a3
    h = params.dt
    decay = 1.0 - h / params.tau
    stride = params.output_stride

    xi = v = force = 0.0
    out = np.empty(params.n_samples)
    emitted = 0
    for step in range(total_steps):
        restoring = a1 * xi + a2 * xi * xi + a3 * xi * xi * xi
        v += h * (-c * v - restoring + force)
        xi += h * v
        force = decay * force + gains[step]
        if step >= burn_in and (step - burn_in + 1) % stride == 0:
            out[emitted] = xi
            emitted += 1

    if not np.all(np.isfinite(out)):
        raise ParameterError("Langevin integration diverged; reduce dt")

    logger.debug(f"Langevin run: steps={total_steps} burn_in={burn_in} emitted={emitted}")
    return TimeSeries(
        samples=out.tolist(),
        dt=params.sample_interval,
        metadata={"kind": "langevin", "seed": str(params.seed), "rng": RngStream.algorithm},
    )


def decay_ratio(c: float, a1: float) -> float:
    """DR = exp(-2πc / sqrt(4ω² - c²)) with ω² = a1."""
    if not a1 > 0:
        raise ParameterError(f"a1 must be positive, got {a1}")
    if c < 0:
        raise ParameterError(f"damping must be non-negative, got {c}")
    if c >= 2 * math.sqrt(a1):
        raise ParameterError(f"overdamped: c={c} >= 2*sqrt(a1)={2 * math.sqrt(a1)}, no oscillation")
    return math.exp(-2 * math.pi * c / math.sqrt(4 * a1 - c * c))


def damping_for_dr(dr: float, a1: float) -> float:
    """Inverse of decay_ratio: c = 2ω L / sqrt(4π² + L²), L = -ln(dr)."""
    if not 0 < dr <= 1:
        raise ParameterError(f"decay ratio must lie in (0, 1], got {dr}")
    if not a1 > 0:
        raise ParameterError(f"a1 must be positive, got {a1}")
    log_ratio = -math.log(dr)
    return 2 * math.sqrt(a1) * log_ratio / math.sqrt(4 * math.pi**2 + log_ratio**2)


def natural_frequency_hz(a1: float) -> float:
    """f = sqrt(a1) / 2π."""
    if not a1 > 0:
        raise ParameterError(f"a1 must be positive, got {a1}")
    return math.sqrt(a1) / (2 * math.pi)


def analytic_hs_ratio(spec: SyntheticSpectrum, N: int) -> float:
    """Exact (1/N²)||Q_N||_2² of a normalized synthetic spectrum, in O(N)."""
    if not spec.is_normalized:
        raise ParameterError(f"spectrum must have total mass 1, got {spec.total_mass}")
    if N < 1:
        raise ParameterError(f"N must be positive, got {N}")
    return hs_ratio(analytic_correlation(spec, N - 1), N)


def _squared_dirichlet(phi: np.ndarray, N: int) -> np.ndarray:
    """K(φ) = sin²(Nφ/2) / sin²(φ/2), with K = N² on the lattice φ ∈ 2πZ."""
    s = np.sin(phi / 2)
    on_lattice = np.isclose(np.abs(s), 0.0, atol=1e-15)
    safe = np.where(on_lattice, 1.0, s)
    return np.where(on_lattice, float(N * N), np.sin(N * phi / 2) ** 2 / safe**2)


def hs_ratio_closed_form(spec: SyntheticSpectrum, N: int) -> float:
    """
    p(2 - p)/N + (1/2N²) Σ_{α,α'} m_α m_α' [K(θ_α - θ_α') + K(θ_α + θ_α')].

    The α = α' difference terms give the limit ½ Σ m_α²; the α = α' sum
    terms are the O(1/N²) self term sin²(Nθ)/sin²θ.
    """
    if not spec.is_normalized:
        raise ParameterError(f"spectrum must have total mass 1, got {spec.total_mass}")
    p = spec.noise_level
    value = p * (2 - p) / N
    if spec.atoms:
        theta = np.array([a.theta for a in spec.atoms])
        m = np.array([a.pair_mass for a in spec.atoms])
        kernel = _squared_dirichlet(theta[:, None] - theta[None, :], N) + _squared_dirichlet(
            theta[:, None] + theta[None, :], N
        )
        value += float(m @ kernel @ m) / (2 * N * N)
    return value


def dominance_size(spec: SyntheticSpectrum) -> float:
    """N* = 2p(2 - p) / Σ m_α², beyond which the constant HS term dominates."""
    if not spec.atoms:
        return math.inf
    p = spec.noise_level
    return 2 * p * (2 - p) / sum(a.pair_mass**2 for a in spec.atoms)
