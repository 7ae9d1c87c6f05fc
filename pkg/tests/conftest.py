"""Pytest configuration and shared fixtures."""

import math

import pytest

from stabscan.core import settings
from stabscan.models import CorrelationSequence, SyntheticSpectrum
from stabscan.services.runners.signal_io import write_signal
from stabscan.services.simulator import simulate_cosine_noise


@pytest.fixture
def temp_results_dir(tmp_path):
    """Point settings.results_dir at a temporary directory for the test."""
    original_results_dir = settings.results_dir
    settings.results_dir = tmp_path / "results"

    yield settings.results_dir

    settings.results_dir = original_results_dir


@pytest.fixture
def white_spectrum():
    return SyntheticSpectrum(noise_level=1.0, normalized=True)


@pytest.fixture
def half_atom_spectrum():
    """p = 0.5 with one pair of total mass 0.5 at π/2."""
    return SyntheticSpectrum.from_pairs(0.5, [(math.pi / 2, 0.5)], normalized=True)


@pytest.fixture
def twin_peak_spectrum():
    """Two close pairs at 0.24 and 0.27 rad."""
    return SyntheticSpectrum.from_pairs(0.5, [(0.24, 0.3), (0.27, 0.2)], normalized=True)


@pytest.fixture
def delta_correlation():
    """b(k) = δ_k0 up to lag 63."""
    return CorrelationSequence(values=[1.0] + [0.0] * 63, normalized=True)


@pytest.fixture
def ones_correlation():
    """b(k) = 1 up to lag 63."""
    return CorrelationSequence(values=[1.0] * 64, normalized=True)


@pytest.fixture
def white_noise_file(tmp_path, white_spectrum):
    """White-noise signal file, n = 10⁵, dt = 0.08 in the header."""
    ts = simulate_cosine_noise(white_spectrum, 100_000, seed=7, dt=0.08)
    return write_signal(ts, tmp_path / "white.txt")


@pytest.fixture
def cosine_file(tmp_path):
    """p = 0.5 plus one pair of mass 0.5 at θ = 1 rad, n = 10⁵."""
    spec = SyntheticSpectrum.from_pairs(0.5, [(1.0, 0.5)], normalized=True)
    ts = simulate_cosine_noise(spec, 100_000, seed=11, dt=0.08)
    return write_signal(ts, tmp_path / "cosine.txt")
