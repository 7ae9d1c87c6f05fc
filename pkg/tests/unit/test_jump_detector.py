"""Unit tests for the Fejér jump scan and frequency conversions."""

import math

import numpy as np
import pytest

from stabscan.core.exceptions import ParameterError
from stabscan.models import CorrelationSequence, SyntheticSpectrum, ThetaScan
from stabscan.services.correlation import analytic_correlation
from stabscan.services.jump_detector import (
    MIN_GRID_COUNT,
    default_min_separation,
    detect_jumps,
    fold_frequency,
    hz_to_theta,
    scan_grid,
    theta_scan,
    theta_statistic,
    theta_to_hz,
)


def _fejer_oracle(spec: SyntheticSpectrum, N: int, theta: float) -> float:
    """p + Σ_j μ_j sin²(Nδ/2) / (N sin²(δ/2)) over the individual atoms."""
    locations, masses = spec.individual_atoms()
    total = spec.noise_level
    for x, mu in zip(locations, masses):
        half = (theta - x) / 2
        if abs(math.sin(half)) < 1e-12:
            total += mu * N
        else:
            total += mu * math.sin(N * half) ** 2 / (N * math.sin(half) ** 2)
    return total


class TestThetaStatistic:
    def test_white_noise_is_flat(self, delta_correlation):
        for theta in (0.0, 0.4, math.pi):
            assert theta_statistic(delta_correlation, 10, theta) == pytest.approx(1.0, abs=1e-14)

    def test_full_jump_at_zero(self, ones_correlation):
        assert theta_statistic(ones_correlation, 50, 0.0) / 50 == pytest.approx(1.0, rel=1e-14)

    def test_small_synthetic_example(self, half_atom_spectrum):
        corr = analytic_correlation(half_atom_spectrum, 3)
        value = theta_statistic(corr, 4, math.pi / 2)
        assert value == pytest.approx(1.5, abs=1e-14)
        assert value / 4 == pytest.approx(0.375, abs=1e-14)

    @pytest.mark.parametrize("theta", [0.0, 0.13, 0.255, 1.9, -2.7])
    def test_matches_fejer_kernel(self, twin_peak_spectrum, theta):
        N = 120
        corr = analytic_correlation(twin_peak_spectrum, N - 1)
        expected = _fejer_oracle(twin_peak_spectrum, N, theta)
        assert theta_statistic(corr, N, theta) == pytest.approx(expected, abs=1e-10)

    @pytest.mark.parametrize("N", [200, 1000])
    def test_converges_to_individual_mass(self, N):
        spec = SyntheticSpectrum.from_pairs(0.5, [(1.0, 0.5)], normalized=True)
        corr = analytic_correlation(spec, N - 1)
        assert abs(theta_statistic(corr, N, 1.0) / N - 0.25) <= 2 / N + 0.01

    def test_lower_bound_one_over_n_from_atom(self):
        N = 400
        spec = SyntheticSpectrum.from_pairs(0.4, [(0.8, 0.6)], normalized=True)
        corr = analytic_correlation(spec, N - 1)
        assert theta_statistic(corr, N, 0.8 + 1 / N) / N >= 5 / 6 * 0.3 - 1e-9

    def test_decays_away_from_atoms(self):
        """Smooth density part: Θ_N/N far from the atom shrinks like 1/N."""
        rho = 0.5
        values = []
        for N in (100, 400, 1600):
            k = np.arange(N)
            lags = 0.5 * rho**k + 0.5 * np.cos(2.0 * k)
            corr = CorrelationSequence(values=lags.tolist())
            values.append(theta_statistic(corr, N, 0.5))
        # Θ_N itself stays bounded, so Θ_N/N = O(1/N)
        assert max(values) / min(values) < 1.5


class TestThetaScan:
    def test_grid_is_symmetric(self):
        thetas = scan_grid(3000)
        assert thetas.size == 3001
        assert thetas[0] == -math.pi
        assert thetas[-1] == math.pi
        np.testing.assert_array_equal(thetas, -thetas[::-1])

    def test_white_noise_values(self, delta_correlation):
        scan = theta_scan(CorrelationSequence(values=[1.0] + [0.0] * 99), 100, 3000)
        np.testing.assert_allclose(scan.values, 0.01, atol=1e-14)
        assert scan.grid_count == 3000
        assert not scan.has_negative

    def test_rank_one_peak_at_zero(self):
        scan = theta_scan(CorrelationSequence(values=[1.0] * 100), 100, 3000)
        peak = int(np.argmax(scan.values))
        assert scan.thetas[peak] == pytest.approx(0.0, abs=1e-15)
        assert scan.values[peak] == pytest.approx(1.0, rel=1e-12)

    @pytest.mark.parametrize("grid_count", [16, 17, 999])
    def test_fft_matches_direct(self, twin_peak_spectrum, grid_count):
        corr = analytic_correlation(twin_peak_spectrum, 299)
        fast = theta_scan(corr, 300, grid_count, method="fft")
        direct = theta_scan(corr, 300, grid_count, method="direct")
        np.testing.assert_allclose(fast.values, direct.values, atol=1e-10)
        assert fast.thetas == direct.thetas

    def test_nonnegative_and_symmetric_for_analytic_input(self, twin_peak_spectrum):
        corr = analytic_correlation(twin_peak_spectrum, 499)
        values = np.asarray(theta_scan(corr, 500, 3000).values)
        assert values.min() >= -1e-9
        np.testing.assert_allclose(values, values[::-1], atol=1e-12)

    def test_flags_indefinite_input(self, caplog):
        corr = CorrelationSequence(values=[1.0, 0.9, -0.9, 0.9])
        scan = theta_scan(corr, 4, 64)
        assert scan.has_negative
        assert "dips below zero" in caplog.text

    def test_grid_floor(self, delta_correlation):
        scan = theta_scan(delta_correlation, 10, MIN_GRID_COUNT)
        assert len(scan.thetas) == MIN_GRID_COUNT + 1
        with pytest.raises(ParameterError):
            theta_scan(delta_correlation, 10, MIN_GRID_COUNT - 1)

    def test_unknown_method(self, delta_correlation):
        with pytest.raises(ParameterError):
            theta_scan(delta_correlation, 10, 64, method="chebyshev")

    def test_carries_sampling_interval(self, half_atom_spectrum):
        corr = analytic_correlation(half_atom_spectrum, 20, dt=0.08)
        assert theta_scan(corr, 21, 64).dt == 0.08


class TestDetectJumps:
    def test_white_noise_has_none(self, delta_correlation):
        scan = theta_scan(delta_correlation, 64, 3000)
        assert detect_jumps(scan, min_mass=0.05) == []

    def test_single_pair(self):
        spec = SyntheticSpectrum.from_pairs(0.5, [(1.0, 0.5)], normalized=True)
        corr = analytic_correlation(spec, 499)
        jumps = detect_jumps(theta_scan(corr, 500, 3000), min_mass=0.1)
        assert len(jumps) == 1
        assert jumps[0].theta == pytest.approx(1.0, abs=2 * math.pi / 3000)
        assert jumps[0].mass == pytest.approx(0.25, abs=0.02)

    def test_resolves_close_pairs(self, twin_peak_spectrum):
        corr = analytic_correlation(twin_peak_spectrum, 499, dt=0.08)
        scan = theta_scan(corr, 500, 3000)
        jumps = detect_jumps(scan, min_mass=0.05, min_separation=0.02)
        assert len(jumps) == 2
        spacing = scan.spacing
        assert jumps[0].theta == pytest.approx(0.24, abs=2 * spacing)
        assert jumps[1].theta == pytest.approx(0.27, abs=2 * spacing)
        assert jumps[0].mass == pytest.approx(0.15, abs=0.01)
        assert jumps[1].mass == pytest.approx(0.10, abs=0.01)
        assert jumps[0].frequency_hz == pytest.approx(theta_to_hz(jumps[0].theta, 0.08))

    def test_sorted_by_mass(self, twin_peak_spectrum):
        corr = analytic_correlation(twin_peak_spectrum, 499)
        jumps = detect_jumps(theta_scan(corr, 500, 3000), min_mass=0.01, min_separation=0.02)
        masses = [j.mass for j in jumps]
        assert masses == sorted(masses, reverse=True)

    def test_peak_at_zero_edge(self):
        scan = theta_scan(CorrelationSequence(values=[1.0] * 100), 100, 3000)
        jumps = detect_jumps(scan, min_mass=0.5)
        assert len(jumps) == 1
        assert jumps[0].theta == 0.0
        assert jumps[0].mass == pytest.approx(1.0, rel=1e-12)

    def test_peak_at_nyquist_edge(self):
        alternating = CorrelationSequence(values=[(-1.0) ** k for k in range(100)])
        scan = theta_scan(alternating, 100, 3000)
        jumps = detect_jumps(scan, min_mass=0.5)
        assert len(jumps) == 1
        assert jumps[0].theta == pytest.approx(math.pi)

    def test_odd_grid_edge_plateau(self):
        scan = theta_scan(CorrelationSequence(values=[1.0] * 100), 100, 2999)
        jumps = detect_jumps(scan, min_mass=0.5)
        assert len(jumps) == 1
        assert jumps[0].theta == pytest.approx(math.pi / 2999)

    def test_rejects_bad_thresholds(self, delta_correlation):
        scan = theta_scan(delta_correlation, 64, 300)
        with pytest.raises(ParameterError):
            detect_jumps(scan, min_mass=0.0)
        with pytest.raises(ParameterError):
            detect_jumps(scan, min_mass=0.1, min_separation=scan.spacing / 2)

    def test_default_separation(self):
        assert default_min_separation(100, 3000) == pytest.approx(0.01)
        assert default_min_separation(5000, 3000) == pytest.approx(2 * math.pi / 3000)


def test_scan_model_rejects_short_grid():
    with pytest.raises(ValueError):
        ThetaScan(thetas=[0.0] * 5, values=[0.0] * 5, N=1, dt=1.0)


class TestFrequencies:
    @pytest.mark.parametrize(
        "lam, expected",
        [(0.0, 0.0), (0.5, 0.5), (1.5, -0.5), (-1.5, 0.5), (2.0, 0.0)],
    )
    def test_fold(self, lam, expected):
        assert fold_frequency(lam, 1.0) == pytest.approx(expected, abs=1e-15)

    def test_fold_rejects_nonpositive_nyquist(self):
        with pytest.raises(ParameterError):
            fold_frequency(1.0, 0.0)

    def test_theta_to_hz(self):
        assert theta_to_hz(0.24, 0.08) == pytest.approx(0.4775, abs=1e-4)
        assert theta_to_hz(0.27, 0.08) == pytest.approx(0.537, abs=1e-3)
        assert theta_to_hz(0.0, 0.3) == 0.0

    def test_hz_to_theta_inverts(self):
        assert hz_to_theta(theta_to_hz(0.2513, 0.08), 0.08) == pytest.approx(0.2513, rel=1e-14)

    @pytest.mark.parametrize("dt", [0.0, -0.1])
    def test_rejects_nonpositive_dt(self, dt):
        with pytest.raises(ParameterError):
            theta_to_hz(0.1, dt)
        with pytest.raises(ParameterError):
            hz_to_theta(0.1, dt)
