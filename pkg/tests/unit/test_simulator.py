"""Unit tests for the signal simulators and decay-ratio conversions."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from stabscan.core.exceptions import ParameterError
from stabscan.models import LangevinParams, SyntheticSpectrum
from stabscan.services.correlation import analytic_correlation, estimate_correlation, normalize
from stabscan.services.jump_detector import detect_jumps, theta_scan
from stabscan.services.simulator import (
    RngStream,
    analytic_hs_ratio,
    damping_for_dr,
    decay_ratio,
    dominance_size,
    hs_ratio_closed_form,
    natural_frequency_hz,
    simulate_cosine_noise,
    simulate_langevin,
)
from stabscan.services.toeplitz_norms import hs_ratio

BWR_PARAMS = dict(c=0.689, a1=9.87, D=500.0, tau=0.6, dt=0.01, output_stride=8)


class TestRngStream:
    def test_same_seed_same_draws(self):
        np.testing.assert_array_equal(RngStream(42).normal(100), RngStream(42).normal(100))

    def test_different_seeds_differ(self):
        assert not np.array_equal(RngStream(1).normal(10), RngStream(2).normal(10))

    def test_phases_in_range(self):
        phases = RngStream(3).phases(1000)
        assert phases.min() >= 0.0
        assert phases.max() < 2 * math.pi

    def test_rejects_negative_seed(self):
        with pytest.raises(ParameterError):
            RngStream(-1)


class TestCosineNoise:
    def test_deterministic(self, twin_peak_spectrum):
        first = simulate_cosine_noise(twin_peak_spectrum, 500, seed=9)
        second = simulate_cosine_noise(twin_peak_spectrum, 500, seed=9)
        assert first.samples == second.samples
        assert first.metadata["rng"] == RngStream.algorithm

    def test_dt_and_metadata(self, white_spectrum):
        ts = simulate_cosine_noise(white_spectrum, 10, seed=4, dt=0.08)
        assert ts.dt == 0.08
        assert ts.metadata["kind"] == "cosine"
        assert ts.metadata["seed"] == "4"
        assert len(ts) == 10

    def test_rejects_unnormalized_spectrum(self):
        spec = SyntheticSpectrum.from_pairs(0.5, [(1.0, 0.2)])
        with pytest.raises(ParameterError):
            simulate_cosine_noise(spec, 100)

    def test_pure_cosine_amplitude(self):
        spec = SyntheticSpectrum.from_pairs(0.0, [(1.0, 1.0)], normalized=True)
        xi = simulate_cosine_noise(spec, 2000, seed=5).as_array()
        assert np.max(np.abs(xi)) <= math.sqrt(2) + 1e-12


class TestLangevin:
    def test_no_forcing_stays_at_rest(self):
        params = LangevinParams(c=0.5, a1=9.87, D=0.0, tau=0.6, dt=0.01, n_samples=200)
        assert simulate_langevin(params).samples == [0.0] * 200

    def test_deterministic(self):
        params = LangevinParams(**BWR_PARAMS, n_samples=300, seed=12)
        assert simulate_langevin(params).samples == simulate_langevin(params).samples

    def test_sample_interval_and_metadata(self):
        params = LangevinParams(**BWR_PARAMS, n_samples=50, seed=3)
        ts = simulate_langevin(params)
        assert len(ts) == 50
        assert ts.dt == pytest.approx(0.08)
        assert ts.metadata["kind"] == "langevin"

    @pytest.mark.slow
    def test_main_peak_at_natural_frequency(self):
        """DR = 0.5 oscillator at f = 0.5 Hz sampled every 0.08 s peaks near θ = 0.25."""
        ts = simulate_langevin(LangevinParams(**BWR_PARAMS, n_samples=4209, seed=2024))
        corr = normalize(estimate_correlation(ts, 1024))
        jumps = detect_jumps(theta_scan(corr, 100, 3000), min_mass=0.02)
        assert jumps
        assert jumps[0].theta == pytest.approx(0.25, abs=0.03)
        assert jumps[0].frequency_hz == pytest.approx(0.5, abs=0.06)

    @pytest.mark.slow
    def test_linear_correlation_crosses_zero_at_quarter_period(self):
        """A lightly damped linear oscillator under short-memory forcing: b(t) first vanishes near π/(2√a1)."""
        params = LangevinParams(
            c=0.3, a1=9.87, D=1.0, tau=0.06, dt=0.005, output_stride=4,
            n_samples=50_000, seed=8, burn_in_steps=4000,
        )
        ts = simulate_langevin(params)
        b = estimate_correlation(ts, 60).as_array()
        k = int(np.argmax(b <= 0))
        assert k > 0
        crossing = ts.dt * (k - 1 + b[k - 1] / (b[k - 1] - b[k]))
        assert crossing == pytest.approx(math.pi / (2 * math.sqrt(9.87)), rel=0.15)

    @pytest.mark.parametrize(
        "overrides",
        [
            {"dt": 0.07},  # above tau/10
            {"dt": 0.05, "tau": 1.0},  # above 0.1/sqrt(a1)
            {"tau": 0.0},
            {"D": -1.0},
            {"output_stride": 0},
        ],
    )
    def test_stability_guards(self, overrides):
        params = {**BWR_PARAMS, "n_samples": 10, **overrides}
        with pytest.raises(ValidationError):
            LangevinParams(**params)


class TestDecayRatio:
    @pytest.mark.parametrize("c, expected", [(0.689, 0.5), (0.105, 0.9)])
    def test_reference_values(self, c, expected):
        assert decay_ratio(c, 9.87) == pytest.approx(expected, abs=1e-3)

    def test_undamped(self):
        assert decay_ratio(0.0, 4.0) == 1.0

    def test_overdamped(self):
        with pytest.raises(ParameterError):
            decay_ratio(2 * math.sqrt(9.87), 9.87)

    @pytest.mark.parametrize("dr, expected", [(0.5, 0.689), (0.9, 0.105), (1.0, 0.0)])
    def test_inverse(self, dr, expected):
        c = damping_for_dr(dr, 9.87)
        assert c == pytest.approx(expected, abs=1e-3)
        assert decay_ratio(c, 9.87) == pytest.approx(dr, rel=1e-12)

    @pytest.mark.parametrize("dr", [0.0, 1.5])
    def test_inverse_rejects_out_of_range(self, dr):
        with pytest.raises(ParameterError):
            damping_for_dr(dr, 9.87)

    def test_natural_frequency(self):
        assert natural_frequency_hz(9.87) == pytest.approx(0.5, abs=1e-3)
        with pytest.raises(ParameterError):
            natural_frequency_hz(0.0)


class TestAnalyticHsRatio:
    def test_white_noise(self, white_spectrum):
        assert analytic_hs_ratio(white_spectrum, 10) == pytest.approx(0.1)

    def test_small_synthetic_example(self, half_atom_spectrum):
        assert analytic_hs_ratio(half_atom_spectrum, 4) == pytest.approx(5 / 16, rel=1e-14)

    def test_single_atom_limit(self):
        spec = SyntheticSpectrum.from_pairs(0.0, [(1.0, 1.0)], normalized=True)
        assert analytic_hs_ratio(spec, 1000) == pytest.approx(0.5, abs=2e-3)

    @pytest.mark.parametrize("N", [1, 4, 37, 500])
    def test_closed_form_agrees(self, twin_peak_spectrum, N):
        assert hs_ratio_closed_form(twin_peak_spectrum, N) == pytest.approx(
            analytic_hs_ratio(twin_peak_spectrum, N), rel=1e-10
        )

    def test_closed_form_on_lattice(self):
        spec = SyntheticSpectrum.from_pairs(0.2, [(math.pi / 2, 0.8)], normalized=True)
        for N in (2, 4, 8):
            assert hs_ratio_closed_form(spec, N) == pytest.approx(
                hs_ratio(analytic_correlation(spec, N - 1), N), rel=1e-10
            )

    def test_rejects_unnormalized(self):
        spec = SyntheticSpectrum.from_pairs(0.3, [(1.0, 0.3)])
        with pytest.raises(ParameterError):
            analytic_hs_ratio(spec, 10)
        with pytest.raises(ParameterError):
            hs_ratio_closed_form(spec, 10)

    def test_first_term_dominates_at_small_n(self, half_atom_spectrum):
        value = analytic_hs_ratio(half_atom_spectrum, 12)
        assert value < 0.25
        assert value == pytest.approx(0.1875, rel=1e-12)

    def test_dominance_size(self, half_atom_spectrum, white_spectrum):
        # 2p(2 - p) / m² = 2·0.5·1.5 / 0.25
        assert dominance_size(half_atom_spectrum) == pytest.approx(6.0)
        assert dominance_size(white_spectrum) == math.inf
