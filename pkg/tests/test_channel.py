import numpy as np
import pytest

from isacbench.channel import (
    ChannelProfile,
    ChannelTap,
    FadingProfile,
    apply_time_channel,
    freq_response,
    make_notched_profile,
    pathloss_db,
)
from isacbench.signals import ComplexSequence


class TestFreqResponse:
    def test_zero_delay_tap_all_ones(self):
        prof = ChannelProfile((ChannelTap(1.0 + 0j, 0.0),))
        h = freq_response(prof, 16, 15e3)
        assert np.allclose(h, 1.0)

    def test_one_sample_delay_linear_ramp(self):
        n, df = 64, 15e3
        dt = 1.0 / (n * df)
        prof = ChannelProfile((ChannelTap(1.0 + 0j, dt),))
        h = freq_response(prof, n, df)
        assert np.allclose(np.abs(h), 1.0)
        expected = np.exp(-2j * np.pi * np.arange(n) / n)
        assert np.max(np.abs(h - expected)) < 1e-12

    def test_two_path_magnitude_oracle(self):
        # equal taps one sample apart: |H_m| = 2 |cos(pi m / N)|
        n, df = 32, 1e6
        dt = 1.0 / (n * df)
        prof = ChannelProfile((ChannelTap(1.0 + 0j, 0.0), ChannelTap(1.0 + 0j, dt)))
        h = freq_response(prof, n, df)
        expected = 2.0 * np.abs(np.cos(np.pi * np.arange(n) / n))
        assert np.max(np.abs(np.abs(h) - expected)) < 1e-12


class TestTimeChannel:
    def test_identity_tap(self):
        x = ComplexSequence(np.arange(8, dtype=complex), 1e-6)
        prof = ChannelProfile((ChannelTap(1.0 + 0j, 0.0),))
        y = apply_time_channel(x, prof)
        assert np.array_equal(y.samples, x.samples)

    def test_pure_delay_peak(self):
        rng = np.random.default_rng(0)
        x = ComplexSequence(np.exp(2j * np.pi * rng.uniform(size=64)), 1e-6)
        d = 5
        prof = ChannelProfile((ChannelTap(1.0 + 0j, d * 1e-6),))
        y = apply_time_channel(x, prof)
        corr = np.array([np.abs(np.vdot(x.samples, y.samples[k:k + 64]))
                         for k in range(len(y) - 63)])
        assert np.argmax(corr) == d

    def test_off_grid_delay_rejected(self):
        x = ComplexSequence(np.ones(8, dtype=complex), 1e-6)
        prof = ChannelProfile((ChannelTap(1.0 + 0j, 1.5e-6),))
        with pytest.raises(ValueError):
            apply_time_channel(x, prof)

    def test_noise_variance(self):
        dt = 1e-9
        x = ComplexSequence(np.zeros(100_000, dtype=complex), dt)
        prof = ChannelProfile((ChannelTap(0.0 + 0j, 0.0),), noise_psd=1e-12)
        y = apply_time_channel(x, prof, rng=11)
        assert np.mean(np.abs(y.samples) ** 2) == pytest.approx(1e-12 / dt, rel=0.02)

    def test_linearity_without_noise(self):
        rng = np.random.default_rng(1)
        dt = 1e-6
        a = rng.standard_normal(32) + 1j * rng.standard_normal(32)
        b = rng.standard_normal(32) + 1j * rng.standard_normal(32)
        prof = ChannelProfile((ChannelTap(0.7 - 0.2j, 2 * dt), ChannelTap(0.1j, 0.0)))
        ya = apply_time_channel(ComplexSequence(a, dt), prof).samples
        yb = apply_time_channel(ComplexSequence(b, dt), prof).samples
        yab = apply_time_channel(ComplexSequence(a + 2 * b, dt), prof).samples
        assert np.max(np.abs(yab - (ya + 2 * yb))) < 1e-12

    def test_seeded_reproducibility(self):
        x = ComplexSequence(np.ones(64, dtype=complex), 1e-6)
        prof = ChannelProfile((ChannelTap(1.0 + 0j, 0.0),), noise_psd=1e-9)
        y1 = apply_time_channel(x, prof, rng=42)
        y2 = apply_time_channel(x, prof, rng=42)
        assert np.array_equal(y1.samples, y2.samples)

    def test_doppler_rotation(self):
        dt = 1e-6
        x = ComplexSequence(np.ones(16, dtype=complex), dt)
        nu = 1000.0
        prof = ChannelProfile((ChannelTap(1.0 + 0j, 0.0, nu),))
        y = apply_time_channel(x, prof)
        expected = np.exp(2j * np.pi * nu * np.arange(16) * dt)
        assert np.max(np.abs(y.samples - expected)) < 1e-12


class TestPathloss:
    def test_reference_points(self):
        assert pathloss_db(1.0) == pytest.approx(48.6)
        assert pathloss_db(100.0) == pytest.approx(55.6)
        assert pathloss_db(10.0) == pytest.approx(52.1)

    def test_coefficient_override(self):
        assert pathloss_db(100.0, coeff=35.0) == pytest.approx(48.6 + 70.0)

    def test_nonpositive_distance(self):
        with pytest.raises(ValueError):
            pathloss_db(0.0)


class TestFadingProfile:
    def test_flat_profile(self):
        prof = make_notched_profile(64, notch_centers=(), attenuation_db=50.0)
        assert np.allclose(prof.slow_gain, 1e-5)

    def test_notch_minima_at_centers(self):
        prof = make_notched_profile(1024, notch_centers=(260, 760),
                                    depth_db=20.0, width=32.0)
        g = prof.slow_gain
        for c in (260, 760):
            assert np.argmin(g[c - 40:c + 41]) + c - 40 == c
        assert g[260] == pytest.approx(1e-2, rel=1e-9)

    def test_rayleigh_mean_power(self):
        prof = make_notched_profile(100_000, notch_centers=(), fast="rayleigh")
        gains = prof.realize(rng=3)
        assert np.mean(gains / prof.slow_gain) == pytest.approx(1.0, rel=0.02)

    def test_notch_center_out_of_range(self):
        with pytest.raises(ValueError):
            make_notched_profile(64, notch_centers=(100,))

    def test_positive_gain_required(self):
        with pytest.raises(ValueError):
            FadingProfile(np.array([1.0, 0.0]))
