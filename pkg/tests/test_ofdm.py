import numpy as np
import pytest

from isacbench.ofdm import OfdmConfig, PowerAllocation, apply_freq_channel, modulate_symbol
from isacbench.sensing import isl
from isacbench.signals import get_constellation, psd


def make_cfg(n=64, cp=0.0, const="qpsk", power=None):
    return OfdmConfig(n, 15e3, power if power is not None else float(n),
                      get_constellation(const), cp_fraction=cp)


class TestModulate:
    def test_equal_symbols_give_impulse_body(self):
        cfg = make_cfg(32)
        alloc = PowerAllocation.flat(32, 32.0)
        sym = modulate_symbol(cfg, alloc, [0, 0] * 32)
        body = sym.samples
        assert abs(body[0]) == pytest.approx(np.sqrt(32.0), rel=1e-12)
        assert np.max(np.abs(body[1:])) < 1e-12

    def test_no_cp_length(self):
        cfg = make_cfg(64, cp=0.0)
        sym = modulate_symbol(cfg, PowerAllocation.flat(64, 64.0), [0, 1] * 64)
        assert len(sym) == 64

    def test_cp_is_tail_copy(self):
        cfg = make_cfg(64, cp=0.25)
        rng = np.random.default_rng(0)
        sym = modulate_symbol(cfg, PowerAllocation.flat(64, 64.0),
                              rng.integers(0, 2, 128))
        assert len(sym) == 80
        assert np.allclose(sym.samples[:16], sym.samples[64:])

    def test_flat_qpsk_psd_is_flat(self):
        cfg = make_cfg(1024)
        rng = np.random.default_rng(1)
        sym = modulate_symbol(cfg, PowerAllocation.flat(1024, 1024.0),
                              rng.integers(0, 2, 2048))
        p = psd(sym.samples)
        assert np.max(np.abs(p - 1.0)) < 1e-9

    def test_flat_qpsk_circular_isl_zero(self):
        cfg = make_cfg(256)
        rng = np.random.default_rng(2)
        sym = modulate_symbol(cfg, PowerAllocation.flat(256, 256.0),
                              rng.integers(0, 2, 512))
        assert isl(sym, mode="circular") < 1e-18

    @pytest.mark.parametrize("const", ["qpsk", "16qam", "64qam"])
    def test_energy_equals_allocation_total(self, const):
        rng = np.random.default_rng(3)
        cfg = make_cfg(128, const=const, power=5.0)
        alloc = PowerAllocation(rng.uniform(0.0, 2.0, 128))
        bits = rng.integers(0, 2, 128 * cfg.constellation.bits_per_symbol)
        sym = modulate_symbol(cfg, alloc, bits)
        assert sym.energy == pytest.approx(alloc.total_power, rel=1e-9)

    def test_dimension_mismatch(self):
        cfg = make_cfg(16)
        with pytest.raises(ValueError):
            modulate_symbol(cfg, PowerAllocation.flat(8, 8.0), [0, 1] * 16)
        with pytest.raises(ValueError):
            modulate_symbol(cfg, PowerAllocation.flat(16, 16.0), [0, 1] * 8)


class TestFreqChannel:
    def test_identity(self):
        x = np.ones(32, dtype=complex)
        y = apply_freq_channel(x, np.ones(32), 0.0, 15e3)
        assert np.array_equal(y, x)

    def test_noise_variance(self):
        n0, df = 2.5e-3, 15e3
        y = apply_freq_channel(np.zeros(100_000, dtype=complex),
                               np.zeros(100_000), n0, df, rng=7)
        var = np.mean(np.abs(y) ** 2)
        assert var == pytest.approx(n0 * df, rel=0.02)

    def test_seed_determinism(self):
        x = np.ones(64, dtype=complex)
        h = np.full(64, 0.5 + 0.2j)
        a = apply_freq_channel(x, h, 1e-3, 15e3, rng=123)
        b = apply_freq_channel(x, h, 1e-3, 15e3, rng=123)
        assert np.array_equal(a, b)

    def test_negative_noise_rejected(self):
        with pytest.raises(ValueError):
            apply_freq_channel(np.ones(4, dtype=complex), np.ones(4), -1.0, 1.0)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            apply_freq_channel(np.ones(4, dtype=complex), np.ones(5), 0.0, 1.0)


class TestPowerAllocation:
    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            PowerAllocation(np.array([1.0, -0.1]))

    def test_flat_total(self):
        a = PowerAllocation.flat(10, 5.0)
        assert a.total_power == pytest.approx(5.0)
        assert a.mean_power == pytest.approx(0.5)
        assert a.check_total(5.0)
