import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isacbench.signals import (
    ComplexSequence,
    acorr_aperiodic,
    acorr_circular,
    dft,
    get_constellation,
    idft,
    map_bits,
    psd,
    random_symbols,
)


def acorr_direct(x):
    """O(N^2) direct-sum oracle: r(l) = sum_k x_k^* x_{k+l}."""
    x = np.asarray(x, dtype=np.complex128)
    n = x.size
    return np.array([np.sum(np.conj(x[: n - l]) * x[l:]) for l in range(n)])


def acorr_circ_direct(x):
    x = np.asarray(x, dtype=np.complex128)
    n = x.size
    return np.array([np.sum(np.conj(x) * np.roll(x, -l)) for l in range(n)])


complex_arrays = st.integers(min_value=2, max_value=96).flatmap(
    lambda n: st.lists(
        st.tuples(st.floats(-10, 10), st.floats(-10, 10)),
        min_size=n, max_size=n,
    ).map(lambda pairs: np.array([complex(a, b) for a, b in pairs]))
)


class TestConstellations:
    def test_qpsk_gray_map_fixed_point(self):
        out = map_bits([0, 0], get_constellation("qpsk"))
        assert out.samples[0] == pytest.approx((1 + 1j) / np.sqrt(2))

    def test_all_zero_bits_are_deterministic(self):
        c = get_constellation("16qam")
        out = map_bits([0] * 16, c)
        assert len(out) == 4
        assert np.all(out.samples == out.samples[0])

    def test_unit_power_all_orders(self):
        for name in ("qpsk", "16qam", "64qam"):
            c = get_constellation(name)
            assert np.mean(np.abs(c.points) ** 2) == pytest.approx(1.0, abs=1e-12)
            assert c.points.size == 2 ** c.bits_per_symbol

    def test_qpsk_constant_modulus(self):
        c = get_constellation("qpsk")
        assert np.allclose(np.abs(c.points), 1.0)

    def test_gray_neighbors_differ_one_bit(self):
        c = get_constellation("16qam")
        # sort points by I then Q; adjacent labels along each axis flip one bit
        pts = c.points
        for i in range(16):
            for j in range(16):
                if i == j:
                    continue
                d = abs(pts[i] - pts[j])
                if d <= 2 / np.sqrt(10) + 1e-9:  # nearest neighbors
                    if abs(pts[i].real - pts[j].real) < 1e-9 or \
                       abs(pts[i].imag - pts[j].imag) < 1e-9:
                        assert bin(i ^ j).count("1") == 1

    def test_mean_power_monte_carlo_64qam(self):
        rng = np.random.default_rng(0)
        bits = rng.integers(0, 2, 100_002)  # divisible by 6
        out = map_bits(bits, get_constellation("64qam"))
        assert np.mean(np.abs(out.samples) ** 2) == pytest.approx(1.0, rel=0.01)

    def test_bit_length_mismatch(self):
        with pytest.raises(ValueError):
            map_bits([0, 1, 0], get_constellation("qpsk"))


class TestTransforms:
    def test_dft_of_impulse_is_flat(self):
        x = ComplexSequence(np.array([1, 0, 0, 0], dtype=complex), 1.0)
        out = dft(x)
        assert np.allclose(out.samples, 0.5)

    def test_round_trip_identity(self):
        rng = np.random.default_rng(1)
        x = ComplexSequence(rng.standard_normal(1024) + 1j * rng.standard_normal(1024), 1e-9)
        back = idft(dft(x))
        assert np.max(np.abs(back.samples - x.samples)) < 1e-10

    def test_parseval(self):
        rng = np.random.default_rng(2)
        x = ComplexSequence(rng.standard_normal(257) + 1j * rng.standard_normal(257), 1.0)
        assert dft(x).energy == pytest.approx(x.energy, rel=1e-12)

    def test_spacing_conversion(self):
        x = ComplexSequence(np.ones(8, dtype=complex), 0.25)
        f = dft(x)
        assert f.spacing == pytest.approx(1.0 / (8 * 0.25))
        assert f.domain == "frequency"


class TestAutocorrelation:
    def test_aperiodic_pair(self):
        r = acorr_aperiodic(np.array([1.0, 1.0]))
        assert np.allclose(r, [2.0, 1.0])

    def test_circular_pair(self):
        r = acorr_circular(np.array([1.0, 1.0]))
        assert np.allclose(r, [2.0, 2.0])

    def test_lag_zero_is_energy(self):
        rng = np.random.default_rng(3)
        x = rng.standard_normal(50) + 1j * rng.standard_normal(50)
        r = acorr_aperiodic(x)
        assert r[0] == pytest.approx(np.sum(np.abs(x) ** 2))

    def test_fft_path_matches_direct_sum(self):
        rng = np.random.default_rng(4)
        x = random_symbols(get_constellation("qpsk"), 64, rng)
        assert np.max(np.abs(acorr_aperiodic(x) - acorr_direct(x))) < 1e-10
        assert np.max(np.abs(acorr_circular(x) - acorr_circ_direct(x))) < 1e-10

    def test_flat_spectrum_circular_delta(self):
        # constant-magnitude spectrum -> circular autocorrelation is a delta
        rng = np.random.default_rng(5)
        spec = np.exp(2j * np.pi * rng.uniform(size=128))
        x = np.fft.ifft(spec, norm="ortho")
        r = acorr_circular(x)
        assert np.max(np.abs(r[1:])) < 1e-12

    def test_wiener_khinchin_scale(self):
        # unitary-DFT{r_c} = sqrt(N) |X|^2
        rng = np.random.default_rng(6)
        x = rng.standard_normal(32) + 1j * rng.standard_normal(32)
        rc = acorr_circular(x)
        lhs = np.fft.fft(rc, norm="ortho")
        rhs = np.sqrt(32) * psd(x)
        assert np.max(np.abs(lhs - rhs)) < 1e-10

    @settings(max_examples=30, deadline=None)
    @given(complex_arrays)
    def test_wraparound_difference_identity(self, x):
        # r_c(l) - r(l) equals the wrapped-term sum exactly
        n = x.size
        ra = acorr_direct(x)
        rc = acorr_circ_direct(x)
        for l in range(1, n):
            wrapped = np.sum(np.conj(x[n - l:]) * x[: l])
            assert abs((rc[l] - ra[l]) - wrapped) < 1e-9 * max(1.0, abs(rc[l]))

    @settings(max_examples=30, deadline=None)
    @given(complex_arrays)
    def test_cauchy_schwarz_bias_bound(self, x):
        n = x.size
        ra = acorr_aperiodic(x)
        rc = acorr_circular(x)
        for l in range(1, n):
            tail = np.sum(np.abs(x[n - l:]) ** 2)
            head = np.sum(np.abs(x[: l]) ** 2)
            assert np.abs(rc[l] - ra[l]) <= np.sqrt(tail * head) + 1e-9


class TestPsd:
    def test_impulse_flat(self):
        x = np.zeros(16, dtype=complex)
        x[0] = 1.0
        assert np.allclose(psd(x), 1.0 / 16)

    def test_single_tone_concentrates(self):
        n, m = 64, 5
        x = np.exp(2j * np.pi * m * np.arange(n) / n) / np.sqrt(n)
        p = psd(x)
        assert p[m] == pytest.approx(1.0, rel=1e-9)
        assert np.sum(p) - p[m] < 1e-12

    @settings(max_examples=30, deadline=None)
    @given(complex_arrays)
    def test_parseval(self, x):
        energy = np.sum(np.abs(x) ** 2)
        assert np.sum(psd(x)) == pytest.approx(energy, rel=1e-12, abs=1e-12)


class TestComplexSequence:
    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            ComplexSequence(np.array([]), 1.0)

    def test_rejects_bad_spacing(self):
        with pytest.raises(ValueError):
            ComplexSequence(np.ones(4), 0.0)

    def test_rejects_bad_domain(self):
        with pytest.raises(ValueError):
            ComplexSequence(np.ones(4), 1.0, "delay")
