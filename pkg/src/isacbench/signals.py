"""Complex baseband sequences, constellation mapping, unitary transforms,
autocorrelation, and PSD.

All transforms use the unitary convention (1/sqrt(N) both directions) so that
Parseval holds exactly and the Wiener-Khinchin identity carries no stray
factors beyond a single documented sqrt(N).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

TIME = "time"
FREQUENCY = "frequency"


@dataclass(frozen=True)
class ComplexSequence:
    """A finite complex-valued signal with explicit sample spacing.

    spacing is seconds for time-domain sequences and hertz for
    frequency-domain ones.
    """

    samples: np.ndarray
    spacing: float
    domain: str = TIME

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.complex128)
        if samples.ndim != 1 or samples.size < 1:
            raise ValueError("samples must be a non-empty 1-D array")
        if not self.spacing > 0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")
        if self.domain not in (TIME, FREQUENCY):
            raise ValueError(f"unknown domain {self.domain!r}")
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return self.samples.size

    @property
    def energy(self) -> float:
        return float(np.sum(np.abs(self.samples) ** 2))


def _gray_levels(nbits: int) -> np.ndarray:
    """Amplitude levels ordered by binary-reflected Gray code of the bit label."""
    m = 1 << nbits
    # gray(i) gives the level index for bit pattern i
    levels = np.arange(m) * 2.0 - (m - 1)
    out = np.empty(m)
    for i in range(m):
        out[i] = levels[i ^ (i >> 1)]
    return out


@dataclass(frozen=True)
class Constellation:
    """Unit-average-power constellation with Gray bit labeling."""

    name: str
    points: np.ndarray
    bits_per_symbol: int

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.complex128)
        if pts.size != 1 << self.bits_per_symbol:
            raise ValueError("need 2**bits_per_symbol points")
        mean_power = np.mean(np.abs(pts) ** 2)
        if abs(mean_power - 1.0) > 1e-12:
            raise ValueError(f"constellation mean power {mean_power} != 1")
        object.__setattr__(self, "points", pts)

    @property
    def order(self) -> int:
        return self.points.size


@lru_cache(maxsize=None)
def get_constellation(name: str) -> Constellation:
    """Return one of the shipped constellations: 'qpsk', '16qam', '64qam'.

    Square QAM uses independent per-axis Gray labeling; the first half of
    each symbol's bits select the I level, the rest the Q level.  QPSK bit
    pair 00 maps to (1+1j)/sqrt(2).
    """
    key = name.lower()
    if key == "qpsk":
        bits_axis = 1
    elif key == "16qam":
        bits_axis = 2
    elif key == "64qam":
        bits_axis = 3
    else:
        raise ValueError(f"unknown constellation {name!r}")
    lv = _gray_levels(bits_axis)
    if bits_axis == 1:
        lv = -lv  # bit 0 -> +1 so that 00 lands on (1+1j)/sqrt(2)
    pts = (lv[:, None] + 1j * lv[None, :]).ravel()
    pts = pts / np.sqrt(np.mean(np.abs(pts) ** 2))
    return Constellation(key, pts, 2 * bits_axis)


def map_bits(bits, constellation: Constellation, spacing: float = 1.0,
             domain: str = FREQUENCY) -> ComplexSequence:
    """Map a bit vector onto constellation points, one point per bit group."""
    bits = np.asarray(bits, dtype=np.int64).ravel()
    bps = constellation.bits_per_symbol
    if bits.size == 0 or bits.size % bps:
        raise ValueError(f"bit count {bits.size} not divisible by {bps}")
    if np.any((bits != 0) & (bits != 1)):
        raise ValueError("bits must be 0/1")
    groups = bits.reshape(-1, bps)
    idx = groups @ (1 << np.arange(bps - 1, -1, -1))
    return ComplexSequence(constellation.points[idx], spacing, domain)


def random_symbols(constellation: Constellation, n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform i.i.d. constellation points (equivalent to mapping random bits)."""
    return constellation.points[rng.integers(0, constellation.order, n)]


def _as_array(x) -> np.ndarray:
    if isinstance(x, ComplexSequence):
        return x.samples
    return np.asarray(x, dtype=np.complex128)


def dft(x: ComplexSequence) -> ComplexSequence:
    """Unitary DFT; flips the domain tag and converts the sample spacing."""
    if x.domain != TIME:
        raise ValueError("dft expects a time-domain sequence")
    out = np.fft.fft(x.samples, norm="ortho")
    return ComplexSequence(out, 1.0 / (len(x) * x.spacing), FREQUENCY)


def idft(x: ComplexSequence) -> ComplexSequence:
    """Unitary inverse DFT, exact inverse of :func:`dft`."""
    if x.domain != FREQUENCY:
        raise ValueError("idft expects a frequency-domain sequence")
    out = np.fft.ifft(x.samples, norm="ortho")
    return ComplexSequence(out, 1.0 / (len(x) * x.spacing), TIME)


def acorr_aperiodic(x):
    """Aperiodic autocorrelation r(l) = sum_k x_k^* x_{k+l}, lags 0..N-1.

    Computed with a zero-padded FFT; an O(N^2) direct sum is kept as the
    test oracle.
    """
    arr = _as_array(x)
    n = arr.size
    nfft = 1 << int(2 * n - 1).bit_length()
    spec = np.fft.fft(arr, nfft)
    r = np.fft.ifft(spec * np.conj(spec))[:n]
    if isinstance(x, ComplexSequence):
        return ComplexSequence(r, x.spacing, x.domain)
    return r


def acorr_circular(x):
    """Circular autocorrelation r_c(l) = sum_k x_k^* x_{(k+l) mod N}.

    Identity: unitary-DFT{r_c} = sqrt(N) * |X[k]|^2 with X the unitary DFT
    of x (the sqrt(N) is the unitary-convention scale factor).
    """
    arr = _as_array(x)
    spec = np.fft.fft(arr)
    r = np.fft.ifft(np.abs(spec) ** 2)
    if isinstance(x, ComplexSequence):
        return ComplexSequence(r, x.spacing, x.domain)
    return r


def psd(x) -> np.ndarray:
    """Per-bin power |X[k]|^2 under the unitary DFT; sums to the energy."""
    arr = _as_array(x)
    return np.abs(np.fft.fft(arr, norm="ortho")) ** 2
