"""Communication-side metrics: Gaussian and QPSK mutual information over the
complex AWGN channel, per-subcarrier sum rate, and the spectral-efficiency
sweeps over distance / power / bandwidth."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .channel import pathloss_db

LOG2E = math.log2(math.e)


@dataclass(frozen=True)
class LinkBudget:
    tx_power: float          # watts
    bandwidth: float         # hertz
    noise_psd: float         # W/Hz
    pathloss_coeff: float = 35.0
    pathloss_intercept: float = 48.6

    def __post_init__(self):
        if min(self.tx_power, self.bandwidth, self.noise_psd) <= 0:
            raise ValueError("budget parameters must be positive")

    def snr(self, distance: float, bandwidth: float | None = None) -> float:
        w = self.bandwidth if bandwidth is None else bandwidth
        loss = pathloss_db(distance, self.pathloss_coeff, self.pathloss_intercept)
        return self.tx_power * 10.0 ** (-loss / 10.0) / (self.noise_psd * w)


def gaussian_se(snr) -> np.ndarray | float:
    """Gaussian-input spectral efficiency log2(1 + snr), bits/s/Hz."""
    snr = np.asarray(snr, dtype=np.float64)
    if np.any(snr < 0):
        raise ValueError("SNR must be nonnegative")
    out = np.log1p(snr) * LOG2E
    return float(out) if out.ndim == 0 else out


@lru_cache(maxsize=8)
def _hermgauss(order: int):
    t, w = np.polynomial.hermite.hermgauss(order)
    return t, w


def _softplus_log2(u: np.ndarray) -> np.ndarray:
    """log2(1 + exp(-u)) without overflow for any sign of u."""
    return (np.maximum(-u, 0.0) + np.log1p(np.exp(-np.abs(u)))) / math.log(2)


def qpsk_mi(snr, order: int = 64) -> np.ndarray | float:
    """Mutual information of equiprobable QPSK over complex AWGN, bits per
    complex channel use.

    QPSK splits into two independent binary antipodal real channels, each at
    per-dimension SNR equal to the complex-channel SNR, so
    I = 2 (1 - E_z[log2(1 + exp(-2 a (a + z)))]) with a = sqrt(snr) and
    z ~ N(0,1); the expectation is Gauss-Hermite quadrature.
    """
    snr = np.asarray(snr, dtype=np.float64)
    if np.any(snr < 0):
        raise ValueError("SNR must be nonnegative")
    t, w = _hermgauss(order)
    a = np.sqrt(snr)[..., None]
    u = 2.0 * a * (a + math.sqrt(2.0) * t)
    expect = np.sum(w * _softplus_log2(u), axis=-1) / math.sqrt(math.pi)
    out = 2.0 * (1.0 - expect)
    return float(out) if out.ndim == 0 else out


def sum_rate_bits(x, gains, noise_psd: float, bandwidth: float) -> float:
    """sum_n log2(1 + |h_n|^2 X_n / (N0 B/N)) - bits per OFDM symbol use."""
    x = np.asarray(x, dtype=np.float64)
    g = np.asarray(gains, dtype=np.float64)
    if x.shape != g.shape:
        raise ValueError("allocation and gain vectors must match")
    per_sub = noise_psd * bandwidth / x.size
    return float(np.sum(np.log1p(g * x / per_sub)) * LOG2E)


def sum_rate(x, gains, noise_psd: float, bandwidth: float) -> float:
    """Achievable sum rate in bits/s: (B/N) * sum_n log2(1 + snr_n)."""
    x = np.asarray(x, dtype=np.float64)
    return sum_rate_bits(x, gains, noise_psd, bandwidth) * bandwidth / x.size


def se_vs_distance(budget: LinkBudget, distances, bandwidths) -> list[dict]:
    """Gaussian and QPSK spectral efficiency per (bandwidth, distance) point
    under flat power over the band; rate columns give the totals in bits/s."""
    rows = []
    for w in bandwidths:
        for d in sorted(distances):
            snr = budget.snr(d, w)
            se_g = float(gaussian_se(snr))
            # quadrature roundoff can land a few ulp above capacity at tiny
            # snr; the capacity bound is exact, so enforce it
            se_q = min(float(qpsk_mi(snr)), se_g)
            rows.append({
                "bandwidth_hz": float(w),
                "distance_m": float(d),
                "snr": snr,
                "se_gaussian": se_g,
                "se_qpsk": se_q,
                "rate_gaussian_bps": se_g * w,
                "rate_qpsk_bps": se_q * w,
                "rel_gap": 0.0 if se_g == 0 else (se_g - se_q) / se_g,
            })
    return rows


def gap_region(budget: LinkBudget, powers, distances, bandwidths,
               tolerance: float) -> list[dict]:
    """Minimum bandwidth at which QPSK falls within `tolerance` (relative) of
    Gaussian signaling, for each (power, distance); NaN when no grid
    bandwidth qualifies."""
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    ws = np.sort(np.asarray(bandwidths, dtype=np.float64))
    rows = []
    for p in sorted(powers):
        for d in sorted(distances):
            feasible = math.nan
            for w in ws:
                snr = LinkBudget(p, w, budget.noise_psd, budget.pathloss_coeff,
                                 budget.pathloss_intercept).snr(d)
                se_g = float(gaussian_se(snr))
                se_q = min(float(qpsk_mi(snr)), se_g)
                gap = 0.0 if se_g == 0 else (se_g - se_q) / se_g
                if gap <= tolerance:
                    feasible = float(w)
                    break
            rows.append({"tx_power_w": float(p), "distance_m": float(d),
                         "min_bandwidth_hz": feasible})
    return rows
