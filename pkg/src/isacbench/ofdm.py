"""OFDM symbol synthesis with per-subcarrier power shaping and cyclic prefix."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .signals import TIME, ComplexSequence, Constellation, map_bits


@dataclass(frozen=True)
class OfdmConfig:
    n_subcarriers: int
    subcarrier_spacing: float
    total_power: float
    constellation: Constellation
    cp_fraction: float = 0.0

    def __post_init__(self):
        if self.n_subcarriers < 2:
            raise ValueError("need at least 2 subcarriers")
        if self.subcarrier_spacing <= 0 or self.total_power <= 0:
            raise ValueError("subcarrier_spacing and total_power must be positive")
        if not 0 <= self.cp_fraction < 1:
            raise ValueError("cp_fraction must be in [0, 1)")

    @property
    def bandwidth(self) -> float:
        return self.n_subcarriers * self.subcarrier_spacing

    @property
    def sample_period(self) -> float:
        return 1.0 / self.bandwidth


@dataclass(frozen=True)
class PowerAllocation:
    """Per-subcarrier power vector {X_n} in watts."""

    x: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=np.float64)
        if x.ndim != 1 or x.size < 1:
            raise ValueError("allocation must be a 1-D vector")
        if np.min(x) < 0:
            raise ValueError("allocation must be nonnegative")
        object.__setattr__(self, "x", x)

    def __len__(self) -> int:
        return self.x.size

    @property
    def mean_power(self) -> float:
        return float(np.mean(self.x))

    @property
    def total_power(self) -> float:
        return float(np.sum(self.x))

    @classmethod
    def flat(cls, n: int, total_power: float) -> "PowerAllocation":
        return cls(np.full(n, total_power / n))

    def check_total(self, total: float, rel_tol: float = 1e-9) -> bool:
        return abs(self.total_power - total) <= rel_tol * total


def modulate_symbol(cfg: OfdmConfig, alloc: PowerAllocation, bits) -> ComplexSequence:
    """Synthesize one OFDM symbol: sqrt(X_m)-scaled constellation points per
    subcarrier, unitary inverse DFT, cyclic prefix prepended.

    The realized symbol is rescaled so the body energy equals sum(X_m)
    exactly, independent of which constellation points the bits select.
    """
    n = cfg.n_subcarriers
    if len(alloc) != n:
        raise ValueError(f"allocation length {len(alloc)} != {n} subcarriers")
    syms = map_bits(bits, cfg.constellation).samples
    if syms.size != n:
        raise ValueError(f"bits map to {syms.size} symbols, need {n}")
    spectrum = np.sqrt(alloc.x) * syms
    realized = np.sum(np.abs(spectrum) ** 2)
    target = alloc.total_power
    if realized > 0:
        spectrum = spectrum * math.sqrt(target / realized)
    body = np.fft.ifft(spectrum, norm="ortho")
    n_cp = math.ceil(cfg.cp_fraction * n)
    if n_cp:
        body = np.concatenate([body[-n_cp:], body])
    return ComplexSequence(body, cfg.sample_period, TIME)


def apply_freq_channel(symbols, response, noise_psd: float, spacing: float,
                       rng: np.random.Generator | int | None = None):
    """Per-subcarrier channel Y_m = H_m X_m + N_m with circular complex
    Gaussian noise of variance noise_psd * spacing per bin."""
    was_seq = isinstance(symbols, ComplexSequence)
    x = symbols.samples if was_seq else np.asarray(symbols, dtype=np.complex128)
    h = np.asarray(response, dtype=np.complex128)
    if h.shape != x.shape:
        raise ValueError("channel response length must match the symbol vector")
    if noise_psd < 0:
        raise ValueError("noise PSD must be nonnegative")
    y = h * x
    if noise_psd > 0:
        gen = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
        sigma = math.sqrt(noise_psd * spacing / 2.0)
        y = y + sigma * (gen.standard_normal(x.size) + 1j * gen.standard_normal(x.size))
    if was_seq:
        return ComplexSequence(y, symbols.spacing, symbols.domain)
    return y
