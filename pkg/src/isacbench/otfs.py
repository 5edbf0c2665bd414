"""OTFS delay-Doppler grids, ISFFT/SFFT, rectangular-pulse time synthesis,
and pilot placement along the delay or Doppler axis."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .signals import TIME, ComplexSequence, get_constellation

DELAY = "delay"
DOPPLER = "doppler"


@dataclass(frozen=True)
class PilotScheme:
    """count pilots equally spaced along one grid axis starting at anchor."""

    axis: str
    count: int
    anchor: tuple[int, int] = (0, 0)

    def __post_init__(self):
        if self.axis not in (DELAY, DOPPLER):
            raise ValueError(f"axis must be '{DELAY}' or '{DOPPLER}'")
        if self.count < 1:
            raise ValueError("need at least one pilot")

    def cells(self, m_tau: int, n_nu: int) -> tuple[np.ndarray, np.ndarray]:
        """(delay indices, Doppler indices) of the pilot cells."""
        length = m_tau if self.axis == DELAY else n_nu
        if self.count > length:
            raise ValueError(f"{self.count} pilots do not fit axis of length {length}")
        step = length // self.count
        offsets = self.anchor[0 if self.axis == DELAY else 1] + np.arange(self.count) * step
        if np.any(offsets >= length):
            raise ValueError("pilot cells run off the grid; move the anchor")
        if self.axis == DELAY:
            rows = offsets
            cols = np.full(self.count, self.anchor[1])
            if self.anchor[1] >= n_nu:
                raise ValueError("anchor Doppler index out of range")
        else:
            rows = np.full(self.count, self.anchor[0])
            cols = offsets
            if self.anchor[0] >= m_tau:
                raise ValueError("anchor delay index out of range")
        return rows, cols


@dataclass
class DdGrid:
    """M_tau x N_nu delay-Doppler symbol grid with pilot-mask metadata.

    e_s is the data-cell symbol energy; e_p is the pilot energy averaged over
    the full grid (total pilot energy = e_p * M_tau * N_nu, shared equally by
    the pilot cells), which keeps the pilot budget fixed when the pilot count
    changes.
    """

    symbols: np.ndarray
    pilot_mask: np.ndarray = field(default=None)
    e_s: float = 1.0
    e_p: float = 0.0

    def __post_init__(self):
        sym = np.asarray(self.symbols, dtype=np.complex128)
        if sym.ndim != 2:
            raise ValueError("symbols must be a 2-D grid")
        self.symbols = sym
        if self.pilot_mask is None:
            self.pilot_mask = np.zeros(sym.shape, dtype=bool)
        else:
            mask = np.asarray(self.pilot_mask, dtype=bool)
            if mask.shape != sym.shape:
                raise ValueError("pilot mask shape mismatch")
            self.pilot_mask = mask

    @property
    def m_tau(self) -> int:
        return self.symbols.shape[0]

    @property
    def n_nu(self) -> int:
        return self.symbols.shape[1]

    @property
    def energy(self) -> float:
        return float(np.sum(np.abs(self.symbols) ** 2))


def _grid_array(grid) -> np.ndarray:
    if isinstance(grid, DdGrid):
        return grid.symbols
    return np.asarray(grid, dtype=np.complex128)


def isfft(grid) -> np.ndarray:
    """Delay-Doppler -> time-frequency: X_TF = F_M @ X_DD @ F_N^H (unitary)."""
    dd = _grid_array(grid)
    tf = np.fft.fft(dd, axis=0, norm="ortho")
    return np.fft.ifft(tf, axis=1, norm="ortho")


def sfft(tf) -> np.ndarray:
    """Time-frequency -> delay-Doppler, exact inverse of :func:`isfft`."""
    arr = np.asarray(tf, dtype=np.complex128)
    dd = np.fft.ifft(arr, axis=0, norm="ortho")
    return np.fft.fft(dd, axis=1, norm="ortho")


def synthesize_time(grid, subcarrier_spacing: float) -> ComplexSequence:
    """Rectangular-pulse, critically sampled time signal.

    Each time-frequency column (one slot of M_tau samples) is the unitary
    inverse DFT of its frequency bins; slots are concatenated, so the whole
    chain is unitary and energy-preserving.
    """
    tf = isfft(grid)
    m_tau = tf.shape[0]
    slots = np.fft.ifft(tf, axis=0, norm="ortho")
    samples = slots.T.reshape(-1)
    dt = 1.0 / (m_tau * subcarrier_spacing)
    return ComplexSequence(samples, dt, TIME)


def place_pilots(m_tau: int, n_nu: int, scheme: PilotScheme,
                 e_s: float, e_p: float, rng: np.random.Generator) -> DdGrid:
    """Build a grid with QPSK data of energy e_s and zero-phase pilots.

    The pilots split a fixed total budget of e_p * m_tau * n_nu equally, so a
    single pilot is a strong classic embedded pilot while many pilots are
    individually weaker; data fills every non-pilot cell (no guard region).
    """
    qpsk = get_constellation("qpsk")
    data = qpsk.points[rng.integers(0, 4, (m_tau, n_nu))] * math.sqrt(e_s)
    rows, cols = scheme.cells(m_tau, n_nu)
    mask = np.zeros((m_tau, n_nu), dtype=bool)
    mask[rows, cols] = True
    if mask.sum() != scheme.count:
        raise ValueError("pilot cells overlap")
    amplitude = math.sqrt(e_p * m_tau * n_nu / scheme.count)
    data[rows, cols] = amplitude
    return DdGrid(data, mask, e_s=e_s, e_p=e_p)
