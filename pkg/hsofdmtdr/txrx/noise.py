"""
hsofdmtdr.txrx.noise - Colored background noise and power conversions.

The background noise PSD is modelled in dBm/Hz as

    S_V(f) = floor + amplitude * exp(-decay * f / 1 kHz)

and each bin k of a 2N-point symbol gets variance sigma_k^2 = S_V(f_k) * 2N * df
(mW, with S_V in mW/Hz). The transmit PSD uses the same relation, so
per-bin signal and noise powers are directly comparable.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from hsofdmtdr.core.errors import TxRxError
from hsofdmtdr.core.grid import ChannelGrid

log = logging.getLogger(__name__)

DEFAULT_FLOOR_DBM_HZ = -93.0
DEFAULT_AMPLITUDE_DB = 52.98
DEFAULT_DECAY_PER_KHZ = 0.0032

PsdFn = Callable[[np.ndarray], np.ndarray]


def default_noise_psd(
    f: np.ndarray,
    floor_dbm_hz: float = DEFAULT_FLOOR_DBM_HZ,
    amplitude_db: float = DEFAULT_AMPLITUDE_DB,
    decay_per_khz: float = DEFAULT_DECAY_PER_KHZ,
) -> np.ndarray:
    """Exponentially decaying background noise PSD in dBm/Hz."""
    f = np.asarray(f, dtype=float)
    return floor_dbm_hz + amplitude_db * np.exp(-decay_per_khz * f / 1e3)


# ============================================================================
# Power conversions
# ============================================================================
def dbm_to_mw(dbm: np.ndarray | float) -> np.ndarray:
    return 10.0 ** (np.asarray(dbm, dtype=float) / 10.0)


def psd_to_bin_power(psd_dbm_hz: np.ndarray | float, grid: ChannelGrid) -> np.ndarray:
    """Per-bin variance (mW) for a one-sided PSD: S * 2N * df."""
    return dbm_to_mw(psd_dbm_hz) * grid.n_bins * grid.delta_f


def transmit_power_dbm(psd_dbm_hz: float, n_active: int, delta_f: float) -> float:
    """Total transmit power p + 10 log10(N_active * df)."""
    if n_active < 1 or delta_f <= 0:
        raise TxRxError(f"need n_active >= 1 and delta_f > 0, got {n_active}, {delta_f}")
    return float(psd_dbm_hz + 10.0 * np.log10(n_active * delta_f))


def fdma_power_dbm(psd_dbm_hz: float, n_active: int, delta_f: float, n_plm: int) -> float:
    """Per-PLM power under FDMA: full-band power less 10 log10(N_PLM)."""
    if n_plm < 1:
        raise TxRxError(f"n_plm must be >= 1, got {n_plm}")
    return transmit_power_dbm(psd_dbm_hz, n_active, delta_f) - 10.0 * np.log10(n_plm)


# ============================================================================
# Noise model
# ============================================================================
@dataclass(frozen=True)
class NoiseModel:
    """
    Attributes:
        psd:     f [Hz] -> S_V [dBm/Hz], vectorized.
        enabled: False produces all-zero noise.
    """

    psd: PsdFn = default_noise_psd
    enabled: bool = True

    def variances(self, grid: ChannelGrid) -> np.ndarray:
        """sigma_k^2 for k = 0..2N-1 (symmetric around N)."""
        if not self.enabled:
            return np.zeros(grid.n_bins)
        var = psd_to_bin_power(self.psd(grid.bin_frequencies()), grid)
        if np.any(~np.isfinite(var)) or np.any(var < 0):
            raise TxRxError("noise PSD produced a non-finite or negative variance")
        return var


def substream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for (seed, key...) via SeedSequence spawn keys."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(key)))


def gen_noise(
    model: NoiseModel,
    grid: ChannelGrid,
    rng: np.random.Generator,
    size: int | None = None,
) -> np.ndarray:
    """
    Draw Hermitian noise spectra V with E|V_k|^2 = sigma_k^2.

    Bins 0 and N are real Gaussian; bins 1..N-1 are proper complex
    Gaussian and the upper half mirrors them, so IDFT(V) is real.
    Returns shape (2N,) or (size, 2N).
    """
    n = grid.n_half
    shape = (1 if size is None else size, n + 1)
    var = model.variances(grid)
    half = np.zeros(shape, dtype=complex)
    if model.enabled:
        re = rng.standard_normal(shape)
        im = rng.standard_normal(shape)
        std = np.sqrt(var[: n + 1])
        half = std * (re + 1j * im) / np.sqrt(2.0)
        half[:, 0] = std[0] * re[:, 0]
        half[:, n] = std[n] * re[:, n]
    full = np.empty((shape[0], 2 * n), dtype=complex)
    full[:, : n + 1] = half
    full[:, n + 1 :] = np.conj(half[:, n - 1 : 0 : -1])
    return full[0] if size is None else full
