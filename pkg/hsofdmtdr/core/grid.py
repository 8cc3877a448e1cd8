"""
hsofdmtdr.core.grid - Rejilla de subportadoras ChannelGrid.

Define la rejilla inmutable de frecuencias/muestras sobre la que trabajan
todos los modulos: numero de subportadoras, frecuencia de muestreo,
prefijo ciclico y longitud efectiva del canal.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from hsofdmtdr.core.errors import SpectralError


@dataclass(frozen=True, slots=True)
class ChannelGrid:
    """
    Rejilla de muestreo HS-OFDM inmutable.

    Atributos:
        n_half:      N, subportadoras independientes (la DFT tiene 2N bins).
        sample_rate: F_s en Hz. El ancho de banda de muestreo es F_s/2.
        cp_len:      L_cp, muestras de prefijo ciclico.
        channel_len: L_h, longitud efectiva del canal (None si se desconoce).
    """

    n_half: int
    sample_rate: float
    cp_len: int = 0
    channel_len: int | None = None

    def __post_init__(self) -> None:
        if self.n_half < 1:
            raise SpectralError(f"n_half must be >= 1, got {self.n_half}")
        if not self.sample_rate > 0:
            raise SpectralError(f"sample_rate must be > 0, got {self.sample_rate}")
        if self.cp_len < 0:
            raise SpectralError(f"cp_len must be >= 0, got {self.cp_len}")
        if self.channel_len is not None and not 1 <= self.channel_len <= self.n_bins:
            raise SpectralError(
                f"channel_len must lie in [1, {self.n_bins}], got {self.channel_len}"
            )

    # ------------------------------------------------------------------
    # Propiedades derivadas
    # ------------------------------------------------------------------
    @property
    def n_bins(self) -> int:
        return 2 * self.n_half

    @property
    def bandwidth(self) -> float:
        """Ancho de banda de muestreo B = F_s / 2."""
        return self.sample_rate / 2.0

    @property
    def delta_f(self) -> float:
        return self.sample_rate / self.n_bins

    @property
    def sample_period(self) -> float:
        return 1.0 / self.sample_rate

    @property
    def symbol_len(self) -> int:
        """Muestras por simbolo incluyendo el prefijo ciclico."""
        return self.n_bins + self.cp_len

    @property
    def symbol_duration(self) -> float:
        """T_symb = (2N + L_cp) * T_s."""
        return self.symbol_len * self.sample_period

    # ------------------------------------------------------------------
    # Ejes
    # ------------------------------------------------------------------
    def one_sided_frequencies(self) -> np.ndarray:
        """f_k = k * delta_f para k = 0..N."""
        return np.arange(self.n_half + 1) * self.delta_f

    def bin_frequencies(self) -> np.ndarray:
        """Frecuencia absoluta de cada bin 0..2N-1 (la mitad alta se pliega)."""
        k = np.arange(self.n_bins)
        return np.minimum(k, self.n_bins - k) * self.delta_f

    def distance_axis(self, length: int, velocity: float, eta: int = 1) -> np.ndarray:
        """Distancia de ida y vuelta -> distancia al punto de reflexion."""
        return velocity * self.sample_period * np.arange(length) / (2.0 * eta)

    # ------------------------------------------------------------------
    # Copias modificadas
    # ------------------------------------------------------------------
    def with_cp(self, cp_len: int) -> ChannelGrid:
        return dataclasses.replace(self, cp_len=cp_len)

    def with_channel_len(self, channel_len: int) -> ChannelGrid:
        return dataclasses.replace(self, channel_len=channel_len)

    def dump_state(self) -> str:
        return (
            f"ChannelGrid(N={self.n_half}, 2N={self.n_bins}, "
            f"Fs={self.sample_rate:.6g} Hz, df={self.delta_f:.6g} Hz, "
            f"Lcp={self.cp_len}, Lh={self.channel_len}, "
            f"Tsymb={self.symbol_duration * 1e6:.3f} us)"
        )
