"""
hsofdmtdr.txrx.link - Pass HS-OFDM symbols through a channel.

With L_cp >= L_h the channel acts as a per-bin product, Y = X * H + V.
Otherwise the time-domain path is used: the CP-extended symbol stream is
linearly convolved with h, so the tail of symbol k-1 leaks into symbol k,
and the reception carries an ISI warning.

    - StreamChannel: one link over a continuous stream of symbols; the
                     convolution tail is carried from block to block.
    - channel_pass:  one frame (optionally preceded by another) with
                     additive noise.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

import numpy as np
from scipy.signal import oaconvolve

from hsofdmtdr.core.errors import TxRxError
from hsofdmtdr.core.grid import ChannelGrid
from hsofdmtdr.core.spectral import dft, idft, real_part
from hsofdmtdr.network.channel import ReflectionChannel
from hsofdmtdr.txrx.mapping import HsOfdmFrame
from hsofdmtdr.txrx.noise import NoiseModel, gen_noise

log = logging.getLogger(__name__)


class ChannelPath(enum.Enum):
    AUTO = "auto"
    FREQUENCY = "frequency"
    TIME = "time"


@dataclass(frozen=True)
class Reception:
    spectrum: np.ndarray
    time: np.ndarray
    noise: np.ndarray
    path: ChannelPath
    warnings: tuple[str, ...] = ()


# ============================================================================
# Flujo de simbolos
# ============================================================================
class StreamChannel:
    """
    Canal aplicado a un flujo continuo de simbolos con CP.

    apply() recibe espectros por filas (simbolos consecutivos) y devuelve
    los espectros recibidos sin ruido. En la ruta temporal la cola de la
    convolucion lineal se guarda y se suma al bloque siguiente, asi que
    partir el flujo en bloques no cambia el resultado.

    ideal() da la respuesta sin ISI (producto circular) con la misma h;
    apply() - ideal() es la ISI.
    """

    def __init__(
        self, channel: ReflectionChannel, grid: ChannelGrid, path: ChannelPath = ChannelPath.AUTO
    ) -> None:
        if channel.grid.n_half != grid.n_half:
            raise TxRxError(
                f"symbols have N={grid.n_half} but channel has N={channel.grid.n_half}"
            )
        self._grid = grid
        self._channel = channel
        self.isi = grid.cp_len < channel.channel_len
        if path is ChannelPath.AUTO:
            path = ChannelPath.TIME if self.isi else ChannelPath.FREQUENCY
        self.path = path
        self._h = np.asarray(channel.impulse_response, dtype=float)
        if path is ChannelPath.TIME:
            self.response = np.fft.fft(channel.full_impulse_response)
        else:
            self.response = np.asarray(channel.freq_response, dtype=complex)
        self._tail = np.zeros(self._h.size - 1)

    @property
    def channel(self) -> ReflectionChannel:
        return self._channel

    def reset(self) -> None:
        """Vuelve a un flujo precedido de silencio."""
        self._tail = np.zeros(self._h.size - 1)

    def ideal(self, spectra: np.ndarray) -> np.ndarray:
        return np.asarray(spectra) * self.response

    def apply(self, spectra: np.ndarray) -> np.ndarray:
        spectra = np.atleast_2d(np.asarray(spectra, dtype=complex))
        if spectra.ndim != 2 or spectra.shape[1] != self._grid.n_bins:
            raise TxRxError(
                f"expected rows of {self._grid.n_bins} bins, got shape {spectra.shape}"
            )
        if self.path is ChannelPath.FREQUENCY:
            return spectra * self.response

        cp = self._grid.cp_len
        x = np.fft.ifft(spectra, norm="ortho", axis=1).real
        if cp:
            x = np.hstack([x[:, -cp:], x])
        stream = x.ravel()
        out = oaconvolve(stream, self._h)
        out[: self._tail.size] += self._tail
        self._tail = out[stream.size:].copy()
        rows = out[: stream.size].reshape(x.shape)[:, cp:]
        return np.fft.fft(rows, norm="ortho", axis=1)


# ============================================================================
# Un simbolo
# ============================================================================
def channel_pass(
    frame: HsOfdmFrame,
    channel: ReflectionChannel,
    noise: NoiseModel | None = None,
    rng: np.random.Generator | None = None,
    path: ChannelPath = ChannelPath.AUTO,
    previous: HsOfdmFrame | None = None,
) -> Reception:
    """
    Y = canal(X) + V para un simbolo.

    `previous` es el simbolo enviado justo antes; en la ruta temporal su
    cola entra en `frame`. Sin el, `frame` va precedido de silencio.
    """
    grid = frame.grid
    link = StreamChannel(channel, grid, path)
    warnings: list[str] = []
    if link.isi:
        msg = f"ISI regime: L_cp={grid.cp_len} < L_h={channel.channel_len}"
        warnings.append(msg)
        log.warning(msg)

    if noise is not None and noise.enabled:
        if rng is None:
            raise TxRxError("noise enabled but no random generator given")
        v = gen_noise(noise, grid, rng)
    else:
        v = np.zeros(grid.n_bins, dtype=complex)

    if link.path is ChannelPath.FREQUENCY:
        y_spec = frame.spectrum * channel.freq_response + v
        y = real_part(idft(y_spec), "received symbol")
    else:
        if previous is not None:
            if previous.grid.n_bins != grid.n_bins or previous.grid.cp_len != grid.cp_len:
                raise TxRxError("previous frame was built on a different lattice")
            link.apply(previous.spectrum)
        clean = link.apply(frame.spectrum)[0]
        y = real_part(idft(clean), "received symbol") + real_part(idft(v), "noise")
        y_spec = dft(y)

    return Reception(spectrum=y_spec, time=y, noise=v, path=link.path, warnings=tuple(warnings))
