"""
hsofdmtdr.txrx.mapping - HS-OFDM symbol construction.

The transmitter works on the one-sided subcarrier vector D_dot
(k = 0..N, with D_dot_0 and D_dot_N real). `premap` packs it into the
N-length payload D = [D_dot_1 .. D_dot_{N-1}, D_dot_0 + j D_dot_N] and
`hs_map` mirrors it into the 2N Hermitian spectrum X whose IDFT is real.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from hsofdmtdr.core.errors import TxRxError
from hsofdmtdr.core.grid import ChannelGrid
from hsofdmtdr.core.spectral import hermitian_extend, idft, real_part

log = logging.getLogger(__name__)

REAL_SLOT_RTOL = 1e-12


def _check_one_sided(d_dot: np.ndarray) -> np.ndarray:
    d = np.asarray(d_dot, dtype=complex)
    if d.ndim != 1 or d.size < 2:
        raise TxRxError(f"one-sided vector needs N+1 >= 2 entries, got shape {d.shape}")
    if not np.all(np.isfinite(d)):
        raise TxRxError("one-sided vector contains NaN or Inf")
    tol = REAL_SLOT_RTOL * max(float(np.max(np.abs(d))), 1.0)
    if abs(d[0].imag) > tol or abs(d[-1].imag) > tol:
        raise TxRxError("D_dot_0 and D_dot_N must be real")
    return d


def premap(d_dot: np.ndarray) -> np.ndarray:
    """Pack D_dot (N+1) into the N-length payload D."""
    d = _check_one_sided(d_dot)
    n = d.size - 1
    out = np.empty(n, dtype=complex)
    out[: n - 1] = d[1:n]
    out[n - 1] = d[0].real + 1j * d[n].real
    return out


def unpack_premap(payload: np.ndarray) -> np.ndarray:
    """Inverse of premap: N-length D back to D_dot (N+1)."""
    p = np.asarray(payload, dtype=complex)
    if p.ndim != 1 or p.size < 1:
        raise TxRxError("payload must be a non-empty 1-D vector")
    n = p.size
    d = np.empty(n + 1, dtype=complex)
    d[1:n] = p[: n - 1]
    d[0] = p[n - 1].real
    d[n] = p[n - 1].imag
    return d


def hs_map(d_dot: np.ndarray) -> np.ndarray:
    """X_k = D_dot_k (k = 0..N), X_{2N-k} = conj(D_dot_k)."""
    return hermitian_extend(_check_one_sided(d_dot))


def hs_map_payload(payload: np.ndarray) -> np.ndarray:
    """Map(D): the Hermitian spectrum of a packed payload."""
    return hs_map(unpack_premap(payload))


def add_cp(x: np.ndarray, cp_len: int) -> np.ndarray:
    x = np.asarray(x)
    if not 0 <= cp_len <= x.size:
        raise TxRxError(f"cp_len must lie in [0, {x.size}], got {cp_len}")
    if cp_len == 0:
        return x.copy()
    return np.concatenate([x[-cp_len:], x])


def remove_cp(s: np.ndarray, cp_len: int) -> np.ndarray:
    s = np.asarray(s)
    if not 0 <= cp_len < s.size:
        raise TxRxError(f"cp_len must lie in [0, {s.size}), got {cp_len}")
    return s[cp_len:].copy()


def place_symbols(
    symbols: np.ndarray, active_bins: np.ndarray, n_half: int, amplitude: float = 1.0
) -> np.ndarray:
    """
    Build D_dot with `symbols` on the one-sided `active_bins`, zero elsewhere.

    Symbols landing on the real-only slots 0 and N are projected to +-1 by
    the sign of their real part.
    """
    bins = np.asarray(active_bins, dtype=int)
    symbols = np.asarray(symbols, dtype=complex)
    if symbols.shape != bins.shape:
        raise TxRxError(f"{symbols.size} symbols for {bins.size} active bins")
    if bins.size and (bins.min() < 0 or bins.max() > n_half):
        raise TxRxError(f"active bins must lie in [0, {n_half}]")
    return place_symbol_batch(symbols[None, :], bins, n_half, amplitude)[0]


@dataclass(frozen=True)
class HsOfdmFrame:
    """
    One HS-OFDM symbol.

    Attributes:
        grid:     Lattice it was built on.
        d_dot:    One-sided subcarrier values (N+1).
        payload:  Packed payload D (N).
        spectrum: Hermitian spectrum X (2N).
        time:     Real time samples x (2N).
        with_cp:  x with the cyclic prefix prepended (2N + L_cp).
    """

    grid: ChannelGrid
    d_dot: np.ndarray
    payload: np.ndarray
    spectrum: np.ndarray
    time: np.ndarray
    with_cp: np.ndarray

    @property
    def duration(self) -> float:
        return self.grid.symbol_duration


def build_frame(d_dot: np.ndarray, grid: ChannelGrid) -> HsOfdmFrame:
    d = _check_one_sided(d_dot)
    if d.size != grid.n_half + 1:
        raise TxRxError(f"D_dot has {d.size} entries, grid expects {grid.n_half + 1}")
    x_spec = hs_map(d)
    x = real_part(idft(x_spec), "HS-OFDM symbol")
    return HsOfdmFrame(
        grid=grid,
        d_dot=d,
        payload=premap(d),
        spectrum=x_spec,
        time=x,
        with_cp=add_cp(x, grid.cp_len),
    )


def place_symbol_batch(
    symbols: np.ndarray, active_bins: np.ndarray, n_half: int, amplitude: float = 1.0
) -> np.ndarray:
    """Row-wise place_symbols: symbols (rows, n_active) -> D_dot (rows, N+1)."""
    bins = np.asarray(active_bins, dtype=int)
    symbols = np.atleast_2d(np.asarray(symbols, dtype=complex))
    if symbols.shape[1] != bins.size:
        raise TxRxError(f"{symbols.shape[1]} symbols per row for {bins.size} active bins")
    d = np.zeros((symbols.shape[0], n_half + 1), dtype=complex)
    d[:, bins] = symbols
    for edge in (0, n_half):
        if edge in bins:
            d[:, edge] = np.where(d[:, edge].real >= 0, 1.0, -1.0)
    return amplitude * d


def hs_map_batch(d_dot: np.ndarray) -> np.ndarray:
    """Row-wise hs_map for a (rows, N+1) array with real edge slots."""
    d = np.atleast_2d(np.asarray(d_dot, dtype=complex))
    n = d.shape[1] - 1
    full = np.empty((d.shape[0], 2 * n), dtype=complex)
    full[:, : n + 1] = d
    full[:, 0] = d[:, 0].real
    full[:, n] = d[:, n].real
    full[:, n + 1 :] = np.conj(d[:, n - 1 : 0 : -1])
    return full
