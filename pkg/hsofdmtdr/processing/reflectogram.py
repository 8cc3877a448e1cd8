"""
hsofdmtdr.processing.reflectogram - Reflectogram estimators.

Two ways of turning a transmitted/received pair into a reflectogram:

    pulse_compression   Matched filter in the frequency domain after
                        zero-padding both signals to 4N. Output is the
                        linear cross-correlation: biased by the
                        autocorrelation of the transmitted symbol.
    channel_estimation  Per-bin division Y/X on the active subcarriers.
                        Output is the channel itself, band-limited by the
                        active mask.

Both can apply an optional cosine-family spectral window over the active
band before the inverse transform.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import get_window

from hsofdmtdr.core.errors import ReflectogramError
from hsofdmtdr.core.grid import ChannelGrid
from hsofdmtdr.core.spectral import (
    dft,
    hermitian_check,
    idft,
    real_part,
    reconstruct,
    zero_pad,
)

log = logging.getLogger(__name__)


class ReflectogramMethod(enum.Enum):
    PULSE_COMPRESSION = "pulse_compression"
    CHANNEL_ESTIMATION = "channel_estimation"

    @classmethod
    def parse(cls, name: str | ReflectogramMethod) -> ReflectogramMethod:
        if isinstance(name, ReflectogramMethod):
            return name
        aliases = {"pc": cls.PULSE_COMPRESSION, "ce": cls.CHANNEL_ESTIMATION}
        key = name.lower().replace("-", "_")
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise ReflectogramError(f"unknown reflectogram method {name!r}") from None


# ============================================================================
# Complexity model
# ============================================================================
def _n_log2_n(length: int) -> int:
    if length & (length - 1) == 0:
        return length * (length.bit_length() - 1)
    return math.ceil(length * math.log2(length))


@dataclass(frozen=True, slots=True)
class ComplexityReport:
    method: ReflectogramMethod
    n_half: int
    modeled_ops: int


def complexity(method: ReflectogramMethod | str, n_half: int) -> ComplexityReport:
    """
    Modeled operation count.

    PC: 2 (4N log2 4N) + 4N   (two 4N-point FFTs plus the product)
    CE: 2 (2N log2 2N) + 2N   (two 2N-point FFTs plus the division)
    """
    method = ReflectogramMethod.parse(method)
    if n_half < 1:
        raise ReflectogramError(f"n_half must be >= 1, got {n_half}")
    size = 4 * n_half if method is ReflectogramMethod.PULSE_COMPRESSION else 2 * n_half
    return ComplexityReport(method, n_half, 2 * _n_log2_n(size) + size)


def complexity_ratio(n_half: int) -> float:
    pc = complexity(ReflectogramMethod.PULSE_COMPRESSION, n_half).modeled_ops
    ce = complexity(ReflectogramMethod.CHANNEL_ESTIMATION, n_half).modeled_ops
    return pc / ce


# ============================================================================
# Reflectogram
# ============================================================================
@dataclass(frozen=True)
class Reflectogram:
    """
    Attributes:
        freq:       Reflectogram spectrum P (Hermitian).
        time:       rho = IDFT(P), real.
        method:     Estimator that produced it.
        op_count:   Modeled operation count.
        grid:       Lattice of the underlying symbol.
        active_bins: Bins (full 2N lattice) used, for channel estimation.
        window:     Spectral window name, or None.
    """

    freq: np.ndarray
    time: np.ndarray
    method: ReflectogramMethod
    op_count: int
    grid: ChannelGrid | None = None
    active_bins: np.ndarray | None = None
    window: str | None = None

    @property
    def length(self) -> int:
        return int(self.time.size)

    def reconstructed(self, eta: int = 1) -> np.ndarray:
        return reconstruct(self.freq, eta)

    def distance_axis(self, velocity: float, eta: int = 1) -> np.ndarray:
        if self.grid is None:
            raise ReflectogramError("reflectogram has no grid attached")
        return self.grid.distance_axis(self.length * eta, velocity, eta)


def hermitian_active_set(one_sided: np.ndarray, n_half: int) -> np.ndarray:
    """Mirror one-sided active bins (0..N) onto the full 2N lattice, sorted."""
    bins = np.unique(np.asarray(one_sided, dtype=int))
    if bins.size and (bins.min() < 0 or bins.max() > n_half):
        raise ReflectogramError(f"active bins must lie in [0, {n_half}]")
    mirrored = (2 * n_half - bins[(bins > 0) & (bins < n_half)]) % (2 * n_half)
    return np.unique(np.concatenate([bins, mirrored]))


def spectral_window(
    name: str | None, active_bins: np.ndarray, length: int
) -> np.ndarray:
    """
    Taper over the positive-frequency active band, mirrored to negative
    frequencies. Returns per-bin weights on a lattice of `length` bins.
    """
    weights = np.zeros(length)
    bins = np.asarray(active_bins, dtype=int)
    weights[bins] = 1.0
    if name is None or name in ("rect", "rectangular", "boxcar"):
        return weights
    half = length // 2
    positive = np.sort(bins[bins <= half])
    if positive.size == 0:
        return weights
    lo, hi = int(positive[0]), int(positive[-1])
    try:
        taper = get_window(name, hi - lo + 1, fftbins=False)
    except ValueError as exc:
        raise ReflectogramError(f"unknown spectral window {name!r}: {exc}") from None
    span = np.arange(lo, hi + 1)
    weights[span] *= taper
    neg = (length - span) % length
    inner = (span > 0) & (span < half)
    weights[neg[inner]] = weights[span[inner]]
    return weights


def _scaled_window(name: str | None, active: np.ndarray, length: int, factor: int) -> np.ndarray:
    """Window defined on a coarse lattice, resampled onto a finer one."""
    if name is None:
        return np.ones(length)
    coarse = spectral_window(name, active, length // factor)
    fine_freq = np.arange(length) / factor
    folded = np.minimum(fine_freq, length / factor - fine_freq)
    positive = np.interp(folded, np.arange(coarse.size // 2 + 1), coarse[: coarse.size // 2 + 1])
    return positive


def pulse_compression(
    x: np.ndarray, y: np.ndarray, window: str | None = None, grid: ChannelGrid | None = None
) -> Reflectogram:
    """
    Matched-filter reflectogram: P = DFT(y_zp) * conj(DFT(x_zp)) on 4N bins.

    `x` and `y` are the 2N real time-domain symbols (CP removed).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim != 1 or x.shape != y.shape:
        raise ReflectogramError(f"x and y must be equal-length 1-D, got {x.shape} and {y.shape}")
    if x.size % 2:
        raise ReflectogramError(f"symbol length must be even (2N), got {x.size}")
    n_half = x.size // 2
    x_zp = dft(zero_pad(x, 4 * n_half))
    y_zp = dft(zero_pad(y, 4 * n_half))
    p = y_zp * np.conj(x_zp)
    if window is not None:
        active = hermitian_active_set(np.flatnonzero(np.abs(dft(x)[: n_half + 1]) > 0), n_half)
        p = p * _scaled_window(window, active, 4 * n_half, 2)
    rho = real_part(idft(p), "pulse-compression reflectogram")
    return Reflectogram(
        freq=p,
        time=rho,
        method=ReflectogramMethod.PULSE_COMPRESSION,
        op_count=complexity(ReflectogramMethod.PULSE_COMPRESSION, n_half).modeled_ops,
        grid=grid,
        window=window,
    )


def channel_estimate(
    x_spec: np.ndarray,
    y_spec: np.ndarray,
    active_bins: np.ndarray,
    window: str | None = None,
    grid: ChannelGrid | None = None,
) -> Reflectogram:
    """
    Channel-estimation reflectogram: P_k = Y_k / X_k on the active bins
    (full 2N lattice, Hermitian-symmetric set), 0 elsewhere.
    """
    xs = np.asarray(x_spec, dtype=complex)
    ys = np.asarray(y_spec, dtype=complex)
    if xs.ndim != 1 or xs.shape != ys.shape:
        raise ReflectogramError(f"X and Y must be equal-length 1-D, got {xs.shape} and {ys.shape}")
    length = xs.size
    active = np.unique(np.asarray(active_bins, dtype=int))
    if active.size == 0:
        raise ReflectogramError("active set is empty")
    if active.min() < 0 or active.max() >= length:
        raise ReflectogramError(f"active bins must lie in [0, {length - 1}]")
    mask = np.zeros(length)
    mask[active] = 1.0
    if not hermitian_check(mask):
        raise ReflectogramError("active set is not Hermitian-symmetric (use hermitian_active_set)")
    dead = active[np.abs(xs[active]) == 0]
    if dead.size:
        raise ReflectogramError(f"X vanishes on active bin(s) {dead.tolist()}")

    p = np.zeros(length, dtype=complex)
    p[active] = ys[active] / xs[active]
    if window is not None:
        p = p * spectral_window(window, active, length)
    rho = real_part(idft(p), "channel-estimation reflectogram")
    return Reflectogram(
        freq=p,
        time=rho,
        method=ReflectogramMethod.CHANNEL_ESTIMATION,
        op_count=complexity(ReflectogramMethod.CHANNEL_ESTIMATION, length // 2).modeled_ops,
        grid=grid,
        active_bins=active,
        window=window,
    )


def equivalent_pulse(
    method: ReflectogramMethod | str,
    x_spec: np.ndarray | None = None,
    active_bins: np.ndarray | None = None,
    n_bins: int | None = None,
    eta: int = 1,
    window: str | None = None,
) -> np.ndarray:
    """
    Response of the estimator to a unit impulse channel.

    PC: linear autocorrelation of x (inverse of |X_zp|^2), length 4N*eta.
    CE: inverse transform of the active mask, length 2N*eta.
    """
    method = ReflectogramMethod.parse(method)
    if method is ReflectogramMethod.PULSE_COMPRESSION:
        if x_spec is None:
            raise ReflectogramError("pulse-compression pulse needs the symbol spectrum X")
        x = real_part(idft(np.asarray(x_spec, dtype=complex)), "symbol")
        refl = pulse_compression(x, x, window=window)
        return reconstruct(refl.freq, eta)
    if active_bins is None or n_bins is None:
        raise ReflectogramError("channel-estimation pulse needs active_bins and n_bins")
    mask = np.zeros(n_bins)
    mask[np.asarray(active_bins, dtype=int)] = 1.0
    if not hermitian_check(mask):
        raise ReflectogramError("active set is not Hermitian-symmetric")
    if window is not None:
        mask = mask * spectral_window(window, np.flatnonzero(mask), n_bins)
    return reconstruct(mask.astype(complex), eta)
