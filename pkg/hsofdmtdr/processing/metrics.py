"""
hsofdmtdr.processing.metrics - Figures of merit and parameter checks.

    - sidelobe_report:        PSLR / ISLR of an equivalent pulse.
    - range_resolution:       delta = v_p / (4 B).
    - max_unambiguous_range:  d_max = (v_p T_s / 2) min(2N, L_cp).
    - coherence_bandwidth:    Largest shift whose frequency correlation
                              stays above alpha of its zero-lag value.
    - validate_params:        Symbol/CP/grid constraints for a channel.
    - sinr:                   Signal to noise-plus-interference ratio.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from hsofdmtdr.core.errors import MetricsError
from hsofdmtdr.core.grid import ChannelGrid
from hsofdmtdr.core.spectral import dft, reconstruct
from hsofdmtdr.network.channel import ReflectionChannel

log = logging.getLogger(__name__)

NULL_LEVEL = 0.01
DEFAULT_ALPHA = 0.9
SIDELOBE_ETA = 16


# ============================================================================
# Sidelobes
# ============================================================================
@dataclass(frozen=True, slots=True)
class SidelobeReport:
    """
    PSLR/ISLR in dB. Both are None when the pulse has no unique peak, no
    identifiable first nulls, or no sidelobe energy at all.
    """

    pslr_db: float | None
    islr_db: float | None
    mainlobe: tuple[int, int] | None
    peak_index: int

    @property
    def defined(self) -> bool:
        return self.pslr_db is not None


def _first_null(signal: np.ndarray, start: int, step: int, peak: float) -> int | None:
    """Walk from the peak until a sign change or a deep local minimum."""
    mag = np.abs(signal)
    size = signal.size
    i = start
    for _ in range(size // 2):
        j = i + step
        if not 0 <= j < size:
            return None
        if signal[i] * signal[j] <= 0 and (signal[i] != 0 or signal[j] != 0):
            return j if mag[j] <= mag[i] else i
        k = j + step
        if 0 <= k < size and mag[j] <= mag[i] and mag[j] <= mag[k] and mag[j] < NULL_LEVEL * peak:
            return j
        i = j
    return None


def _undefined(peak_index: int) -> SidelobeReport:
    return SidelobeReport(None, None, None, peak_index)


def sidelobe_report(pulse: np.ndarray, eta: int = SIDELOBE_ETA) -> SidelobeReport:
    """
    PSLR and ISLR of a real periodic pulse.

    The pulse is oversampled by `eta` (zero-insertion reconstruction),
    rotated so its |peak| sits in the middle, and the mainlobe is taken
    between the first nulls on each side: a sign change, or a local
    minimum of |pulse| under 1% of the peak. Everything else in the
    period is sidelobe.
    """
    p = np.asarray(pulse, dtype=float)
    if p.ndim != 1 or p.size < 3:
        raise MetricsError("pulse must be 1-D with at least 3 samples")
    if eta < 1:
        raise MetricsError(f"eta must be >= 1, got {eta}")
    dense = reconstruct(dft(p), eta) if eta > 1 else p.copy()

    peak_index = int(np.argmax(np.abs(dense)))
    peak = float(np.abs(dense[peak_index]))
    if peak == 0:
        return _undefined(peak_index)
    center = dense.size // 2
    centered = np.roll(dense, center - peak_index)

    left = _first_null(centered, center, -1, peak)
    right = _first_null(centered, center, +1, peak)
    if left is None or right is None:
        return _undefined(peak_index)

    power = centered**2
    inside = np.zeros(dense.size, dtype=bool)
    inside[left : right + 1] = True
    side = power[~inside]
    if side.size == 0 or np.max(side) <= 1e-30 * peak**2:
        return _undefined(peak_index)
    if np.max(side) >= peak**2 * (1 - 1e-9):
        return _undefined(peak_index)

    pslr = 10.0 * np.log10(np.max(side) / peak**2)
    islr = 10.0 * np.log10(np.sum(side) / np.sum(power[inside]))
    offset = peak_index - center
    extent = ((left + offset) % dense.size, (right + offset) % dense.size)
    return SidelobeReport(float(pslr), float(islr), extent, peak_index)


def pslr(pulse: np.ndarray, eta: int = SIDELOBE_ETA) -> float | None:
    return sidelobe_report(pulse, eta).pslr_db


def islr(pulse: np.ndarray, eta: int = SIDELOBE_ETA) -> float | None:
    return sidelobe_report(pulse, eta).islr_db


# ============================================================================
# Range figures
# ============================================================================
def range_resolution(velocity: float, bandwidth: float) -> float:
    """delta = v_p / (4 B) in meters."""
    if velocity <= 0 or bandwidth <= 0:
        raise MetricsError(f"velocity and bandwidth must be > 0, got {velocity}, {bandwidth}")
    return velocity / (4.0 * bandwidth)


def max_unambiguous_range(velocity: float, sample_period: float, n_half: int, cp_len: int) -> float:
    """d_max = (v_p T_s / 2) min(2N, L_cp) in meters."""
    if velocity <= 0 or sample_period <= 0 or n_half < 1 or cp_len < 0:
        raise MetricsError("velocity, sample period and N must be > 0, L_cp >= 0")
    return velocity * sample_period / 2.0 * min(2 * n_half, cp_len)


# ============================================================================
# Coherence bandwidth
# ============================================================================
def frequency_correlation(h: np.ndarray) -> np.ndarray:
    """R_H(m) = mean_k H_k conj(H_{k+m}) for m = 0..M-1."""
    h = np.asarray(h, dtype=complex)
    if h.ndim != 1 or h.size < 1:
        raise MetricsError("frequency response must be a non-empty 1-D vector")
    size = h.size
    full = np.correlate(h, h, mode="full")  # index size-1+m -> sum_k h[k+m] conj(h[k])
    sums = np.conj(full[size - 1 :])
    return sums / (size - np.arange(size))


def coherence_bandwidth(h: np.ndarray, delta_f: float, alpha: float = DEFAULT_ALPHA) -> float:
    """
    Largest m*delta_f such that |R_H(m')| >= alpha |R_H(0)| for every m' <= m.

    A zero response has zero coherence bandwidth.
    """
    if not 0.0 <= alpha <= 1.0:
        raise MetricsError(f"alpha must lie in [0, 1], got {alpha}")
    r = np.abs(frequency_correlation(h))
    if r[0] == 0:
        return 0.0
    ok = r >= alpha * r[0] * (1 - 1e-12)
    failing = np.flatnonzero(~ok)
    last = (r.size - 1) if failing.size == 0 else int(failing[0]) - 1
    return max(last, 0) * delta_f


# ============================================================================
# Parametrization report
# ============================================================================
@dataclass(frozen=True, slots=True)
class ConstraintResult:
    name: str
    satisfied: bool
    margin: float
    unit: str
    required: float
    actual: float


@dataclass(frozen=True)
class ParamReport:
    range_resolution_m: float
    d_max_m: float
    coherence_bandwidth_hz: float
    target_d_max_m: float
    constraints: tuple[ConstraintResult, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return all(c.satisfied for c in self.constraints)

    @property
    def failed(self) -> list[ConstraintResult]:
        return [c for c in self.constraints if not c.satisfied]

    def to_dict(self) -> dict:
        out = asdict(self)
        out["constraints"] = [asdict(c) for c in self.constraints]
        out["passed"] = self.passed
        return out


def validate_params(
    grid: ChannelGrid,
    channel: ReflectionChannel,
    target_d_max: float,
    velocity: float,
    alpha: float = DEFAULT_ALPHA,
    occupied_bandwidth: float | None = None,
) -> ParamReport:
    """Check the symbol length, CP and subcarrier spacing against the channel."""
    if target_d_max <= 0 or velocity <= 0:
        raise MetricsError("target d_max and velocity must be > 0")
    n, fs = grid.n_half, grid.sample_rate
    ts = grid.sample_period
    bc = coherence_bandwidth(channel.one_sided(), grid.delta_f, alpha)
    hop = velocity * ts

    def check(name: str, actual: float, required: float, unit: str) -> ConstraintResult:
        return ConstraintResult(name, actual >= required, actual - required, unit, required, actual)

    constraints = [
        check("n_half_vs_coherence_bandwidth", float(n),
              grid.bandwidth / bc if bc > 0 else math.inf, "subcarriers"),
        check("coherence_bandwidth_vs_spacing", bc, grid.delta_f, "Hz"),
        check("n_half_vs_target_range", float(n), target_d_max / hop, "subcarriers"),
        check("cyclic_prefix_vs_target_range", float(grid.cp_len), 2.0 * target_d_max / hop, "samples"),
    ]
    if math.isfinite(channel.coherence_time):
        constraints.append(check("coherence_time_vs_symbol",
                                 channel.coherence_time, grid.symbol_duration, "s"))

    report = ParamReport(
        range_resolution_m=range_resolution(velocity, occupied_bandwidth or grid.bandwidth),
        d_max_m=max_unambiguous_range(velocity, ts, n, grid.cp_len),
        coherence_bandwidth_hz=bc,
        target_d_max_m=target_d_max,
        constraints=tuple(constraints),
    )
    for c in report.failed:
        log.warning(
            "Constraint %s failed: actual %.6g < required %.6g %s (Fs=%.6g Hz)",
            c.name, c.actual, c.required, c.unit, fs,
        )
    return report


# ============================================================================
# SINR
# ============================================================================
def sinr(
    signal: np.ndarray,
    noise: np.ndarray,
    interference: np.ndarray | None = None,
    bins: np.ndarray | None = None,
) -> float:
    """
    10 log10(sum signal / sum(noise + interference)) over `bins`.

    Inputs are per-bin powers. A zero denominator gives +inf.
    """
    s = np.asarray(signal, dtype=float)
    v = np.asarray(noise, dtype=float)
    i = np.zeros_like(s) if interference is None else np.asarray(interference, dtype=float)
    if s.shape != v.shape or s.shape != i.shape:
        raise MetricsError("signal, noise and interference must have the same shape")
    if np.any(s < 0) or np.any(v < 0) or np.any(i < 0):
        raise MetricsError("powers must be non-negative")
    if bins is not None:
        idx = np.asarray(bins, dtype=int)
        s, v, i = s[idx], v[idx], i[idx]
    den = float(np.sum(v) + np.sum(i))
    num = float(np.sum(s))
    if den == 0:
        return math.inf
    if num == 0:
        return -math.inf
    return 10.0 * math.log10(num / den)
