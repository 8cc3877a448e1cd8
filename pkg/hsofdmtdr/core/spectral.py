"""
hsofdmtdr.core.spectral - Unitary transforms and spectral helpers.

All transforms use the unitary 1/sqrt(M) scaling, so Parseval holds
exactly and dft/idft are inverses. Vectors are 1-D numpy arrays; the
functions validate their input once and never mutate it.
"""

from __future__ import annotations

import logging

import numpy as np

from hsofdmtdr.core.errors import SpectralError

log = logging.getLogger(__name__)

HERMITIAN_RTOL = 1e-12
HERMITIAN_ATOL = 1e-300
REAL_RESIDUE_RTOL = 1e-10


def _as_vector(v: np.ndarray, what: str = "vector") -> np.ndarray:
    arr = np.asarray(v)
    if arr.ndim != 1:
        raise SpectralError(f"{what} must be 1-D, got shape {arr.shape}")
    if arr.size == 0:
        raise SpectralError(f"{what} must not be empty")
    if not np.all(np.isfinite(arr)):
        raise SpectralError(f"{what} contains NaN or Inf")
    return arr


# ============================================================================
# Transforms
# ============================================================================
def dft(v: np.ndarray) -> np.ndarray:
    """Unitary forward DFT."""
    return np.fft.fft(_as_vector(v), norm="ortho")


def idft(v: np.ndarray) -> np.ndarray:
    """Unitary inverse DFT."""
    return np.fft.ifft(_as_vector(v), norm="ortho")


def real_part(v: np.ndarray, what: str = "signal") -> np.ndarray:
    """Drop the imaginary residue of a nominally real vector, checking it is tiny."""
    v = np.asarray(v)
    if not np.iscomplexobj(v):
        return v.astype(float)
    scale = float(np.max(np.abs(v))) if v.size else 0.0
    resid = float(np.max(np.abs(v.imag))) if v.size else 0.0
    if resid > REAL_RESIDUE_RTOL * max(scale, 1.0):
        raise SpectralError(
            f"{what} is not real: imaginary residue {resid:.3e} (scale {scale:.3e})"
        )
    return v.real.copy()


# ============================================================================
# Hermitian symmetry
# ============================================================================
def hermitian_check(spectrum: np.ndarray, rtol: float = HERMITIAN_RTOL) -> bool:
    """
    True when X_0 and X_N are real and X_{2N-k} = conj(X_k) for k = 1..N-1.

    The tolerance is rtol * max|X| with a HERMITIAN_ATOL floor, so the
    check does not depend on the scale of X. Odd lengths raise SpectralError.
    """
    x = _as_vector(spectrum, "spectrum")
    if x.size % 2:
        raise SpectralError(f"Hermitian check needs an even length, got {x.size}")
    n = x.size // 2
    tol = max(rtol * float(np.max(np.abs(x))), HERMITIAN_ATOL)
    if abs(np.imag(x[0])) > tol or abs(np.imag(x[n])) > tol:
        return False
    if n == 1:
        return True
    upper = x[:n:-1]  # X_{2N-1} .. X_{N+1}
    return bool(np.max(np.abs(upper - np.conj(x[1:n]))) <= tol)


def hermitian_extend(half: np.ndarray) -> np.ndarray:
    """
    Mirror N+1 one-sided values (k = 0..N) into a 2N Hermitian spectrum.

    The caller guarantees half[0] and half[N] are real; their imaginary
    parts are discarded.
    """
    h = _as_vector(half, "one-sided spectrum").astype(complex)
    if h.size < 2:
        raise SpectralError("one-sided spectrum needs at least 2 values (k = 0..N)")
    n = h.size - 1
    full = np.empty(2 * n, dtype=complex)
    full[: n + 1] = h
    full[0] = h[0].real
    full[n] = h[n].real
    full[n + 1 :] = np.conj(h[n - 1 : 0 : -1])
    return full


# ============================================================================
# Padding and reconstruction
# ============================================================================
def zero_pad(v: np.ndarray, target_len: int) -> np.ndarray:
    """Append zeros so the vector has length target_len."""
    arr = _as_vector(v)
    if target_len < arr.size:
        raise SpectralError(
            f"cannot zero-pad length {arr.size} down to {target_len}"
        )
    out = np.zeros(target_len, dtype=arr.dtype)
    out[: arr.size] = arr
    return out


def reconstruct(spectrum: np.ndarray, eta: int = 1) -> np.ndarray:
    """
    Oversample a real reflectogram by zero insertion in its spectrum.

    Inserts (eta - 1) * L zeros around the Nyquist bin L/2, whose value is
    split half/half between the two band edges, and returns the real
    inverse transform scaled by sqrt(eta). Samples eta*n of the result
    equal the eta = 1 samples n.
    """
    p = _as_vector(spectrum, "spectrum")
    if not isinstance(eta, (int, np.integer)) or eta < 1:
        raise SpectralError(f"eta must be an integer >= 1, got {eta!r}")
    if not hermitian_check(p):
        raise SpectralError("reconstruct needs a Hermitian-symmetric spectrum")

    if eta == 1:
        return real_part(idft(p), "reflectogram")

    length = p.size
    half = length // 2
    dense_len = eta * length
    q = np.zeros(dense_len, dtype=complex)
    q[:half] = p[:half]
    q[half] = p[half] / 2.0
    q[dense_len - half] = p[half] / 2.0
    q[dense_len - half + 1 :] = p[half + 1 :]
    return real_part(idft(q), "reconstructed reflectogram") * np.sqrt(eta)


def periodic_sinc_interpolate(samples: np.ndarray, eta: int) -> np.ndarray:
    """
    Time-domain band-limited interpolation of one period of a real sequence.

    Uses the periodic sinc kernel of an even-length band-limited sequence
    whose Nyquist component is split between +-F_s/2. Equivalent to
    reconstruct(dft(samples), eta) but O(L^2 * eta); kept as a reference.
    """
    x = _as_vector(samples, "samples").astype(float)
    length = x.size
    if length % 2:
        raise SpectralError(f"periodic sinc interpolation needs even length, got {length}")
    t = np.arange(eta * length) / eta
    offsets = t[:, None] - np.arange(length)[None, :]
    s = np.sin(np.pi * offsets / length)
    num = np.sin(np.pi * offsets * (length - 1) / length)
    near = np.abs(s) < 1e-12
    ratio = np.where(near, length - 1.0, num / np.where(near, 1.0, s))
    # offsets lie in (-L, L): the sine only vanishes at offset 0
    kernel = (ratio + np.cos(np.pi * offsets)) / length
    return kernel @ x
