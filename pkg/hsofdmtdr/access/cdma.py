"""
hsofdmtdr.access.cdma - Codigos de Walsh-Hadamard y ensanchado en el tiempo.

Cada PLM repite su simbolo D durante N_PLM simbolos OFDM, multiplicado
por los chips de su fila de la matriz de Hadamard (Sylvester). Como el
mapeo hermitico es lineal, ensanchar D o X es equivalente.
"""

from __future__ import annotations

import logging

import numpy as np
from scipy.linalg import hadamard as _sylvester

from hsofdmtdr.core.errors import AccessError

log = logging.getLogger(__name__)

NOISE_MODES = ("simulated", "analytic")


def hadamard(n: int) -> np.ndarray:
    """Matriz de Hadamard de Sylvester n x n (n potencia de 2)."""
    if n < 1 or n & (n - 1):
        raise AccessError(f"Hadamard order must be a power of two, got {n}")
    return _sylvester(n).astype(float)


def cdma_encode(payload: np.ndarray, code: np.ndarray) -> np.ndarray:
    """Producto exterior C_u D^T: fila r = chip r por el simbolo."""
    c = np.asarray(code, dtype=float)
    d = np.asarray(payload)
    if c.ndim != 1 or d.ndim != 1:
        raise AccessError("code and payload must be 1-D")
    return np.outer(c, d)


def cdma_decode(received: np.ndarray, code: np.ndarray) -> np.ndarray:
    """(C_u^T Y_C)^T / |C_u|^2: media ponderada por los chips."""
    c = np.asarray(code, dtype=float)
    y = np.asarray(received)
    if y.ndim != 2 or y.shape[0] != c.size:
        raise AccessError(
            f"received block has {y.shape[0] if y.ndim == 2 else '?'} rows, code has {c.size} chips"
        )
    return (c @ y) / float(c @ c)


def decoded_noise_variance(sigma2: np.ndarray, n_plm: int, mode: str = "simulated") -> np.ndarray:
    """
    Varianza del ruido tras decodificar.

    "simulated": la media de N_PLM muestras independientes, sigma^2 / N_PLM.
    "analytic":  formula cerrada de referencia, sigma^2 / sqrt(N_PLM).
    """
    if mode not in NOISE_MODES:
        raise AccessError(f"unknown CDMA noise mode {mode!r} (known: {', '.join(NOISE_MODES)})")
    s = np.asarray(sigma2, dtype=float)
    return s / (n_plm if mode == "simulated" else np.sqrt(n_plm))
