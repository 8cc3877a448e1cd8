"""
hsofdmtdr.access.fdma - Peines de subportadoras y reflectogramas FDMA.

El PLM u ocupa K_u = {u, u + N_PLM, u + 2 N_PLM, ...} dentro de 0..N-1.
Con solo |K_u| subportadoras su reflectograma tiene L_rho = 2N / N_PLM
muestras y se calcula directamente como suma de cosenos y senos sobre
el espectro plegado P_dot (los bins 0 y N una vez, el resto dos veces).
"""

from __future__ import annotations

import logging

import numpy as np

from hsofdmtdr.core.errors import AccessError

log = logging.getLogger(__name__)


def fdma_allocate(u: int, n_plm: int, n_half: int) -> np.ndarray:
    """Peine K_u de indices one-sided asignado al PLM u."""
    if n_plm < 1:
        raise AccessError(f"n_plm must be >= 1, got {n_plm}")
    if n_half % n_plm:
        raise AccessError(f"N={n_half} is not a multiple of N_PLM={n_plm}")
    if not 0 <= u < n_plm:
        raise AccessError(f"PLM index {u} outside [0, {n_plm})")
    return np.arange(u, n_half, n_plm)


def fdma_fold(spectrum: np.ndarray) -> np.ndarray:
    """
    Pliega un espectro hermitico 2N a N+1 valores:
    P_dot_k = P_k para k en {0, N}, 2 P_k para 1 <= k <= N-1.
    """
    p = np.asarray(spectrum, dtype=complex)
    if p.ndim not in (1, 2) or p.shape[-1] % 2 or p.shape[-1] < 2:
        raise AccessError(f"spectrum must have an even length per row, got shape {p.shape}")
    n = p.shape[-1] // 2
    folded = 2.0 * p[..., : n + 1]
    folded[..., 0] = p[..., 0]
    folded[..., n] = p[..., n]
    return folded


def fdma_reflectogram(
    folded: np.ndarray,
    combs: np.ndarray,
    n_half: int,
    n_plm: int | None = None,
) -> np.ndarray:
    """
    rho_u[n] = 1/sqrt(L_rho) * sum_{k in K_u} (Re P_dot_k cos(pi k n / N)
                                               - Im P_dot_k sin(pi k n / N))
    para n = 0..L_rho-1, L_rho = 2N / N_PLM.

    Si no se indica n_plm se deduce del tamano del peine.
    """
    pd = np.asarray(folded, dtype=complex)
    k = np.asarray(combs, dtype=int)
    if pd.ndim not in (1, 2) or pd.shape[-1] != n_half + 1:
        raise AccessError(
            f"folded spectrum must have N+1={n_half + 1} entries per row, got shape {pd.shape}"
        )
    if k.size == 0:
        raise AccessError("comb is empty")
    if k.min() < 0 or k.max() > n_half:
        raise AccessError(f"comb indices must lie in [0, {n_half}]")
    if n_plm is None:
        n_plm = max(1, n_half // k.size)
    if n_plm < 1 or (2 * n_half) % n_plm:
        raise AccessError(f"2N={2 * n_half} is not a multiple of N_PLM={n_plm}")
    length = 2 * n_half // n_plm
    n = np.arange(length)
    phase = np.pi * np.outer(n, k) / n_half
    values = pd[..., k]
    rho = values.real @ np.cos(phase).T - values.imag @ np.sin(phase).T
    return rho / np.sqrt(length)


def wrapped_delay(delay_samples: int, n_plm: int, n_half: int) -> int:
    """Posicion en la que aparece un eco de retardo dado en un reflectograma FDMA."""
    return int(delay_samples % (2 * n_half // n_plm))
