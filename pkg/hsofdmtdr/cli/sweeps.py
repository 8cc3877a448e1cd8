"""
hsofdmtdr.cli.sweeps - Series de datos para las figuras.

Cada funcion devuelve filas listas para escribir como CSV:
    complexity_series: operaciones modeladas PC/CE frente a N.
    sidelobe_series:   PSLR/ISLR frente a N por metodo y modulacion.
    dmax_series:       d_max frente a L_cp.
    rate_series:       N_rho, N_t y N_meas frente a N_PLM.
"""

from __future__ import annotations

import logging

import numpy as np

from hsofdmtdr.access.schemes import SchemeType, rate_table
from hsofdmtdr.core.errors import MetricsError
from hsofdmtdr.core.grid import ChannelGrid
from hsofdmtdr.processing.metrics import SIDELOBE_ETA, max_unambiguous_range, sidelobe_report
from hsofdmtdr.processing.reflectogram import (
    ReflectogramMethod,
    complexity,
    equivalent_pulse,
    hermitian_active_set,
)
from hsofdmtdr.txrx.constellation import Constellation, Modulation, random_symbols
from hsofdmtdr.txrx.mapping import hs_map, place_symbols
from hsofdmtdr.txrx.noise import substream

log = logging.getLogger(__name__)

DEFAULT_N_VALUES = (64, 128, 256, 512, 1024, 2048, 4096)
DEFAULT_PAYLOADS = 100

COMPLEXITY_COLUMNS = ("n_half", "pulse_compression_ops", "channel_estimation_ops", "ratio")
SIDELOBE_COLUMNS = ("n_half", "method", "modulation", "pslr_db", "islr_db", "trials", "pslr_std_db", "islr_std_db")
DMAX_COLUMNS = ("cp_len", "cable", "d_max_m")
RATE_COLUMNS = ("cp_len", "scheme", "n_plm", "n_rho_hz", "n_t_hz", "n_meas_hz")


def complexity_series(n_values: list[int]) -> list[tuple]:
    rows = []
    for n in n_values:
        pc = complexity(ReflectogramMethod.PULSE_COMPRESSION, n).modeled_ops
        ce = complexity(ReflectogramMethod.CHANNEL_ESTIMATION, n).modeled_ops
        rows.append((n, pc, ce, pc / ce))
    return rows


def _mean_defined(values: list[float | None]) -> float:
    kept = [v for v in values if v is not None]
    return float(np.mean(kept)) if kept else float("nan")


def _spread_defined(values: list[float | None]) -> float:
    kept = [v for v in values if v is not None]
    return float(np.std(kept)) if kept else float("nan")


def sidelobe_series(
    n_values: list[int],
    payloads: int = DEFAULT_PAYLOADS,
    seed: int = 0,
    eta: int = SIDELOBE_ETA,
) -> list[tuple]:
    """
    Pulso equivalente sobre toda la banda (subportadoras 1..N-1).

    CE no depende de la carga util: una sola evaluacion. PC promedia
    PSLR e ISLR en dB sobre `payloads` simbolos aleatorios.
    """
    if payloads < 1:
        raise MetricsError(f"payloads must be >= 1, got {payloads}")
    rows = []
    for n in n_values:
        one_sided = np.arange(1, n)
        active = hermitian_active_set(one_sided, n)
        ce = sidelobe_report(
            equivalent_pulse(ReflectogramMethod.CHANNEL_ESTIMATION, active_bins=active, n_bins=2 * n),
            eta,
        )
        rows.append((n, "channel_estimation", "any", ce.pslr_db, ce.islr_db, 1, 0.0, 0.0))

        for m_index, modulation in enumerate(Modulation):
            rng = substream(seed, n, m_index)
            const = Constellation.of(modulation)
            pslrs, islrs = [], []
            for _ in range(payloads):
                syms = random_symbols(rng, const, one_sided.size)
                x_spec = hs_map(place_symbols(syms, one_sided, n))
                rep = sidelobe_report(
                    equivalent_pulse(ReflectogramMethod.PULSE_COMPRESSION, x_spec=x_spec), eta
                )
                pslrs.append(rep.pslr_db)
                islrs.append(rep.islr_db)
            rows.append((
                n, "pulse_compression", modulation.value,
                _mean_defined(pslrs), _mean_defined(islrs), payloads,
                _spread_defined(pslrs), _spread_defined(islrs),
            ))
        log.info("Sidelobe sweep: N=%d done", n)
    return rows


def dmax_series(grid: ChannelGrid, velocities: dict[str, float], cp_values: list[int]) -> list[tuple]:
    rows = []
    for cp in cp_values:
        for name, v in sorted(velocities.items()):
            rows.append((cp, name, max_unambiguous_range(v, grid.sample_period, grid.n_half, cp)))
    return rows


def rate_series(grid: ChannelGrid, plm_counts: list[int], cp_values: list[int]) -> list[tuple]:
    order = {s: i for i, s in enumerate(SchemeType)}
    rows = []
    for cp in cp_values:
        table = rate_table(grid.with_cp(cp), plm_counts)
        for scheme, n_plm, rates in sorted(table, key=lambda r: (r[1], order[r[0]])):
            rows.append((cp, scheme.value, n_plm, rates.n_rho, rates.n_t, rates.n_meas))
    return rows
