"""
hsofdmtdr.access.schemes - Esquemas de acceso multiple.

Cada esquema es una clase que implementa la interfaz base `AccessScheme`.
Recibe el numero de PLM y la rejilla, y decide que recurso ocupa cada
PLM (turno, peine de subportadoras o codigo) y con que tasas se obtienen
reflectogramas, transferogramas y medidas.

Esquemas disponibles:
    - TdmaScheme : Un PLM por simbolo, en turnos round-robin.
    - FdmaScheme : Todos a la vez, cada uno en su peine K_u.
    - CdmaScheme : Todos a la vez, ensanchado con filas de Hadamard.
"""

from __future__ import annotations

import abc
import enum
from dataclasses import dataclass

import numpy as np

from hsofdmtdr.access.cdma import hadamard
from hsofdmtdr.access.fdma import fdma_allocate
from hsofdmtdr.core.errors import AccessError
from hsofdmtdr.core.grid import ChannelGrid


# ============================================================================
# SchemeType enum
# ============================================================================
class SchemeType(enum.Enum):
    """Identificador de cada esquema."""
    TDMA = "tdma"
    FDMA = "fdma"
    CDMA = "cdma"

    @classmethod
    def parse(cls, name: str | SchemeType) -> SchemeType:
        if isinstance(name, SchemeType):
            return name
        try:
            return cls(name.lower())
        except ValueError:
            raise AccessError(f"unknown access scheme {name!r} (known: tdma, fdma, cdma)") from None


@dataclass(frozen=True, slots=True)
class RateReport:
    """
    Tasas por PLM, en Hz.

    Atributos:
        n_rho:  Reflectogramas por segundo.
        n_t:    Transferogramas por segundo.
        n_meas: Medidas (reflectogramas + transferogramas) por segundo.
    """

    n_rho: float
    n_t: float
    n_meas: float


# ============================================================================
# AccessScheme (clase base abstracta)
# ============================================================================
class AccessScheme(abc.ABC):
    """
    Interfaz abstracta para un esquema de acceso.

    Parametros comunes:
        - n_plm: Numero de PLM que comparten el medio (>= 1).
        - grid:  Rejilla HS-OFDM comun a todos.
    """

    def __init__(self, n_plm: int, grid: ChannelGrid) -> None:
        if n_plm < 1:
            raise AccessError(f"n_plm must be >= 1, got {n_plm}")
        self._n_plm = n_plm
        self._grid = grid

    # ------------------------------------------------------------------
    # Propiedades
    # ------------------------------------------------------------------
    @property
    def n_plm(self) -> int:
        return self._n_plm

    @property
    def grid(self) -> ChannelGrid:
        return self._grid

    # ------------------------------------------------------------------
    # Interfaz abstracta
    # ------------------------------------------------------------------
    @property
    @abc.abstractmethod
    def scheme_type(self) -> SchemeType:
        ...

    @property
    @abc.abstractmethod
    def name(self) -> str:
        ...

    @property
    @abc.abstractmethod
    def symbols_per_reflectogram(self) -> int:
        """Simbolos OFDM consecutivos que consume un reflectograma por PLM."""
        ...

    @abc.abstractmethod
    def rates(self) -> RateReport:
        ...

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n_plm={self._n_plm}, N={self._grid.n_half})"


# ============================================================================
# TdmaScheme
# ============================================================================
class TdmaScheme(AccessScheme):
    """
    Turnos fijos: en el simbolo s transmite el PLM slot_order[s mod N_PLM].
    Los demas escuchan y estiman el canal de transferencia.
    """

    def __init__(
        self, n_plm: int, grid: ChannelGrid, slot_order: list[int] | None = None
    ) -> None:
        super().__init__(n_plm, grid)
        order = list(range(n_plm)) if slot_order is None else list(slot_order)
        if sorted(order) != list(range(n_plm)):
            raise AccessError(f"slot order must be a permutation of 0..{n_plm - 1}, got {order}")
        self._slot_order = order

    @property
    def scheme_type(self) -> SchemeType:
        return SchemeType.TDMA

    @property
    def name(self) -> str:
        return "TDMA"

    @property
    def symbols_per_reflectogram(self) -> int:
        return self._n_plm

    @property
    def slot_order(self) -> list[int]:
        return list(self._slot_order)

    def transmitter(self, symbol_index: int) -> int:
        return self._slot_order[symbol_index % self._n_plm]

    def rates(self) -> RateReport:
        t = self._grid.symbol_duration
        n = self._n_plm
        return RateReport(1.0 / (n * t), (n - 1) / (n * t), 1.0 / t)


# ============================================================================
# FdmaScheme
# ============================================================================
class FdmaScheme(AccessScheme):
    """
    Peines disjuntos de subportadoras. El PLM u recibe el peine cuyo
    primer elemento es la u-esima subportadora activa, de modo que el
    orden de los PLM sigue el orden en frecuencia.
    """

    def __init__(
        self, n_plm: int, grid: ChannelGrid, active_bins: np.ndarray | None = None
    ) -> None:
        super().__init__(n_plm, grid)
        if grid.n_half % n_plm:
            raise AccessError(f"N={grid.n_half} is not a multiple of N_PLM={n_plm}")
        if active_bins is None:
            active_bins = np.arange(grid.n_half)
        self._active = np.unique(np.asarray(active_bins, dtype=int))
        first = int(self._active[0]) if self._active.size else 0
        self._offsets = [(first + u) % n_plm for u in range(n_plm)]

    @property
    def scheme_type(self) -> SchemeType:
        return SchemeType.FDMA

    @property
    def name(self) -> str:
        return "FDMA"

    @property
    def symbols_per_reflectogram(self) -> int:
        return 1

    def comb(self, u: int) -> np.ndarray:
        """K_u completo (sin recortar por la mascara activa)."""
        if not 0 <= u < self._n_plm:
            raise AccessError(f"PLM index {u} outside [0, {self._n_plm})")
        return fdma_allocate(self._offsets[u], self._n_plm, self._grid.n_half)

    def active_comb(self, u: int) -> np.ndarray:
        """Subportadoras de K_u que ademas estan en la mascara activa."""
        return np.intersect1d(self.comb(u), self._active)

    def rates(self) -> RateReport:
        t = self._grid.symbol_duration
        n = self._n_plm
        return RateReport(1.0 / t, (n - 1) / t, n / t)


# ============================================================================
# CdmaScheme
# ============================================================================
class CdmaScheme(AccessScheme):
    """Ensanchado temporal con la fila u de la matriz de Hadamard N_PLM x N_PLM."""

    def __init__(self, n_plm: int, grid: ChannelGrid) -> None:
        super().__init__(n_plm, grid)
        self._codes = hadamard(n_plm)

    @property
    def scheme_type(self) -> SchemeType:
        return SchemeType.CDMA

    @property
    def name(self) -> str:
        return "CDMA"

    @property
    def symbols_per_reflectogram(self) -> int:
        return self._n_plm

    @property
    def codes(self) -> np.ndarray:
        return self._codes.copy()

    def code(self, u: int) -> np.ndarray:
        if not 0 <= u < self._n_plm:
            raise AccessError(f"PLM index {u} outside [0, {self._n_plm})")
        return self._codes[u].copy()

    def rates(self) -> RateReport:
        t = self._grid.symbol_duration
        n = self._n_plm
        return RateReport(1.0 / (n * t), (n - 1) / (n * t), 1.0 / t)


# ============================================================================
# Fabrica
# ============================================================================
def create_scheme(
    scheme: SchemeType | str,
    n_plm: int,
    grid: ChannelGrid,
    active_bins: np.ndarray | None = None,
    slot_order: list[int] | None = None,
) -> AccessScheme:
    """slot_order solo aplica a TDMA; los demas esquemas lo ignoran."""
    scheme = SchemeType.parse(scheme)
    if scheme is SchemeType.TDMA:
        return TdmaScheme(n_plm, grid, slot_order)
    if scheme is SchemeType.FDMA:
        return FdmaScheme(n_plm, grid, active_bins)
    return CdmaScheme(n_plm, grid)


def rate_table(
    grid: ChannelGrid, plm_counts: list[int]
) -> list[tuple[SchemeType, int, RateReport]]:
    """Tasas de los tres esquemas para varios N_PLM (CDMA solo potencias de 2)."""
    rows = []
    for n in plm_counts:
        for scheme in SchemeType:
            if scheme is SchemeType.CDMA and n & (n - 1):
                continue
            if scheme is SchemeType.FDMA and grid.n_half % n:
                continue
            rows.append((scheme, n, create_scheme(scheme, n, grid).rates()))
    return rows
