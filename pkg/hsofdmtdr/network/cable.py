"""
hsofdmtdr.network.cable - Parametros RLGC de cable y teoria de lineas.

Un cable se describe por sus parametros por unidad de longitud
(R', L', G', C'), cada uno constante o funcion de la frecuencia.
De ellos se derivan la constante de propagacion gamma, la impedancia
caracteristica Z0 y la velocidad de fase v_p.

Presets:
    - LV_CABLE: cable subterraneo de baja tension, v_p = 1.50e8 m/s
    - MV_CABLE: linea aerea de media tension, v_p = 2.56e8 m/s
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from hsofdmtdr.core.errors import NetworkError

log = logging.getLogger(__name__)

# Parametro por unidad de longitud: constante o f[Hz] -> valor
PerMeter = float | Callable[[np.ndarray], np.ndarray]

# Frecuencia a la que se evalua v_p para parametros dependientes de f
VELOCITY_REFERENCE_HZ = 1.0e6


def _evaluate(param: PerMeter, f: np.ndarray) -> np.ndarray:
    if callable(param):
        return np.broadcast_to(np.asarray(param(f), dtype=float), f.shape)
    return np.full(f.shape, float(param))


@dataclass(frozen=True, slots=True)
class CableParams:
    """
    Parametros primarios de un cable de dos conductores.

    Atributos:
        resistance:  R' en ohm/m (>= 0).
        inductance:  L' en H/m (> 0).
        conductance: G' en S/m (>= 0).
        capacitance: C' en F/m (> 0).
        name:        Etiqueta opcional para logs e informes.
    """

    resistance: PerMeter
    inductance: PerMeter
    conductance: PerMeter
    capacitance: PerMeter
    name: str = "cable"

    def rlgc(self, f: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Evalua (R', L', G', C') en las frecuencias dadas y valida signos."""
        f = np.atleast_1d(np.asarray(f, dtype=float))
        r = _evaluate(self.resistance, f)
        l = _evaluate(self.inductance, f)
        g = _evaluate(self.conductance, f)
        c = _evaluate(self.capacitance, f)
        if np.any(r < 0) or np.any(g < 0):
            raise NetworkError(f"{self.name}: R' and G' must be >= 0")
        if np.any(l <= 0) or np.any(c <= 0):
            raise NetworkError(f"{self.name}: L' and C' must be > 0")
        return r, l, g, c

    def series_impedance(self, f: np.ndarray) -> np.ndarray:
        """Z' = R' + j*2*pi*f*L'."""
        r, l, _, _ = self.rlgc(f)
        return r + 2j * np.pi * np.asarray(f, dtype=float) * l

    def shunt_admittance(self, f: np.ndarray) -> np.ndarray:
        """Y' = G' + j*2*pi*f*C'."""
        _, _, g, c = self.rlgc(f)
        return g + 2j * np.pi * np.asarray(f, dtype=float) * c

    def dump_state(self) -> str:
        r, l, g, c = self.rlgc(np.array([VELOCITY_REFERENCE_HZ]))
        return (
            f"{self.name}: R'={r[0]:.4g} ohm/m L'={l[0]:.4g} H/m "
            f"G'={g[0]:.4g} S/m C'={c[0]:.4g} F/m "
            f"v_p={phase_velocity(self):.4g} m/s"
        )


# ============================================================================
# Magnitudes derivadas
# ============================================================================
def _zy(cable: CableParams, f: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    f = np.atleast_1d(np.asarray(f, dtype=float))
    z = cable.series_impedance(f)
    y = cable.shunt_admittance(f)
    if np.any(np.abs(y) == 0):
        raise NetworkError(
            f"{cable.name}: shunt admittance vanishes (f = 0 with G' = 0); "
            "evaluate DC at a small positive frequency"
        )
    return z, y


def propagation_constant(cable: CableParams, f: np.ndarray) -> np.ndarray:
    """gamma = sqrt((R' + jwL')(G' + jwC')), rama principal (Re >= 0)."""
    z, y = _zy(cable, f)
    return np.sqrt(z * y)


def characteristic_impedance(cable: CableParams, f: np.ndarray) -> np.ndarray:
    """Z0 = sqrt((R' + jwL') / (G' + jwC')), rama principal (Re >= 0)."""
    z, y = _zy(cable, f)
    return np.sqrt(z / y)


def phase_velocity(cable: CableParams, f_ref: float = VELOCITY_REFERENCE_HZ) -> float:
    """v_p = 1 / sqrt(L' C') en el limite de alta frecuencia."""
    _, l, _, c = cable.rlgc(np.array([f_ref]))
    return float(1.0 / np.sqrt(l[0] * c[0]))


def cable_from_velocity(
    velocity: float,
    z0: float,
    resistance: PerMeter = 0.0,
    conductance: PerMeter = 0.0,
    name: str = "cable",
) -> CableParams:
    """Construye un cable con L' = Z0/v_p y C' = 1/(Z0 v_p)."""
    if velocity <= 0 or z0 <= 0:
        raise NetworkError(f"velocity and z0 must be > 0, got {velocity}, {z0}")
    return CableParams(
        resistance=resistance,
        inductance=z0 / velocity,
        conductance=conductance,
        capacitance=1.0 / (z0 * velocity),
        name=name,
    )


# ============================================================================
# Presets
# ============================================================================
LV_VELOCITY = 1.50e8
MV_VELOCITY = 2.56e8

# L' = 0.4444 uH/m, C' = 0.1 nF/m -> Z0 ~ 66.7 ohm
LV_CABLE = CableParams(
    resistance=0.4e-3,
    inductance=0.4444e-6,
    conductance=0.0,
    capacitance=0.1e-9,
    name="lv",
)

MV_CABLE = cable_from_velocity(MV_VELOCITY, z0=350.0, resistance=1.0e-3, name="mv")

CABLE_PRESETS: dict[str, CableParams] = {
    "lv": LV_CABLE,
    "mv": MV_CABLE,
}

VELOCITY_PRESETS: dict[str, float] = {
    "lv": LV_VELOCITY,
    "mv": MV_VELOCITY,
}


def get_cable(name: str) -> CableParams:
    try:
        return CABLE_PRESETS[name.lower()]
    except KeyError:
        raise NetworkError(
            f"unknown cable preset {name!r} (known: {', '.join(sorted(CABLE_PRESETS))})"
        ) from None
