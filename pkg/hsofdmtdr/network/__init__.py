"""
hsofdmtdr.network - Modelo fisico de la red de distribucion.

Modulos:
    - cable:    Parametros RLGC, gamma, Z0, v_p y presets LV/MV.
    - topology: Arbol de nodos, segmentos y cargas.
    - channel:  Z_in, Gamma, canal de reflexion y de transferencia.
    - presets:  Redes de ejemplo (linea MV, alimentador LV).
"""

from hsofdmtdr.network.cable import (
    CableParams,
    characteristic_impedance,
    phase_velocity,
    propagation_constant,
)
from hsofdmtdr.network.channel import (
    ReflectionChannel,
    input_impedance,
    local_coupling,
    reflection_channel,
    reflection_coefficient,
    transfer_channel,
)
from hsofdmtdr.network.topology import Load, NetworkModel, Node, Segment

__all__ = [
    "CableParams",
    "Load",
    "NetworkModel",
    "Node",
    "ReflectionChannel",
    "Segment",
    "characteristic_impedance",
    "input_impedance",
    "local_coupling",
    "phase_velocity",
    "propagation_constant",
    "reflection_channel",
    "reflection_coefficient",
    "transfer_channel",
]
