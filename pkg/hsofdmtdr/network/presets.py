"""
hsofdmtdr.network.presets - Redes de ejemplo.

    - mv_line():    Linea de media tension reducida a dos conductores:
                    alimentador (abierto) - 1 km - derivacion - 1.73 km -
                    carga en triangulo (abierta). Dos PLM por puerto, uno
                    por cada par de fases.
    - lv_feeder():  Alimentador de baja tension con una acometida.
"""

from __future__ import annotations

from hsofdmtdr.network.cable import LV_CABLE, MV_CABLE
from hsofdmtdr.network.topology import Load, NetworkModel, Node, Segment

MV_PLM_PORTS: tuple[str, ...] = ("feeder", "feeder", "tap", "tap")
LV_PLM_PORTS: tuple[str, ...] = ("cabinet",)


def mv_line(plm_impedance: complex = 50.0) -> NetworkModel:
    """Linea MV con el transformador y la carga en triangulo en circuito abierto."""
    delta_load = Node("delta_load", loads=(Load.open(),))
    tap = Node("tap", segments=(Segment(MV_CABLE, 1730.0, delta_load),))
    feeder = Node(
        "feeder",
        loads=(Load.open(),),
        segments=(Segment(MV_CABLE, 1000.0, tap),),
    )
    return NetworkModel(feeder, plm_impedance=plm_impedance, name="mv_line")


def lv_feeder(plm_impedance: complex = 50.0) -> NetworkModel:
    house = Node("house", loads=(Load.ohms(30.0),))
    street_end = Node("street_end", loads=(Load.open(),))
    joint = Node(
        "joint",
        segments=(
            Segment(LV_CABLE, 150.0, street_end),
            Segment(LV_CABLE, 40.0, house),
        ),
    )
    cabinet = Node("cabinet", segments=(Segment(LV_CABLE, 200.0, joint),))
    return NetworkModel(cabinet, plm_impedance=plm_impedance, name="lv_feeder")


NETWORK_PRESETS = {
    "mv_line": (mv_line, MV_PLM_PORTS),
    "lv_feeder": (lv_feeder, LV_PLM_PORTS),
}
