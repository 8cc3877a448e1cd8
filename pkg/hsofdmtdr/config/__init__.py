"""
hsofdmtdr.config - Configuracion de escenarios.

Modulos:
    - presets:  Bandas FCC / ARIB / CENELEC.
    - parsing:  Rangos "3-104", listas y magnitudes con prefijo SI.
    - scenario: ScenarioConfig (JSON) y constructores de grid/red/ruido.
"""

from hsofdmtdr.config.parsing import parse_bin_range, parse_int_list, parse_quantity
from hsofdmtdr.config.presets import PRESETS, RegulatoryPreset, get_preset, preset_table
from hsofdmtdr.config.scenario import NoiseSettings, ScenarioConfig, dump_config, load_config

__all__ = [
    "PRESETS",
    "NoiseSettings",
    "RegulatoryPreset",
    "ScenarioConfig",
    "dump_config",
    "get_preset",
    "load_config",
    "parse_bin_range",
    "parse_int_list",
    "parse_quantity",
    "preset_table",
]
