"""
hsofdmtdr.cli - Interfaz de linea de comandos.

Modulos:
    - commands:  CommandDispatcher y los subcomandos
                 presets | param-report | simulate | sweep.
    - artifacts: ArtifactWriter (JSON/CSV reproducibles, manifiesto).
    - sweeps:    Series de datos para figuras.
"""

from hsofdmtdr.cli.artifacts import ArtifactWriter
from hsofdmtdr.cli.commands import (
    EXIT_CONFIG,
    EXIT_FAILURE,
    EXIT_OK,
    Command,
    CommandDispatcher,
    build_default_commands,
)

__all__ = [
    "EXIT_CONFIG",
    "EXIT_FAILURE",
    "EXIT_OK",
    "ArtifactWriter",
    "Command",
    "CommandDispatcher",
    "build_default_commands",
]
