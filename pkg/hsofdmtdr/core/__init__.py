"""
hsofdmtdr.core - Core spectral primitives.

Modules:
    - errors:   Exception hierarchy (TdrError and subclasses).
    - grid:     ChannelGrid, the shared subcarrier/sample lattice.
    - spectral: Unitary DFT/IDFT, Hermitian checks, reconstruction.
"""

from hsofdmtdr.core.errors import TdrError
from hsofdmtdr.core.grid import ChannelGrid
from hsofdmtdr.core.spectral import (
    dft,
    hermitian_check,
    hermitian_extend,
    idft,
    reconstruct,
    zero_pad,
)

__all__ = [
    "ChannelGrid",
    "TdrError",
    "dft",
    "hermitian_check",
    "hermitian_extend",
    "idft",
    "reconstruct",
    "zero_pad",
]
