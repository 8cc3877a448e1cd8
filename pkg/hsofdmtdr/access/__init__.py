"""
hsofdmtdr.access - Acceso multiple para varios PLM.

Modulos:
    - schemes:  AccessScheme (ABC) y TDMA/FDMA/CDMA, tasas.
    - fdma:     Peines K_u, plegado y reflectograma FDMA.
    - cdma:     Hadamard, ensanchado y desensanchado.
    - campaign: Matriz de canales y campanas de medida.
"""

from hsofdmtdr.access.campaign import (
    CampaignResult,
    ChannelMatrix,
    build_channel_matrix,
    run_campaign,
)
from hsofdmtdr.access.cdma import cdma_decode, cdma_encode, hadamard
from hsofdmtdr.access.fdma import fdma_allocate, fdma_fold, fdma_reflectogram
from hsofdmtdr.access.schemes import (
    AccessScheme,
    CdmaScheme,
    FdmaScheme,
    RateReport,
    SchemeType,
    TdmaScheme,
    create_scheme,
)

__all__ = [
    "AccessScheme",
    "CampaignResult",
    "CdmaScheme",
    "ChannelMatrix",
    "FdmaScheme",
    "RateReport",
    "SchemeType",
    "TdmaScheme",
    "build_channel_matrix",
    "cdma_decode",
    "cdma_encode",
    "create_scheme",
    "fdma_allocate",
    "fdma_fold",
    "fdma_reflectogram",
    "hadamard",
    "run_campaign",
]
