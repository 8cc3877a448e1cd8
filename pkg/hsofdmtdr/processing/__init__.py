"""
hsofdmtdr.processing - Reflectogram estimators and metrics.

Modules:
    - reflectogram: pulse compression, channel estimation, equivalent
                    pulses and the operation-count model.
    - metrics:      PSLR/ISLR, range figures, coherence bandwidth,
                    parameter validation and SINR.
"""

from hsofdmtdr.processing.metrics import (
    ParamReport,
    SidelobeReport,
    coherence_bandwidth,
    max_unambiguous_range,
    range_resolution,
    sidelobe_report,
    sinr,
    validate_params,
)
from hsofdmtdr.processing.reflectogram import (
    Reflectogram,
    ReflectogramMethod,
    channel_estimate,
    complexity,
    equivalent_pulse,
    hermitian_active_set,
    pulse_compression,
)

__all__ = [
    "ParamReport",
    "Reflectogram",
    "ReflectogramMethod",
    "SidelobeReport",
    "channel_estimate",
    "coherence_bandwidth",
    "complexity",
    "equivalent_pulse",
    "hermitian_active_set",
    "max_unambiguous_range",
    "pulse_compression",
    "range_resolution",
    "sidelobe_report",
    "sinr",
    "validate_params",
]
