"""
hsofdmtdr.config.parsing - Parser de valores de configuracion.

Convierte los textos legibles de los archivos de escenario en valores
numericos:
    - Rangos de subportadoras: "3-104", "3..104", "7".
    - Listas separadas por comas: "64,256,1024".
    - Magnitudes con prefijo SI: "1.2M", "480k", "30u".

Caracteristicas:
    - Espacios ignorados, prefijos sin distinguir mayusculas salvo m/M.
    - Validacion: error claro (ConfigError) con el texto ofensivo.
"""

from __future__ import annotations

import logging
import re

from hsofdmtdr.core.errors import ConfigError

log = logging.getLogger(__name__)


# ============================================================================
# Prefijos SI -> factor
# ============================================================================
_SI_PREFIX: dict[str, float] = {
    "p": 1e-12,
    "n": 1e-9,
    "u": 1e-6,
    "m": 1e-3,
    "k": 1e3,
    "K": 1e3,
    "M": 1e6,
    "G": 1e9,
}

_QUANTITY = re.compile(r"^([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)([pnumkKMG]?)$")
_RANGE = re.compile(r"^(\d+)\s*(?:-|\.\.)\s*(\d+)$")


def parse_quantity(value: str | float | int, field: str | None = None) -> float:
    """
    Convierte "1.2M" -> 1.2e6. Los numeros pasan tal cual.

    Raises:
        ConfigError: Si el texto no es un numero con prefijo valido.
    """
    if isinstance(value, bool):
        raise ConfigError(f"expected a number, got {value!r}", field=field)
    if isinstance(value, (int, float)):
        return float(value)
    text = str(value).strip().replace(" ", "")
    match = _QUANTITY.match(text)
    if not match:
        raise ConfigError(f"invalid quantity {value!r}", field=field)
    number, prefix = match.groups()
    return float(number) * _SI_PREFIX.get(prefix, 1.0)


def parse_bin_range(value: str | list | tuple, field: str | None = None) -> tuple[int, int]:
    """
    Convierte "3-104" en (3, 104). Un solo numero da (k, k).

    Raises:
        ConfigError: Si el rango esta mal formado o invertido.
    """
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ConfigError(f"range must have two ends, got {value!r}", field=field)
        first, last = int(value[0]), int(value[1])
    else:
        text = str(value).strip()
        if text.isdigit():
            first = last = int(text)
        else:
            match = _RANGE.match(text)
            if not match:
                raise ConfigError(f"invalid subcarrier range {value!r}", field=field)
            first, last = int(match.group(1)), int(match.group(2))
    if first > last:
        raise ConfigError(f"range {value!r} is reversed", field=field)
    return first, last


def parse_int_list(value: str | list, field: str | None = None) -> list[int]:
    """Convierte "64,256,1024" (o una lista) en [64, 256, 1024]."""
    if isinstance(value, list):
        items = value
    else:
        items = [t for t in str(value).replace(" ", "").split(",") if t]
    try:
        out = [int(v) for v in items]
    except (TypeError, ValueError):
        raise ConfigError(f"invalid integer list {value!r}", field=field) from None
    if not out:
        raise ConfigError("empty integer list", field=field)
    return out


def format_bin_range(first: int, last: int) -> str:
    return str(first) if first == last else f"{first}-{last}"
