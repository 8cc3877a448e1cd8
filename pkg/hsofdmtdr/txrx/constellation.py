"""
hsofdmtdr.txrx.constellation - Gray-mapped PSK constellations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from hsofdmtdr.core.errors import TxRxError


class Modulation(enum.Enum):
    BPSK = "bpsk"
    QPSK = "qpsk"
    PSK8 = "8psk"

    @property
    def bits_per_symbol(self) -> int:
        return {Modulation.BPSK: 1, Modulation.QPSK: 2, Modulation.PSK8: 3}[self]

    @classmethod
    def parse(cls, name: str | Modulation) -> Modulation:
        if isinstance(name, Modulation):
            return name
        try:
            return cls(name.lower())
        except ValueError:
            raise TxRxError(
                f"unknown modulation {name!r} (known: bpsk, qpsk, 8psk)"
            ) from None


# Rotacion del primer punto: QPSK en (+-1 +-j)/sqrt(2)
_PHASE_OFFSET = {Modulation.BPSK: 0.0, Modulation.QPSK: np.pi / 4, Modulation.PSK8: 0.0}


@dataclass(frozen=True)
class Constellation:
    """Unit-energy M-PSK alphabet indexed by Gray-coded bit labels."""

    scheme: Modulation
    points: np.ndarray

    @classmethod
    def of(cls, scheme: Modulation | str) -> Constellation:
        scheme = Modulation.parse(scheme)
        m = 2 ** scheme.bits_per_symbol
        points = np.empty(m, dtype=complex)
        for position in range(m):
            label = position ^ (position >> 1)
            points[label] = np.exp(1j * (2 * np.pi * position / m + _PHASE_OFFSET[scheme]))
        return cls(scheme, points)

    @property
    def bits_per_symbol(self) -> int:
        return self.scheme.bits_per_symbol

    @property
    def size(self) -> int:
        return self.points.size


def modulate(bits: np.ndarray, constellation: Constellation, n_symbols: int) -> np.ndarray:
    """Map the first n_symbols * log2(M) bits (MSB first) to symbols."""
    bits = np.asarray(bits).astype(np.int64).ravel()
    bps = constellation.bits_per_symbol
    needed = n_symbols * bps
    if bits.size < needed:
        raise TxRxError(f"need {needed} bits for {n_symbols} symbols, got {bits.size}")
    if np.any((bits != 0) & (bits != 1)):
        raise TxRxError("bits must be 0 or 1")
    groups = bits[:needed].reshape(n_symbols, bps)
    weights = 1 << np.arange(bps - 1, -1, -1)
    return constellation.points[groups @ weights]


def random_symbols(
    rng: np.random.Generator, constellation: Constellation, shape: int | tuple[int, ...]
) -> np.ndarray:
    """Equiprobable random symbols (same as modulating uniform random bits)."""
    return constellation.points[rng.integers(0, constellation.size, size=shape)]
