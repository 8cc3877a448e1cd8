"""
hsofdmtdr.network.channel - Canales de reflexion y de transferencia.

A partir del modelo de red se calcula:
    - input_impedance:      Z_in visto desde un puerto (regla de
                            transformacion de impedancias y paralelos).
    - reflection_coefficient: Gamma = (Z_in - Z_PLM) / (Z_in + Z_PLM).
    - reflection_channel:   H_Gamma muestreado en la rejilla, espejado
                            con simetria hermitica, y su respuesta al
                            impulso truncada a L_h (99.99% de la energia).
    - transfer_channel:     S21 entre dos puertos PLM (cascada ABCD).

Politica de DC: el bin k = 0 se evalua en delta_f / 100. Los bins 0 y N
toman la parte real para que el espectro espejado sea hermitico.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from hsofdmtdr.core.errors import InvariantViolation, NetworkError
from hsofdmtdr.core.grid import ChannelGrid
from hsofdmtdr.core.spectral import hermitian_extend, real_part
from hsofdmtdr.network.cable import characteristic_impedance, propagation_constant
from hsofdmtdr.network.topology import OPEN_CIRCUIT_OHMS, Edge, NetworkModel

log = logging.getLogger(__name__)

ENERGY_FRACTION = 0.9999
SINGULAR_TOL = 1e-12
PASSIVITY_TOL = 1e-9
DC_FRACTION = 1.0 / 100.0


# ============================================================================
# Impedancias
# ============================================================================
def _parallel(impedances: list[np.ndarray], shape: tuple[int, ...]) -> np.ndarray:
    """Combinacion en paralelo; un corto en cualquier rama anula el total."""
    if not impedances:
        return np.full(shape, OPEN_CIRCUIT_OHMS, dtype=complex)
    stack = np.vstack(impedances)
    shorted = np.any(stack == 0, axis=0)
    safe = np.where(stack == 0, 1.0, stack)
    total = 1.0 / np.sum(1.0 / safe, axis=0)
    return np.where(shorted, 0.0, total)


def _transform_through_line(
    z_load: np.ndarray, z0: np.ndarray, gamma: np.ndarray, length: float
) -> tuple[np.ndarray, np.ndarray]:
    """
    Z visto a una distancia `length` de la carga:
    Z0 (Z_L + Z0 tanh(gd)) / (Z0 + Z_L tanh(gd)), en forma de coeficiente
    de reflexion. Devuelve (Z, mascara de bins singulares).
    """
    refl = (z_load - z0) / (z_load + z0)
    rotated = refl * np.exp(-2.0 * gamma * length)
    den = 1.0 - rotated
    singular = np.abs(den) < SINGULAR_TOL
    z = z0 * (1.0 + rotated) / np.where(singular, 1.0, den)
    return np.where(singular, OPEN_CIRCUIT_OHMS, z), singular


class _Evaluator:
    """Evalua impedancias de la red en un vector de frecuencias, con cache."""

    def __init__(self, net: NetworkModel, f: np.ndarray) -> None:
        self.net = net
        self.f = f
        self.singular = np.zeros(f.shape, dtype=bool)
        self._line_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        self._branch_cache: dict[tuple[str, str], np.ndarray] = {}

    def line(self, edge: Edge) -> tuple[np.ndarray, np.ndarray]:
        key = id(edge.cable)
        if key not in self._line_cache:
            self._line_cache[key] = (
                characteristic_impedance(edge.cable, self.f),
                propagation_constant(edge.cable, self.f),
            )
        return self._line_cache[key]

    def branch(self, node: str, edge: Edge) -> np.ndarray:
        """Z visto desde `node` hacia el otro extremo de `edge`."""
        key = (node, edge.other(node))
        if key not in self._branch_cache:
            far = edge.other(node)
            z_far = self.looking_into(far, exclude=edge)
            z0, gamma = self.line(edge)
            z, singular = _transform_through_line(z_far, z0, gamma, edge.length_m)
            self.singular |= singular
            self._branch_cache[key] = z
        return self._branch_cache[key]

    def looking_into(self, node: str, exclude: Edge | tuple[Edge, ...] | None = None) -> np.ndarray:
        """Z de todo lo que cuelga de `node` salvo las aristas excluidas."""
        if exclude is None:
            excluded: tuple[Edge, ...] = ()
        elif isinstance(exclude, Edge):
            excluded = (exclude,)
        else:
            excluded = exclude
        via = excluded[0] if excluded else None
        parts = self.net.load_impedances(node, self.f, via=via)
        for e in self.net.edges_at(node):
            if any(e is x for x in excluded):
                continue
            parts.append(self.branch(node, e))
        return _parallel(parts, self.f.shape)


def _frequencies(f: np.ndarray) -> np.ndarray:
    """
    Politica de DC: 0 Hz se evalua en DC_FRACTION de la menor frecuencia
    positiva pedida (1 Hz si no hay ninguna).
    """
    f = np.array(np.atleast_1d(np.asarray(f, dtype=float)))
    if np.any(f < 0) or not np.all(np.isfinite(f)):
        raise NetworkError("network frequencies must be finite and >= 0")
    dc = f == 0
    if np.any(dc):
        positive = f[~dc]
        f[dc] = DC_FRACTION * (positive.min() if positive.size else 1.0)
    return f


def input_impedance(net: NetworkModel, f: np.ndarray, port: str | None = None) -> np.ndarray:
    """Impedancia de entrada de la red vista desde `port` (raiz por defecto)."""
    f = _frequencies(f)
    ev = _Evaluator(net, f)
    z = ev.looking_into(port or net.root.name)
    if np.any(ev.singular):
        log.warning(
            "%s: %d near-singular bins clamped to open circuit",
            net.name, int(np.count_nonzero(ev.singular)),
        )
    return z


def reflection_coefficient(z_in: np.ndarray, z_plm: np.ndarray | complex) -> np.ndarray:
    """Gamma = (Z_in - Z_PLM) / (Z_in + Z_PLM)."""
    z_in = np.asarray(z_in, dtype=complex)
    z_plm = np.broadcast_to(np.asarray(z_plm, dtype=complex), z_in.shape)
    den = z_in + z_plm
    if np.any(np.abs(den) < SINGULAR_TOL):
        raise NetworkError("Z_in + Z_PLM vanishes: reflection coefficient undefined")
    return (z_in - z_plm) / den


# ============================================================================
# Canales
# ============================================================================
@dataclass(frozen=True)
class ReflectionChannel:
    """
    Canal LTI muestreado en la rejilla.

    Atributos:
        grid:             Rejilla, con channel_len = L_h.
        freq_response:    H (2N bins, hermitico).
        impulse_response: h truncada a L_h muestras.
        coherence_time:   T_c en segundos (inf = estatico).
        near_singular_bins: Bins one-sided recortados por resonancia.
        port:             Puerto de origen (None para canales sinteticos).
    """

    grid: ChannelGrid
    freq_response: np.ndarray
    impulse_response: np.ndarray
    coherence_time: float = float("inf")
    near_singular_bins: tuple[int, ...] = ()
    port: str | None = None
    warnings: tuple[str, ...] = field(default=())

    @classmethod
    def from_impulse_response(
        cls, h: np.ndarray, grid: ChannelGrid, coherence_time: float = float("inf")
    ) -> ReflectionChannel:
        """Canal sintetico a partir de h (H = DFT sin normalizar de h)."""
        h = np.asarray(h, dtype=float)
        if h.ndim != 1 or not 1 <= h.size <= grid.n_bins:
            raise NetworkError(f"impulse response length must lie in [1, {grid.n_bins}]")
        padded = np.zeros(grid.n_bins)
        padded[: h.size] = h
        return cls(
            grid=grid.with_channel_len(h.size),
            freq_response=np.fft.fft(padded),
            impulse_response=h.copy(),
            coherence_time=coherence_time,
        )

    @property
    def channel_len(self) -> int:
        return int(self.impulse_response.size)

    @property
    def full_impulse_response(self) -> np.ndarray:
        """h rellenada con ceros hasta 2N."""
        out = np.zeros(self.grid.n_bins)
        out[: self.channel_len] = self.impulse_response
        return out

    def one_sided(self) -> np.ndarray:
        return self.freq_response[: self.grid.n_half + 1]


def effective_length(h: np.ndarray, fraction: float = ENERGY_FRACTION) -> int:
    """Prefijo mas corto de h que contiene `fraction` de su energia."""
    energy = np.cumsum(np.asarray(h, dtype=float) ** 2)
    total = energy[-1]
    if total <= 0:
        return 1
    return int(np.searchsorted(energy, fraction * total * (1 - 1e-15)) + 1)


def _sample_frequencies(grid: ChannelGrid) -> np.ndarray:
    f = grid.one_sided_frequencies()
    f[0] = grid.delta_f * DC_FRACTION
    return f


def _to_channel(
    one_sided: np.ndarray,
    grid: ChannelGrid,
    singular: np.ndarray,
    port: str | None,
    label: str,
) -> ReflectionChannel:
    mags = np.abs(one_sided)
    over = mags > 1.0 + PASSIVITY_TOL
    warnings: list[str] = []
    if np.any(singular):
        warnings.append(f"{label}: {int(np.count_nonzero(singular))} near-singular bins clamped")
    if np.any(over):
        if np.max(mags[over]) > 1.0 + 1e-3:
            raise InvariantViolation(
                f"{label}: passivity violated (|H| up to {np.max(mags):.6f})"
            )
        one_sided = np.where(over, one_sided / np.maximum(mags, 1.0), one_sided)
        warnings.append(f"{label}: {int(np.count_nonzero(over))} bins clamped to |H| = 1")
    for w in warnings:
        log.warning(w)

    full = hermitian_extend(one_sided)
    h_full = real_part(np.fft.ifft(full), f"{label} impulse response")
    length = effective_length(h_full)
    return ReflectionChannel(
        grid=grid.with_channel_len(length),
        freq_response=full,
        impulse_response=h_full[:length].copy(),
        near_singular_bins=tuple(int(k) for k in np.flatnonzero(singular)),
        port=port,
        warnings=tuple(warnings),
    )


def reflection_channel(
    net: NetworkModel, grid: ChannelGrid, port: str | None = None
) -> ReflectionChannel:
    """H_Gamma en los bins 0..N de la rejilla, espejado a 2N."""
    port = port or net.root.name
    f = _sample_frequencies(grid)
    ev = _Evaluator(net, f)
    z_in = ev.looking_into(port)
    gamma = reflection_coefficient(z_in, net.plm_impedance_at(f))
    gamma[0] = gamma[0].real
    gamma[-1] = gamma[-1].real
    ch = _to_channel(gamma, grid, ev.singular, port, f"{net.name}@{port}")
    log.debug("Reflection channel %s@%s: L_h=%d", net.name, port, ch.channel_len)
    return ch


def _abcd_line(z0: np.ndarray, gamma: np.ndarray, length: float) -> np.ndarray:
    gd = gamma * length
    ch, sh = np.cosh(gd), np.sinh(gd)
    return np.stack([np.stack([ch, z0 * sh]), np.stack([sh / z0, ch])])


def _abcd_shunt(z: np.ndarray) -> np.ndarray:
    y = np.where(z == 0, 1.0 / SINGULAR_TOL, 1.0 / np.where(z == 0, 1.0, z))
    one = np.ones_like(y)
    return np.stack([np.stack([one, np.zeros_like(y)]), np.stack([y, one])])


def _cascade(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Producto matricial 2x2 bin a bin (ejes: fila, columna, frecuencia)."""
    return np.einsum("ijf,jkf->ikf", a, b)


def transfer_channel(
    net: NetworkModel, port_a: str, port_b: str, grid: ChannelGrid
) -> ReflectionChannel:
    """
    Transmision S21 entre dos puertos PLM, ambos referidos a Z_PLM.

    Las ramas que no estan en el camino a-b entran como cargas en
    paralelo en su nodo. Reciproco: transfer(a, b) == transfer(b, a).
    """
    if port_a == port_b:
        raise NetworkError(f"transfer channel needs two distinct ports, got {port_a!r} twice")
    f = _sample_frequencies(grid)
    ev = _Evaluator(net, f)
    path = net.path(port_a, port_b)

    total = None
    previous: Edge | None = None
    for node, edge in path:
        on_path = tuple(e for e in (previous, edge) if e is not None)
        shunt = _abcd_shunt(ev.looking_into(node, exclude=on_path))
        total = shunt if total is None else _cascade(total, shunt)
        if edge is not None:
            z0, gamma = ev.line(edge)
            total = _cascade(total, _abcd_line(z0, gamma, edge.length_m))
        previous = edge

    z = net.plm_impedance_at(f)
    a, b, c, d = total[0, 0], total[0, 1], total[1, 0], total[1, 1]
    s21 = 2.0 / (a + b / z + c * z + d)
    s21[0] = s21[0].real
    s21[-1] = s21[-1].real
    return _to_channel(s21, grid, ev.singular, f"{port_a}->{port_b}", f"{net.name}:{port_a}->{port_b}")


def local_coupling(net: NetworkModel, port: str, grid: ChannelGrid) -> ReflectionChannel:
    """
    Acoplamiento entre dos PLM conectados al mismo nodo: divisor de
    tension local 2 Z_in / (2 Z_in + Z_PLM), |.| <= 1 para Z_in pasiva.
    """
    f = _sample_frequencies(grid)
    ev = _Evaluator(net, f)
    z_in = ev.looking_into(port)
    ratio = 2.0 * z_in / (2.0 * z_in + net.plm_impedance_at(f))
    ratio[0] = ratio[0].real
    ratio[-1] = ratio[-1].real
    return _to_channel(ratio, grid, ev.singular, f"{port}<->{port}", f"{net.name}:{port}(local)")
