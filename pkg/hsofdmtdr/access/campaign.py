"""
hsofdmtdr.access.campaign - Campanas de medida con varios PLM.

Una campana hace que N_PLM modems conectados a la misma red obtengan
reflectogramas durante un numero de simbolos, compartiendo el medio
segun un esquema (TDMA, FDMA o CDMA).

Responsabilidades:
    - Construir la matriz de canales: reflexion de cada PLM (con los
      demas PLM como cargas) y acoplamiento entre cada par.
    - Generar las cargas utiles y el ruido de cada PLM con subflujos
      aleatorios independientes derivados de (seed, indice de PLM).
    - Estimar reflectogramas (y transferogramas si se piden) por
      estimacion de canal.
    - Pasar cada enlace por StreamChannel: con L_cp < L_h la senal va por
      la ruta temporal y la cola del simbolo anterior entra en el actual.
    - Acumular potencias por bin y dar la SINR simulada y la analitica.
      La SINR compara la senal recibida con ruido e interferencia entre
      PLM; la ISI se acumula aparte (sir_isi_db).

El resultado es determinista para una semilla dada, tambien con
workers > 1: cada receptor se procesa por separado y se combina en
orden de PLM.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from hsofdmtdr.access.cdma import decoded_noise_variance
from hsofdmtdr.access.fdma import fdma_fold, fdma_reflectogram
from hsofdmtdr.access.schemes import (
    AccessScheme,
    CdmaScheme,
    FdmaScheme,
    RateReport,
    SchemeType,
    TdmaScheme,
    create_scheme,
)
from hsofdmtdr.core.errors import AccessError
from hsofdmtdr.core.grid import ChannelGrid
from hsofdmtdr.network.channel import (
    ReflectionChannel,
    local_coupling,
    reflection_channel,
    transfer_channel,
)
from hsofdmtdr.network.topology import Load, NetworkModel
from hsofdmtdr.processing.metrics import sinr
from hsofdmtdr.processing.reflectogram import (
    Reflectogram,
    ReflectogramMethod,
    complexity,
    hermitian_active_set,
    spectral_window,
)
from hsofdmtdr.txrx.constellation import Constellation, random_symbols
from hsofdmtdr.txrx.link import StreamChannel
from hsofdmtdr.txrx.mapping import hs_map_batch, place_symbol_batch
from hsofdmtdr.txrx.noise import NoiseModel, gen_noise, psd_to_bin_power, substream

log = logging.getLogger(__name__)

# Simbolos procesados por bloque
CHUNK_SYMBOLS = 256
DEFAULT_TX_PSD_DBM_HZ = -36.81
DEFAULT_KEEP = 8


# ============================================================================
# Matriz de canales
# ============================================================================
class ChannelMatrix:
    """
    Canales vistos por cada PLM.

    reflection(u):  canal de reflexion del PLM u.
    coupling(u, v): espectro de lo que transmite u y llega a v
                    (reflexion si u == v).
    """

    def __init__(
        self,
        ports: list[str],
        reflections: list[ReflectionChannel],
        transfers: dict[tuple[int, int], ReflectionChannel],
    ) -> None:
        self._ports = list(ports)
        self._reflections = reflections
        self._transfers = transfers

    @property
    def n_plm(self) -> int:
        return len(self._ports)

    @property
    def ports(self) -> list[str]:
        return list(self._ports)

    def reflection(self, u: int) -> ReflectionChannel:
        return self._reflections[u]

    def transfer(self, u: int, v: int) -> ReflectionChannel:
        key = (min(u, v), max(u, v))
        return self._transfers[key]

    def channel(self, u: int, v: int) -> ReflectionChannel:
        """Canal de lo que transmite u hacia el receptor v."""
        if u == v:
            return self._reflections[u]
        return self.transfer(u, v)

    def coupling(self, u: int, v: int) -> np.ndarray:
        return self.channel(u, v).freq_response

    @property
    def warnings(self) -> list[str]:
        out: list[str] = []
        for ch in [*self._reflections, *self._transfers.values()]:
            out.extend(ch.warnings)
        return out

    def dump_state(self) -> str:
        lines = [f"=== ChannelMatrix: {self.n_plm} PLM ==="]
        for u, port in enumerate(self._ports):
            ch = self._reflections[u]
            lines.append(
                f"  PLM {u} @ {port}: L_h={ch.channel_len} "
                f"max|H|={np.max(np.abs(ch.freq_response)):.4f}"
            )
        for (u, v), ch in sorted(self._transfers.items()):
            lines.append(f"  T[{u}<->{v}]: max|T|={np.max(np.abs(ch.freq_response)):.4f}")
        return "\n".join(lines)


def _plm_loads(net: NetworkModel, ports: list[str], skip: set[int]) -> dict[str, list[Load]]:
    extra: dict[str, list[Load]] = {}
    for i, port in enumerate(ports):
        if i not in skip:
            extra.setdefault(port, []).append(Load.ohms(net.plm_impedance))
    return extra


def build_channel_matrix(
    net: NetworkModel,
    ports: list[str],
    grid: ChannelGrid,
    shared_channel: bool = False,
) -> ChannelMatrix:
    """
    Calcula reflexiones y acoplamientos con el resto de PLM conectados
    como cargas Z_PLM. Con shared_channel todos los PLM usan el canal de
    reflexion del PLM 0.
    """
    if not ports:
        raise AccessError("at least one PLM port is required")
    for p in ports:
        net.node(p)

    reflections: list[ReflectionChannel] = []
    for u, port in enumerate(ports):
        if shared_channel and u > 0:
            reflections.append(reflections[0])
            continue
        loaded = net.with_extra_loads(_plm_loads(net, ports, {u}))
        reflections.append(reflection_channel(loaded, grid, port))

    transfers: dict[tuple[int, int], ReflectionChannel] = {}
    for u in range(len(ports)):
        for v in range(u + 1, len(ports)):
            loaded = net.with_extra_loads(_plm_loads(net, ports, {u, v}))
            if ports[u] == ports[v]:
                transfers[(u, v)] = local_coupling(loaded, ports[u], grid)
            else:
                transfers[(u, v)] = transfer_channel(loaded, ports[u], ports[v], grid)

    matrix = ChannelMatrix(ports, reflections, transfers)
    log.debug("%s", matrix.dump_state())
    return matrix


# ============================================================================
# Resultados
# ============================================================================
@dataclass
class PlmStats:
    """Acumuladores por PLM."""

    index: int
    port: str
    n_bins: int
    signal: np.ndarray = field(init=False)
    noise: np.ndarray = field(init=False)
    interference: np.ndarray = field(init=False)
    isi: np.ndarray = field(init=False)
    rho_sum: np.ndarray | None = None
    reflectogram_count: int = 0
    transferogram_count: int = 0
    reflectograms: list[Reflectogram] = field(default_factory=list)
    transferograms: dict[int, list[Reflectogram]] = field(default_factory=dict)
    sinr_db: float = float("nan")
    sinr_analytic_db: float = float("nan")
    sir_isi_db: float = float("inf")

    def __post_init__(self) -> None:
        self.signal = np.zeros(self.n_bins)
        self.noise = np.zeros(self.n_bins)
        self.interference = np.zeros(self.n_bins)
        self.isi = np.zeros(self.n_bins)

    @property
    def mean_reflectogram(self) -> np.ndarray | None:
        if self.rho_sum is None or self.reflectogram_count == 0:
            return None
        return self.rho_sum / self.reflectogram_count

    def add_rho(self, rho: np.ndarray) -> None:
        total = rho.sum(axis=0)
        self.rho_sum = total if self.rho_sum is None else self.rho_sum + total
        self.reflectogram_count += rho.shape[0]

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "port": self.port,
            "reflectograms": self.reflectogram_count,
            "transferograms": self.transferogram_count,
            "sinr_db": self.sinr_db,
            "sinr_analytic_db": self.sinr_analytic_db,
            "interference_power_mw": float(self.interference.sum()),
            "isi_power_mw": float(self.isi.sum()),
            "sir_isi_db": self.sir_isi_db,
        }


@dataclass
class CampaignResult:
    scheme: SchemeType
    n_plm: int
    n_symbols: int
    duration_s: float
    rates: RateReport
    plms: list[PlmStats]
    warnings: list[str] = field(default_factory=list)

    @property
    def sinr_table(self) -> list[float]:
        return [p.sinr_db for p in self.plms]

    @property
    def analytic_sinr_table(self) -> list[float]:
        return [p.sinr_analytic_db for p in self.plms]

    @property
    def isi_table(self) -> list[float]:
        return [p.sir_isi_db for p in self.plms]

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme.value,
            "n_plm": self.n_plm,
            "n_symbols": self.n_symbols,
            "duration_s": self.duration_s,
            "rates_hz": {
                "reflectograms": self.rates.n_rho,
                "transferograms": self.rates.n_t,
                "measurements": self.rates.n_meas,
            },
            "plms": [p.to_dict() for p in self.plms],
            "warnings": list(self.warnings),
        }

    def dump_state(self) -> str:
        lines = [
            f"=== Campaign {self.scheme.value.upper()}: {self.n_plm} PLM, "
            f"{self.n_symbols} symbols ({self.duration_s * 1e3:.3f} ms) ===",
            f"  rates: n_rho={self.rates.n_rho:.2f} Hz n_t={self.rates.n_t:.2f} Hz "
            f"n_meas={self.rates.n_meas:.2f} Hz",
        ]
        for p in self.plms:
            lines.append(
                f"  PLM {p.index} @ {p.port}: {p.reflectogram_count} reflectograms, "
                f"SINR {p.sinr_db:.2f} dB (analytic {p.sinr_analytic_db:.2f} dB), "
                f"SIR_isi {p.sir_isi_db:.2f} dB"
            )
        for w in self.warnings:
            lines.append(f"  ! {w}")
        return "\n".join(lines)


# ============================================================================
# Ejecucion
# ============================================================================
@dataclass(frozen=True)
class _Context:
    scheme: AccessScheme
    matrix: ChannelMatrix
    grid: ChannelGrid
    noise: NoiseModel
    active: np.ndarray
    active_full: np.ndarray
    amplitude: float
    constellation: Constellation
    seed: int
    window: str | None
    keep: int
    record_transferograms: bool


def _ce_rows(x: np.ndarray, y: np.ndarray, bins: np.ndarray, weights: np.ndarray) -> np.ndarray:
    p = np.zeros_like(y)
    p[:, bins] = y[:, bins] / x[:, bins]
    return p * weights


def _make_reflectogram(ctx: _Context, p: np.ndarray, rho: np.ndarray, bins: np.ndarray) -> Reflectogram:
    return Reflectogram(
        freq=p.copy(),
        time=rho.copy(),
        method=ReflectogramMethod.CHANNEL_ESTIMATION,
        op_count=complexity(ReflectogramMethod.CHANNEL_ESTIMATION, ctx.grid.n_half).modeled_ops,
        grid=ctx.grid,
        active_bins=bins,
        window=ctx.window,
    )


def _payloads(ctx: _Context, rng: np.random.Generator, rows: int, bins: np.ndarray) -> np.ndarray:
    syms = random_symbols(rng, ctx.constellation, (rows, bins.size))
    return hs_map_batch(place_symbol_batch(syms, bins, ctx.grid.n_half, ctx.amplitude))


def _store_transferogram(ctx: _Context, stats: PlmStats, source: int, x: np.ndarray,
                         y: np.ndarray, bins: np.ndarray, weights: np.ndarray) -> None:
    stats.transferogram_count += x.shape[0]
    kept = stats.transferograms.setdefault(source, [])
    room = ctx.keep - len(kept)
    if room <= 0:
        return
    p = _ce_rows(x[:room], y[:room], bins, weights)
    rho = np.fft.ifft(p, norm="ortho", axis=1).real
    kept.extend(_make_reflectogram(ctx, p[i], rho[i], bins) for i in range(p.shape[0]))


def _links(ctx: _Context, r: int) -> list[StreamChannel]:
    """Enlaces de cada PLM transmisor hacia el receptor r."""
    return [StreamChannel(ctx.matrix.channel(u, r), ctx.grid) for u in range(ctx.scheme.n_plm)]


def _despread(block: np.ndarray, code: np.ndarray) -> np.ndarray:
    return np.einsum("c,gcb->gb", code, block) / float(code @ code)


def _run_tdma(ctx: _Context, n_symbols: int, workers: int) -> list[PlmStats]:
    scheme = ctx.scheme
    assert isinstance(scheme, TdmaScheme)
    n_plm, n_bins = scheme.n_plm, ctx.grid.n_bins
    stats = [PlmStats(u, ctx.matrix.ports[u], n_bins) for u in range(n_plm)]
    pay_rng = [substream(ctx.seed, u, 0) for u in range(n_plm)]
    noise_rng = [substream(ctx.seed, u, 1) for u in range(n_plm)]
    links = [_links(ctx, r) for r in range(n_plm)]
    weights = spectral_window(ctx.window, ctx.active_full, n_bins)
    mask = np.zeros(n_bins)
    mask[ctx.active_full] = 1.0

    for start in range(0, n_symbols, CHUNK_SYMBOLS):
        slots = np.arange(start, min(start + CHUNK_SYMBOLS, n_symbols))
        tx = np.array([scheme.transmitter(int(s)) for s in slots])
        x = np.zeros((slots.size, n_bins), dtype=complex)
        for u in range(n_plm):
            rows = tx == u
            if np.any(rows):
                x[rows] = _payloads(ctx, pay_rng[u], int(rows.sum()), ctx.active)
        noises = [gen_noise(ctx.noise, ctx.grid, noise_rng[r], size=slots.size) for r in range(n_plm)]

        def receive(r: int) -> None:
            st = stats[r]
            clean = np.zeros_like(x)
            isi = np.zeros_like(x)
            for u, link in enumerate(links[r]):
                # silent sources without ISI add nothing to r's slots
                if not (u == r or link.isi or ctx.record_transferograms):
                    continue
                sent = np.where((tx == u)[:, None], x, 0.0)
                arrived = link.apply(sent)
                clean += arrived
                if link.isi:
                    isi += arrived - link.ideal(sent)
            y = clean + noises[r]

            mine = tx == r
            if np.any(mine):
                xr = x[mine]
                st.signal += (np.abs(links[r][r].ideal(xr)) ** 2).sum(axis=0) * mask
                st.noise += (np.abs(noises[r][mine]) ** 2).sum(axis=0) * mask
                st.isi += (np.abs(isi[mine]) ** 2).sum(axis=0) * mask
                p = _ce_rows(xr, y[mine], ctx.active_full, weights)
                rho = np.fft.ifft(p, norm="ortho", axis=1).real
                st.add_rho(rho)
                room = ctx.keep - len(st.reflectograms)
                for i in range(min(room, rho.shape[0])):
                    st.reflectograms.append(_make_reflectogram(ctx, p[i], rho[i], ctx.active_full))
            if ctx.record_transferograms:
                for u in range(n_plm):
                    rows = tx == u
                    if u == r or not np.any(rows):
                        continue
                    _store_transferogram(ctx, st, u, x[rows], y[rows], ctx.active_full, weights)

        _dispatch(receive, n_plm, workers)
    return stats


def _run_fdma(ctx: _Context, n_symbols: int, workers: int) -> list[PlmStats]:
    scheme = ctx.scheme
    assert isinstance(scheme, FdmaScheme)
    n_plm, n_half, n_bins = scheme.n_plm, ctx.grid.n_half, ctx.grid.n_bins
    stats = [PlmStats(u, ctx.matrix.ports[u], n_bins) for u in range(n_plm)]
    pay_rng = [substream(ctx.seed, u, 0) for u in range(n_plm)]
    noise_rng = [substream(ctx.seed, u, 1) for u in range(n_plm)]
    links = [_links(ctx, r) for r in range(n_plm)]
    own = [scheme.active_comb(u) for u in range(n_plm)]
    own_full = [hermitian_active_set(b, n_half) for b in own]
    for u, b in enumerate(own):
        if b.size == 0:
            raise AccessError(f"PLM {u} has no active subcarrier in its comb")
    weights = [spectral_window(ctx.window, b, n_bins) for b in own_full]

    for start in range(0, n_symbols, CHUNK_SYMBOLS):
        rows = min(CHUNK_SYMBOLS, n_symbols - start)
        xs = [_payloads(ctx, pay_rng[u], rows, own[u]) for u in range(n_plm)]
        noises = [gen_noise(ctx.noise, ctx.grid, noise_rng[r], size=rows) for r in range(n_plm)]

        def receive(r: int) -> None:
            st = stats[r]
            bins = own_full[r]
            mask = np.zeros(n_bins)
            mask[bins] = 1.0
            clean = np.zeros((rows, n_bins), dtype=complex)
            isi = np.zeros_like(clean)
            interference = np.zeros_like(clean)
            for u, link in enumerate(links[r]):
                arrived = link.apply(xs[u])
                clean += arrived
                if link.isi:
                    isi += arrived - link.ideal(xs[u])
                if u != r:
                    interference += link.ideal(xs[u])
            signal = links[r][r].ideal(xs[r])
            y = clean + noises[r]
            st.signal += (np.abs(signal) ** 2).sum(axis=0) * mask
            st.noise += (np.abs(noises[r]) ** 2).sum(axis=0) * mask
            st.interference += (np.abs(interference) ** 2).sum(axis=0) * mask
            st.isi += (np.abs(isi) ** 2).sum(axis=0) * mask
            p = _ce_rows(xs[r], y, bins, weights[r])
            rho = fdma_reflectogram(fdma_fold(p), scheme.comb(r), n_half, n_plm)
            st.add_rho(rho)
            room = ctx.keep - len(st.reflectograms)
            for i in range(min(room, rows)):
                st.reflectograms.append(_make_reflectogram(ctx, p[i], rho[i], bins))
            if ctx.record_transferograms:
                for u in range(n_plm):
                    if u != r:
                        _store_transferogram(ctx, st, u, xs[u], y, own_full[u], weights[u])

        _dispatch(receive, n_plm, workers)
    return stats


def _run_cdma(ctx: _Context, n_symbols: int, workers: int) -> list[PlmStats]:
    scheme = ctx.scheme
    assert isinstance(scheme, CdmaScheme)
    n_plm, n_bins = scheme.n_plm, ctx.grid.n_bins
    codes = scheme.codes
    stats = [PlmStats(u, ctx.matrix.ports[u], n_bins) for u in range(n_plm)]
    pay_rng = [substream(ctx.seed, u, 0) for u in range(n_plm)]
    noise_rng = [substream(ctx.seed, u, 1) for u in range(n_plm)]
    links = [_links(ctx, r) for r in range(n_plm)]
    weights = spectral_window(ctx.window, ctx.active_full, n_bins)
    mask = np.zeros(n_bins)
    mask[ctx.active_full] = 1.0
    n_groups = n_symbols // n_plm
    chunk = max(1, CHUNK_SYMBOLS // n_plm)

    for start in range(0, n_groups, chunk):
        groups = min(chunk, n_groups - start)
        xs = [_payloads(ctx, pay_rng[u], groups, ctx.active) for u in range(n_plm)]
        # (groups, chips, bins): chips consecutivos en el tiempo
        chips = [codes[u][None, :, None] * xs[u][:, None, :] for u in range(n_plm)]
        noises = [
            gen_noise(ctx.noise, ctx.grid, noise_rng[r], size=groups * n_plm).reshape(groups, n_plm, n_bins)
            for r in range(n_plm)
        ]

        def receive(r: int) -> None:
            st = stats[r]
            code = codes[r]
            arriving, ideal = [], []
            isi_chips = np.zeros((groups, n_plm, n_bins), dtype=complex)
            for u, link in enumerate(links[r]):
                got = link.apply(chips[u].reshape(-1, n_bins)).reshape(chips[u].shape)
                expected = link.ideal(chips[u])
                if link.isi:
                    isi_chips += got - expected
                arriving.append(got)
                ideal.append(expected)
            signal = _despread(ideal[r], code)
            interference = sum(
                (_despread(ideal[u], code) for u in range(n_plm) if u != r),
                start=np.zeros_like(signal),
            )
            isi = _despread(isi_chips, code)
            noise = _despread(noises[r], code)
            y = signal + interference + isi + noise
            st.signal += (np.abs(signal) ** 2).sum(axis=0) * mask
            st.noise += (np.abs(noise) ** 2).sum(axis=0) * mask
            st.interference += (np.abs(interference) ** 2).sum(axis=0) * mask
            st.isi += (np.abs(isi) ** 2).sum(axis=0) * mask
            p = _ce_rows(xs[r], y, ctx.active_full, weights)
            rho = np.fft.ifft(p, norm="ortho", axis=1).real
            st.add_rho(rho)
            room = ctx.keep - len(st.reflectograms)
            for i in range(min(room, groups)):
                st.reflectograms.append(_make_reflectogram(ctx, p[i], rho[i], ctx.active_full))
            if ctx.record_transferograms:
                received = sum(arriving) + noises[r]
                for u in range(n_plm):
                    if u == r:
                        continue
                    _store_transferogram(ctx, st, u, xs[u], _despread(received, codes[u]), ctx.active_full, weights)

        _dispatch(receive, n_plm, workers)
    return stats


def _dispatch(fn, n_plm: int, workers: int) -> None:
    if workers <= 1 or n_plm == 1:
        for r in range(n_plm):
            fn(r)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        list(pool.map(fn, range(n_plm)))


def _analytic_sinr(ctx: _Context, u: int, bins: np.ndarray) -> float:
    sigma2 = ctx.noise.variances(ctx.grid)
    if ctx.scheme.scheme_type is SchemeType.CDMA:
        sigma2 = decoded_noise_variance(sigma2, ctx.scheme.n_plm, "analytic")
    h = ctx.matrix.reflection(u).freq_response
    return sinr(ctx.amplitude**2 * np.abs(h) ** 2, sigma2, bins=bins)


def run_campaign(
    scheme: AccessScheme | SchemeType | str,
    net: NetworkModel,
    plm_ports: list[str],
    grid: ChannelGrid,
    noise: NoiseModel,
    duration_s: float | None = None,
    *,
    n_symbols: int | None = None,
    active_bins: np.ndarray | None = None,
    constellation: Constellation | None = None,
    tx_psd_dbm_hz: float = DEFAULT_TX_PSD_DBM_HZ,
    seed: int = 0,
    shared_channel: bool = False,
    window: str | None = None,
    keep_reflectograms: int = DEFAULT_KEEP,
    record_transferograms: bool = False,
    workers: int = 1,
    matrix: ChannelMatrix | None = None,
    slot_order: list[int] | None = None,
) -> CampaignResult:
    """
    Ejecuta una campana durante `duration_s` segundos (o `n_symbols`
    simbolos OFDM) y devuelve estadisticas por PLM.
    """
    n_plm = len(plm_ports)
    if n_plm < 1:
        raise AccessError("at least one PLM port is required")
    if active_bins is None:
        active_bins = np.arange(1, grid.n_half)
    active = np.unique(np.asarray(active_bins, dtype=int))
    if not isinstance(scheme, AccessScheme):
        scheme = create_scheme(scheme, n_plm, grid, active, slot_order)
    if scheme.n_plm != n_plm:
        raise AccessError(f"scheme has {scheme.n_plm} PLM but {n_plm} ports were given")

    t_symb = grid.symbol_duration
    if n_symbols is None:
        if duration_s is None or duration_s <= 0:
            raise AccessError("give a positive duration_s or n_symbols")
        n_symbols = int(np.floor(duration_s / t_symb + 1e-9))
    if n_symbols < scheme.symbols_per_reflectogram:
        raise AccessError(
            f"{n_symbols} symbols cannot hold one {scheme.name} reflectogram "
            f"({scheme.symbols_per_reflectogram} symbols needed)"
        )

    if matrix is None:
        matrix = build_channel_matrix(net, list(plm_ports), grid, shared_channel)
    warnings = list(dict.fromkeys(matrix.warnings))
    for u in range(n_plm):
        lh = matrix.reflection(u).channel_len
        if grid.cp_len < lh:
            warnings.append(f"PLM {u}: ISI regime, L_cp={grid.cp_len} < L_h={lh} (time-domain path)")

    ctx = _Context(
        scheme=scheme,
        matrix=matrix,
        grid=grid,
        noise=noise,
        active=active,
        active_full=hermitian_active_set(active, grid.n_half),
        amplitude=float(np.sqrt(psd_to_bin_power(tx_psd_dbm_hz, grid))),
        constellation=constellation or Constellation.of("bpsk"),
        seed=seed,
        window=window,
        keep=keep_reflectograms,
        record_transferograms=record_transferograms,
    )
    log.info(
        "Campaign %s | n_plm=%d symbols=%d seed=%d shared=%s",
        scheme.name, n_plm, n_symbols, seed, shared_channel,
    )

    runner = {
        SchemeType.TDMA: _run_tdma,
        SchemeType.FDMA: _run_fdma,
        SchemeType.CDMA: _run_cdma,
    }[scheme.scheme_type]
    stats = runner(ctx, n_symbols, workers)

    for st in stats:
        st.sinr_db = sinr(st.signal, st.noise, st.interference)
        st.sir_isi_db = sinr(st.signal, st.isi)
        if isinstance(scheme, FdmaScheme):
            bins = hermitian_active_set(scheme.active_comb(st.index), grid.n_half)
        else:
            bins = ctx.active_full
        st.sinr_analytic_db = _analytic_sinr(ctx, st.index, bins)

    for w in warnings:
        log.warning(w)
    result = CampaignResult(
        scheme=scheme.scheme_type,
        n_plm=n_plm,
        n_symbols=n_symbols,
        duration_s=n_symbols * t_symb,
        rates=scheme.rates(),
        plms=stats,
        warnings=warnings,
    )
    log.info("%s", result.dump_state())
    return result
