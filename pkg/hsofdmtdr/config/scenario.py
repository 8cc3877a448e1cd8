"""
hsofdmtdr.config.scenario - Escenario de simulacion en JSON.

Un escenario fija la banda, la red, los PLM, el esquema de acceso, el
ruido y los parametros de procesado. Se lee de un archivo JSON, se
valida campo a campo (ConfigError con la ruta del campo) y se vuelve a
escribir de forma normalizada: from_dict(to_dict(c)) == c.

Ejemplo minimo:
    {"preset": "fcc", "network": "mv_line", "scheme": "fdma", "seed": 7}
"""

from __future__ import annotations

import dataclasses
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from hsofdmtdr.config.parsing import format_bin_range, parse_bin_range, parse_quantity
from hsofdmtdr.config.presets import RegulatoryPreset, get_preset
from hsofdmtdr.core.errors import ConfigError, TdrError
from hsofdmtdr.core.grid import ChannelGrid
from hsofdmtdr.network.cable import VELOCITY_PRESETS
from hsofdmtdr.network.presets import NETWORK_PRESETS
from hsofdmtdr.network.topology import NetworkModel
from hsofdmtdr.txrx.constellation import Constellation
from hsofdmtdr.txrx.noise import (
    DEFAULT_AMPLITUDE_DB,
    DEFAULT_DECAY_PER_KHZ,
    DEFAULT_FLOOR_DBM_HZ,
    NoiseModel,
    default_noise_psd,
)

log = logging.getLogger(__name__)

DEFAULT_SYMBOLS = 10_000


@dataclass(frozen=True)
class NoiseSettings:
    enabled: bool = True
    floor_dbm_hz: float = DEFAULT_FLOOR_DBM_HZ
    amplitude_db: float = DEFAULT_AMPLITUDE_DB
    decay_per_khz: float = DEFAULT_DECAY_PER_KHZ

    def model(self) -> NoiseModel:
        floor, amp, decay = self.floor_dbm_hz, self.amplitude_db, self.decay_per_khz

        def psd(f: np.ndarray) -> np.ndarray:
            return default_noise_psd(f, floor, amp, decay)

        return NoiseModel(psd=psd, enabled=self.enabled)


@dataclass(frozen=True)
class ScenarioConfig:
    """Escenario completo. Los campos None toman el valor del preset."""

    preset: str = "fcc"
    cp: str = "standard"
    cp_len: int | None = None
    sample_rate_hz: float | None = None
    fft_size: int | None = None
    active_subcarriers: str | None = None
    occupied_bandwidth_hz: float | None = None
    modulation: str = "bpsk"
    method: str = "channel_estimation"
    window: str | None = None
    network: Any = "mv_line"
    plm_ports: tuple[str, ...] | None = None
    slot_order: tuple[int, ...] | None = None
    plm_impedance_ohm: float = 50.0
    cable: str = "mv"
    velocity_m_s: float | None = None
    scheme: str = "tdma"
    shared_channel: bool = False
    n_symbols: int | None = None
    duration_s: float | None = None
    tx_psd_dbm_hz: float = -36.81
    noise: NoiseSettings = field(default_factory=NoiseSettings)
    seed: int = 0
    eta: int = 1
    alpha: float = 0.9
    target_d_max_m: float = 3000.0
    coherence_time_s: float | None = None
    keep_reflectograms: int = 8
    record_transferograms: bool = False
    workers: int = 1

    # ------------------------------------------------------------------
    # Serializacion
    # ------------------------------------------------------------------
    @classmethod
    def from_dict(cls, data: dict) -> ScenarioConfig:
        if not isinstance(data, dict):
            raise ConfigError("scenario must be a JSON object")
        known = {f.name: f for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - set(known))
        if unknown:
            raise ConfigError(f"unknown keys {unknown}", field=unknown[0])
        values: dict[str, Any] = {}
        for name, raw in data.items():
            values[name] = _coerce(name, raw)
        cfg = cls(**values)
        cfg.validate()
        return cfg

    def to_dict(self) -> dict:
        out = dataclasses.asdict(self)
        for key in ("plm_ports", "slot_order"):
            if out[key] is not None:
                out[key] = list(out[key])
        return out

    def with_overrides(self, **changes: Any) -> ScenarioConfig:
        changes = {k: v for k, v in changes.items() if v is not None}
        cfg = dataclasses.replace(self, **{k: _coerce(k, v) for k, v in changes.items()})
        cfg.validate()
        return cfg

    # ------------------------------------------------------------------
    # Validacion
    # ------------------------------------------------------------------
    def validate(self) -> None:
        try:
            preset = self.regulatory_preset
            grid = self.build_grid()
            first, last = self.active_range()
            if last > grid.n_half:
                raise ConfigError(
                    f"active range {first}-{last} exceeds N={grid.n_half}",
                    field="active_subcarriers",
                )
            Constellation.of(self.modulation)
            self.velocity()
            if self.eta < 1:
                raise ConfigError("eta must be >= 1", field="eta")
            if not 0.0 <= self.alpha <= 1.0:
                raise ConfigError("alpha must lie in [0, 1]", field="alpha")
            if self.target_d_max_m <= 0:
                raise ConfigError("target_d_max_m must be > 0", field="target_d_max_m")
            if self.workers < 1:
                raise ConfigError("workers must be >= 1", field="workers")
            if self.keep_reflectograms < 0:
                raise ConfigError("keep_reflectograms must be >= 0", field="keep_reflectograms")
            if self.scheme.lower() not in ("tdma", "fdma", "cdma"):
                raise ConfigError(f"unknown scheme {self.scheme!r}", field="scheme")
            if self.cp not in ("standard", "long"):
                raise ConfigError(f"cp must be 'standard' or 'long', got {self.cp!r}", field="cp")
            if self.method not in ("channel_estimation", "pulse_compression"):
                raise ConfigError(f"unknown method {self.method!r}", field="method")
            if self.slot_order is not None:
                n_plm = len(self.ports())
                if sorted(self.slot_order) != list(range(n_plm)):
                    raise ConfigError(
                        f"slot_order must be a permutation of 0..{n_plm - 1}, got {list(self.slot_order)}",
                        field="slot_order",
                    )
        except ConfigError:
            raise
        except TdrError as exc:
            raise ConfigError(str(exc)) from exc
        log.debug("Scenario validated: preset=%s scheme=%s", preset.name, self.scheme)

    # ------------------------------------------------------------------
    # Constructores
    # ------------------------------------------------------------------
    @property
    def regulatory_preset(self) -> RegulatoryPreset:
        return get_preset(self.preset)

    def build_grid(self) -> ChannelGrid:
        preset = self.regulatory_preset
        fft = self.fft_size or preset.fft_size
        if fft < 2 or fft % 2:
            raise ConfigError(f"fft_size must be even and >= 2, got {fft}", field="fft_size")
        cp = self.cp_len if self.cp_len is not None else preset.cp_len(self.cp)
        return ChannelGrid(fft // 2, self.sample_rate_hz or preset.sample_rate_hz, cp)

    def active_range(self) -> tuple[int, int]:
        if self.active_subcarriers is None:
            return self.regulatory_preset.active_range
        return parse_bin_range(self.active_subcarriers, field="active_subcarriers")

    def active_bins(self) -> np.ndarray:
        first, last = self.active_range()
        return np.arange(first, last + 1)

    def occupied_bandwidth(self) -> float:
        return self.occupied_bandwidth_hz or self.regulatory_preset.bandwidth_hz

    def velocity(self) -> float:
        if self.velocity_m_s is not None:
            if self.velocity_m_s <= 0:
                raise ConfigError("velocity_m_s must be > 0", field="velocity_m_s")
            return self.velocity_m_s
        try:
            return VELOCITY_PRESETS[self.cable]
        except KeyError:
            raise ConfigError(f"unknown cable {self.cable!r}", field="cable") from None

    def build_network(self) -> NetworkModel:
        try:
            if isinstance(self.network, str):
                if self.network not in NETWORK_PRESETS:
                    raise ConfigError(
                        f"unknown network preset {self.network!r} "
                        f"(known: {', '.join(sorted(NETWORK_PRESETS))})",
                        field="network",
                    )
                factory, _ = NETWORK_PRESETS[self.network]
                return factory(plm_impedance=self.plm_impedance_ohm)
            return NetworkModel.from_dict(self.network, plm_impedance=self.plm_impedance_ohm)
        except ConfigError:
            raise
        except TdrError as exc:
            raise ConfigError(str(exc), field="network") from exc

    def ports(self) -> list[str]:
        if self.plm_ports is not None:
            return list(self.plm_ports)
        if isinstance(self.network, str) and self.network in NETWORK_PRESETS:
            return list(NETWORK_PRESETS[self.network][1])
        return [self.network.get("name", "root")] if isinstance(self.network, dict) else []

    def symbol_count(self, grid: ChannelGrid) -> int:
        if self.n_symbols is not None:
            return self.n_symbols
        if self.duration_s is not None:
            return int(np.floor(self.duration_s / grid.symbol_duration + 1e-9))
        return DEFAULT_SYMBOLS

    def constellation(self) -> Constellation:
        return Constellation.of(self.modulation)


# ============================================================================
# Coercion de campos
# ============================================================================
def _expect(name: str, ok: bool, what: str, raw: Any) -> None:
    if not ok:
        raise ConfigError(f"expected {what}, got {raw!r}", field=name)


def _coerce(name: str, raw: Any) -> Any:
    if raw is None:
        if name in _NULLABLE:
            return None
        raise ConfigError("must not be null", field=name)
    if name == "noise":
        if isinstance(raw, NoiseSettings):
            return raw
        _expect(name, isinstance(raw, dict), "an object", raw)
        allowed = {f.name for f in dataclasses.fields(NoiseSettings)}
        extra = sorted(set(raw) - allowed)
        if extra:
            raise ConfigError(f"unknown keys {extra}", field=f"noise.{extra[0]}")
        vals = {}
        for k, v in raw.items():
            if k == "enabled":
                _expect(f"noise.{k}", isinstance(v, bool), "true/false", v)
                vals[k] = v
            else:
                vals[k] = parse_quantity(v, field=f"noise.{k}")
        return NoiseSettings(**vals)
    if name in _BOOL:
        _expect(name, isinstance(raw, bool), "true/false", raw)
        return raw
    if name in _INT:
        _expect(name, isinstance(raw, int) and not isinstance(raw, bool), "an integer", raw)
        return raw
    if name in _FLOAT:
        return parse_quantity(raw, field=name)
    if name == "plm_ports":
        _expect(name, isinstance(raw, (list, tuple)) and all(isinstance(p, str) for p in raw),
                "a list of node names", raw)
        return tuple(raw)
    if name == "slot_order":
        ok = isinstance(raw, (list, tuple)) and all(isinstance(i, int) and not isinstance(i, bool) for i in raw)
        _expect(name, ok, "a list of PLM indices", raw)
        return tuple(raw)
    if name == "network":
        _expect(name, isinstance(raw, (str, dict)), "a preset name or a node object", raw)
        return raw
    if name == "active_subcarriers":
        first, last = parse_bin_range(raw, field=name)
        return format_bin_range(first, last)
    _expect(name, isinstance(raw, str), "a string", raw)
    return raw


_NULLABLE = {
    "cp_len", "sample_rate_hz", "fft_size", "active_subcarriers", "occupied_bandwidth_hz",
    "window", "plm_ports", "slot_order", "velocity_m_s", "n_symbols", "duration_s", "coherence_time_s",
}
_BOOL = {"shared_channel", "record_transferograms"}
_INT = {"cp_len", "fft_size", "n_symbols", "seed", "eta", "keep_reflectograms", "workers"}
_FLOAT = {
    "sample_rate_hz", "occupied_bandwidth_hz", "plm_impedance_ohm", "velocity_m_s",
    "duration_s", "tx_psd_dbm_hz", "alpha", "target_d_max_m", "coherence_time_s",
}


# ============================================================================
# Archivos
# ============================================================================
def load_config(path: str | Path) -> ScenarioConfig:
    """Lee y valida un escenario JSON."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(exc.msg, line=exc.lineno, column=exc.colno) from None
    cfg = ScenarioConfig.from_dict(data)
    log.info("Loaded scenario %s (preset=%s, scheme=%s)", path, cfg.preset, cfg.scheme)
    return cfg


def dump_config(cfg: ScenarioConfig) -> str:
    return json.dumps(cfg.to_dict(), indent=2, sort_keys=True)
