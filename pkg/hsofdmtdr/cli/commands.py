"""
hsofdmtdr.cli.commands - Dispatcher de subcomandos.

Mapea los nombres de subcomando ("presets", "param-report", "simulate",
"sweep") a funciones que reciben los argumentos ya parseados y
devuelven un codigo de salida.

El CommandDispatcher es el registro central:
    dispatcher = CommandDispatcher()
    build_default_commands(dispatcher)
    code = dispatcher.execute("simulate", args)

Tambien se puede usar como decorador:
    @dispatcher.command("presets", category="info")
    def presets(args):
        ...

Codigos de salida: 0 correcto, 1 error de configuracion, 2 cualquier
otro error del simulador (invariante rota, parametros imposibles).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
import time
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from hsofdmtdr.access.campaign import build_channel_matrix, run_campaign
from hsofdmtdr.access.schemes import SchemeType
from hsofdmtdr.cli.artifacts import ArtifactWriter
from hsofdmtdr.cli.sweeps import (
    COMPLEXITY_COLUMNS,
    DEFAULT_N_VALUES,
    DEFAULT_PAYLOADS,
    DMAX_COLUMNS,
    RATE_COLUMNS,
    SIDELOBE_COLUMNS,
    complexity_series,
    dmax_series,
    rate_series,
    sidelobe_series,
)
from hsofdmtdr.config.parsing import parse_int_list
from hsofdmtdr.config.presets import preset_table
from hsofdmtdr.config.scenario import ScenarioConfig, load_config
from hsofdmtdr.core.errors import ConfigError, TdrError
from hsofdmtdr.core.grid import ChannelGrid
from hsofdmtdr.core.spectral import dft, reconstruct
from hsofdmtdr.network.cable import VELOCITY_PRESETS
from hsofdmtdr.network.channel import ReflectionChannel, reflection_channel
from hsofdmtdr.processing.metrics import (
    ParamReport,
    frequency_correlation,
    max_unambiguous_range,
    range_resolution,
    validate_params,
)
from hsofdmtdr.processing.reflectogram import (
    ReflectogramMethod,
    channel_estimate,
    complexity,
    hermitian_active_set,
    pulse_compression,
)
from hsofdmtdr.txrx.constellation import random_symbols
from hsofdmtdr.txrx.link import channel_pass
from hsofdmtdr.txrx.mapping import build_frame, place_symbols
from hsofdmtdr.txrx.noise import fdma_power_dbm, substream, transmit_power_dbm

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_FAILURE = 2

DEFAULT_OUT = "results"

# Comandos: reciben el Namespace de argparse, devuelven codigo o None
CommandFn = Callable[[argparse.Namespace], int | None]


@dataclass(frozen=True, slots=True)
class Command:
    """Metadata for a registered command."""

    name: str
    fn: CommandFn
    description: str
    category: str


class CommandDispatcher:
    """Registry that maps subcommand names to callables."""

    def __init__(self) -> None:
        self._commands: dict[str, Command] = {}

    @property
    def count(self) -> int:
        return len(self._commands)

    @property
    def command_names(self) -> list[str]:
        return sorted(self._commands.keys())

    def register(
        self,
        name: str,
        fn: CommandFn,
        description: str = "",
        category: str = "general",
    ) -> None:
        """Register a command by name. An existing one is replaced."""
        if name in self._commands:
            log.info("Command replaced: %s", name)
        self._commands[name] = Command(name=name, fn=fn, description=description, category=category)
        log.debug("Command registered: %s (%s)", name, category)

    def unregister(self, name: str) -> bool:
        return self._commands.pop(name, None) is not None

    def get(self, name: str) -> Command | None:
        return self._commands.get(name)

    def has(self, name: str) -> bool:
        return name in self._commands

    def command(
        self,
        name: str,
        description: str = "",
        category: str = "general",
    ) -> Callable[[CommandFn], CommandFn]:
        """Decorator to register a function as a command."""

        def decorator(fn: CommandFn) -> CommandFn:
            self.register(name, fn, description=description, category=category)
            return fn

        return decorator

    def execute(self, name: str, args: argparse.Namespace) -> int:
        """
        Run a command and translate failures into exit codes.

        Errors are reported as one JSON object on stderr.
        """
        cmd = self._commands.get(name)
        if cmd is None:
            log.warning("Unknown command: %s", name)
            _report_error({"error": "usage", "message": f"unknown command {name!r}"})
            return EXIT_FAILURE

        log.debug("Executing command: %s", name)
        started = time.perf_counter()
        try:
            code = cmd.fn(args)
        except ConfigError as exc:
            log.error("Configuration error in %s: %s", name, exc)
            _report_error(exc.to_dict())
            return EXIT_CONFIG
        except TdrError as exc:
            log.error("Command %s failed: %s", name, exc)
            _report_error({"error": type(exc).__name__, "message": str(exc)})
            return EXIT_FAILURE
        except OSError as exc:
            log.error("I/O error in %s: %s", name, exc)
            _report_error({"error": "OSError", "message": str(exc)})
            return EXIT_FAILURE
        log.info("Command %s finished in %.3f s", name, time.perf_counter() - started)
        return EXIT_OK if code is None else int(code)

    def list_commands(self, category: str | None = None) -> list[Command]:
        commands = list(self._commands.values())
        if category is not None:
            commands = [c for c in commands if c.category == category]
        return sorted(commands, key=lambda c: c.name)

    def dump_state(self) -> str:
        lines = [f"=== CommandDispatcher: {len(self._commands)} commands ===", ""]
        for cmd in self.list_commands():
            desc = f"  {cmd.description}" if cmd.description else ""
            lines.append(f"  [{cmd.category}] {cmd.name}{desc}")
        return "\n".join(lines)


def _report_error(payload: dict) -> None:
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")


# ============================================================================
# Helpers comunes
# ============================================================================
def load_scenario(args: argparse.Namespace) -> ScenarioConfig:
    """Escenario del archivo (o por defecto) con los flags de la CLI encima."""
    path = getattr(args, "config", None)
    cfg = load_config(path) if path else ScenarioConfig()
    return cfg.with_overrides(
        seed=getattr(args, "seed", None),
        eta=getattr(args, "eta", None),
        alpha=getattr(args, "alpha", None),
    )


def _dense(rho: np.ndarray, eta: int) -> np.ndarray:
    if eta == 1 or rho.size % 2:
        return np.asarray(rho, dtype=float)
    return reconstruct(dft(rho), eta)


def scenario_channel(cfg: ScenarioConfig, grid: ChannelGrid, port: str) -> ReflectionChannel:
    channel = reflection_channel(cfg.build_network(), grid, port)
    if cfg.coherence_time_s is not None:
        channel = dataclasses.replace(channel, coherence_time=cfg.coherence_time_s)
    return channel


def parameter_report(cfg: ScenarioConfig) -> tuple[ParamReport, ReflectionChannel, dict]:
    """Informe de parametrizacion del escenario y tabla de alcance por cable."""
    grid = cfg.build_grid()
    ports = cfg.ports()
    if not ports:
        raise ConfigError("no PLM port configured", field="plm_ports")
    channel = scenario_channel(cfg, grid, ports[0])
    report = validate_params(
        grid, channel, cfg.target_d_max_m, cfg.velocity(), cfg.alpha, cfg.occupied_bandwidth()
    )
    preset = cfg.regulatory_preset
    table = {}
    for name, v in sorted(VELOCITY_PRESETS.items()):
        table[name] = {
            "velocity_m_s": v,
            "range_resolution_m": range_resolution(v, cfg.occupied_bandwidth()),
            "d_max_standard_m": max_unambiguous_range(v, grid.sample_period, grid.n_half, preset.cp_standard),
            "d_max_long_m": (
                None if preset.cp_long is None
                else max_unambiguous_range(v, grid.sample_period, grid.n_half, preset.cp_long)
            ),
        }
    return report, channel, table


def _probe_reflectogram(cfg: ScenarioConfig, grid: ChannelGrid, channel: ReflectionChannel, u: int):
    """
    Un simbolo por el enlace completo (con CP) y el metodo configurado.

    Un simbolo previo alimenta la cola del canal: en regimen ISI el
    reflectograma incluye su interferencia.
    """
    active = cfg.active_bins()
    rng = substream(cfg.seed, u, 2)
    frames = []
    for _ in range(2):
        syms = random_symbols(rng, cfg.constellation(), active.size)
        frames.append(build_frame(place_symbols(syms, active, grid.n_half), grid))
    previous, frame = frames
    noise = cfg.noise.model()
    rx = channel_pass(frame, channel, noise, substream(cfg.seed, u, 3), previous=previous)
    method = ReflectogramMethod.parse(cfg.method)
    if method is ReflectogramMethod.PULSE_COMPRESSION:
        return pulse_compression(frame.time, rx.time, cfg.window, grid)
    return channel_estimate(
        frame.spectrum, rx.spectrum, hermitian_active_set(active, grid.n_half), cfg.window, grid
    )


# ============================================================================
# Subcomandos
# ============================================================================
def build_default_commands(dispatcher: CommandDispatcher) -> None:
    """Register the four CLI subcommands."""

    @dispatcher.command("presets", description="List the regulatory band presets", category="info")
    def presets(args: argparse.Namespace) -> int:
        table = preset_table()
        for row in table:
            cp_long = row["cp_long"] if row["cp_long"] is not None else "not defined"
            print(
                f"{row['name']:<8s} {row['band_khz'][0]:g}-{row['band_khz'][1]:g} kHz  "
                f"B={row['bandwidth_hz'] / 1e3:g} kHz  Fs={row['sample_rate_hz'] / 1e6:g} MHz  "
                f"FFT={row['fft_size']}  active={row['active_subcarriers']} "
                f"({row['n_active']})  L_cp={row['cp_standard']}/{cp_long}"
            )
        if getattr(args, "out", None):
            writer = ArtifactWriter(args.out)
            writer.write_json("presets.json", table)
            writer.write_manifest("presets", None, None)
        return EXIT_OK

    @dispatcher.command("param-report", description="Range figures and parameter checks", category="analysis")
    def param_report(args: argparse.Namespace) -> int:
        cfg = load_scenario(args)
        report, channel, table = parameter_report(cfg)
        print(
            f"delta={report.range_resolution_m:.2f} m  d_max={report.d_max_m:.2f} m  "
            f"B_c={report.coherence_bandwidth_hz:.1f} Hz"
        )
        for c in report.constraints:
            mark = "ok" if c.satisfied else "FAIL"
            print(f"  [{mark:>4s}] {c.name}: {c.actual:.6g} vs {c.required:.6g} {c.unit}")
        for name, row in table.items():
            print(f"  {name}: delta={row['range_resolution_m']:.2f} m  d_max={row['d_max_standard_m']:.2f} m")
        if getattr(args, "out", None):
            writer = ArtifactWriter(args.out)
            writer.write_json("param_report.json", {"report": report.to_dict(), "cables": table})
            _write_correlation(writer, channel, cfg.build_grid())
            writer.write_manifest("param-report", cfg.to_dict(), cfg.seed)
        return EXIT_OK

    @dispatcher.command("simulate", description="Run a multi-PLM measurement campaign", category="simulation")
    def simulate(args: argparse.Namespace) -> int:
        cfg = load_scenario(args)
        writer = ArtifactWriter(getattr(args, "out", None) or DEFAULT_OUT)
        run_simulation(cfg, writer)
        print(f"Artifacts written to {writer.root}")
        return EXIT_OK

    @dispatcher.command("sweep", description="Figure data series (complexity, sidelobes, range, rates)",
                        category="simulation")
    def sweep(args: argparse.Namespace) -> int:
        cfg = load_scenario(args)
        n_values = (
            parse_int_list(args.n_values, field="--n-values")
            if getattr(args, "n_values", None) else list(DEFAULT_N_VALUES)
        )
        payloads = getattr(args, "payloads", None) or DEFAULT_PAYLOADS
        eta = getattr(args, "eta", None) or 16
        writer = ArtifactWriter(getattr(args, "out", None) or DEFAULT_OUT)
        run_sweep(cfg, writer, n_values, payloads, eta)
        print(f"Sweep series written to {writer.root}")
        return EXIT_OK


def _write_correlation(writer: ArtifactWriter, channel: ReflectionChannel, grid: ChannelGrid) -> None:
    r = np.abs(frequency_correlation(channel.one_sided()))
    norm = r / r[0] if r[0] > 0 else r
    rows = ((m, m * grid.delta_f, float(norm[m])) for m in range(r.size))
    writer.write_csv("coherence_correlation.csv", ("shift", "shift_hz", "correlation"), rows)


# ============================================================================
# Ejecuciones
# ============================================================================
def run_simulation(cfg: ScenarioConfig, writer: ArtifactWriter) -> dict:
    """Campana completa del escenario; devuelve el resumen escrito."""
    grid = cfg.build_grid()
    net = cfg.build_network()
    ports = cfg.ports()
    velocity = cfg.velocity()
    report, channel, _ = parameter_report(cfg)

    matrix = build_channel_matrix(net, ports, grid, cfg.shared_channel)
    n_symbols = cfg.symbol_count(grid)
    result = run_campaign(
        cfg.scheme,
        net,
        ports,
        grid,
        cfg.noise.model(),
        n_symbols=n_symbols,
        active_bins=cfg.active_bins(),
        constellation=cfg.constellation(),
        tx_psd_dbm_hz=cfg.tx_psd_dbm_hz,
        seed=cfg.seed,
        shared_channel=cfg.shared_channel,
        window=cfg.window,
        keep_reflectograms=cfg.keep_reflectograms,
        record_transferograms=cfg.record_transferograms,
        workers=cfg.workers,
        matrix=matrix,
        slot_order=None if cfg.slot_order is None else list(cfg.slot_order),
    )
    log.info("%s", result.dump_state())

    for st in result.plms:
        for k, refl in enumerate(st.reflectograms):
            writer.write_reflectogram(
                f"reflectograms/plm{st.index}_{k}.csv",
                _dense(refl.time, cfg.eta), grid.sample_period, velocity, cfg.eta,
            )
        mean = st.mean_reflectogram
        if mean is not None:
            writer.write_reflectogram(
                f"reflectograms/plm{st.index}_mean.csv",
                _dense(mean, cfg.eta), grid.sample_period, velocity, cfg.eta,
            )
        for source, kept in sorted(st.transferograms.items()):
            for k, refl in enumerate(kept):
                writer.write_reflectogram(
                    f"transferograms/plm{st.index}_from{source}_{k}.csv",
                    _dense(refl.time, cfg.eta), grid.sample_period, velocity, cfg.eta,
                )

    method = ReflectogramMethod.parse(cfg.method)
    for u, port in enumerate(ports):
        extra = _probe_reflectogram(cfg, grid, matrix.reflection(u), u)
        writer.write_reflectogram(
            f"probe/plm{u}_{method.value}.csv",
            _dense(extra.time, cfg.eta), grid.sample_period, velocity, cfg.eta,
        )

    n_active = cfg.active_bins().size
    summary = {
        "campaign": result.to_dict(),
        "sinr_db": result.sinr_table,
        "sinr_analytic_db": result.analytic_sinr_table,
        "sir_isi_db": result.isi_table,
        "power_budget_dbm": {
            "per_plm": transmit_power_dbm(cfg.tx_psd_dbm_hz, n_active, grid.delta_f),
            "fdma_per_plm": (
                fdma_power_dbm(cfg.tx_psd_dbm_hz, n_active, grid.delta_f, len(ports))
                if result.scheme is SchemeType.FDMA else None
            ),
        },
        "param_report": report.to_dict(),
        "grid": {
            "n_half": grid.n_half,
            "sample_rate_hz": grid.sample_rate,
            "cp_len": grid.cp_len,
            "delta_f_hz": grid.delta_f,
            "symbol_duration_s": grid.symbol_duration,
            "channel_len": [matrix.reflection(u).channel_len for u in range(len(ports))],
        },
    }
    writer.write_json("summary.json", summary)
    writer.write_json("complexity.json", {
        m.value: {"modeled_ops": complexity(m, grid.n_half).modeled_ops, "fft_size": grid.n_bins}
        for m in ReflectogramMethod
    })
    _write_correlation(writer, channel, grid)
    writer.write_manifest("simulate", cfg.to_dict(), cfg.seed)
    return summary


def run_sweep(
    cfg: ScenarioConfig,
    writer: ArtifactWriter,
    n_values: list[int],
    payloads: int,
    eta: int,
) -> None:
    grid = cfg.build_grid()
    preset = cfg.regulatory_preset
    cp_values = [preset.cp_standard] + ([preset.cp_long] if preset.cp_long is not None else [])
    cp_axis = sorted(set(range(0, 2 * grid.n_half + 33, 16)) | set(cp_values))

    writer.write_csv("complexity.csv", COMPLEXITY_COLUMNS, complexity_series(n_values))
    writer.write_csv("sidelobes.csv", SIDELOBE_COLUMNS, sidelobe_series(n_values, payloads, cfg.seed, eta))
    writer.write_csv("dmax.csv", DMAX_COLUMNS, dmax_series(grid, dict(VELOCITY_PRESETS), cp_axis))
    writer.write_csv("rates.csv", RATE_COLUMNS, rate_series(grid, [1, 2, 4, 8], cp_values))
    writer.write_manifest(
        "sweep", cfg.to_dict(), cfg.seed,
        extra={"n_values": list(n_values), "payloads": payloads, "eta": eta},
    )
