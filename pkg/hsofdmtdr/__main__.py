"""
HsOfdmTdr - Entry point.

Run with:  python -m hsofdmtdr [-v] {presets,param-report,simulate,sweep} ...
"""

from __future__ import annotations

import argparse
import logging
import sys

from hsofdmtdr import __version__
from hsofdmtdr.cli.commands import CommandDispatcher, build_default_commands


class SafeStreamHandler(logging.StreamHandler):
    """Handler that replaces unencodable characters instead of crashing."""

    def emit(self, record: logging.LogRecord) -> None:
        try:
            msg = self.format(record)
            enc = getattr(self.stream, "encoding", "utf-8") or "utf-8"
            safe = msg.encode(enc, errors="replace").decode(enc, errors="replace")
            self.stream.write(safe + self.terminator)
            self.flush()
        except Exception:
            self.handleError(record)


def setup_logging(verbose: bool = False) -> None:
    """Configure logging on stderr; stdout is left to command output."""
    fmt = "%(asctime)s.%(msecs)03d [%(levelname)s] %(name)s: %(message)s"
    handler = SafeStreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(fmt, datefmt="%H:%M:%S"))

    root = logging.getLogger()
    root.setLevel(logging.DEBUG if verbose else logging.INFO)
    for old in [h for h in root.handlers if isinstance(h, SafeStreamHandler)]:
        root.removeHandler(old)
    root.addHandler(handler)

    # Per-bin network evaluation is chatty
    logging.getLogger("hsofdmtdr.network.channel").setLevel(logging.INFO)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hsofdmtdr",
        description="Reflectometry with HS-OFDM power-line modems.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("presets", help="list the regulatory band presets")
    p.add_argument("--out", help="also write presets.json here")

    p = sub.add_parser("param-report", help="range figures and parameter checks")
    p.add_argument("--config", required=True, help="scenario JSON")
    p.add_argument("--alpha", type=float, help="coherence threshold")
    p.add_argument("--out", help="output directory")

    p = sub.add_parser("simulate", help="run a measurement campaign")
    p.add_argument("--config", required=True, help="scenario JSON")
    p.add_argument("--seed", type=int, help="override the scenario seed")
    p.add_argument("--out", help="output directory")
    p.add_argument("--eta", type=int, help="reconstruction oversampling factor")
    p.add_argument("--alpha", type=float, help="coherence threshold")

    p = sub.add_parser("sweep", help="figure data series")
    p.add_argument("--config", help="scenario JSON (defaults to FCC)")
    p.add_argument("--out", help="output directory")
    p.add_argument("--eta", type=int, help="sidelobe oversampling factor (default 16)")
    p.add_argument("--n-values", dest="n_values", help="comma-separated N values")
    p.add_argument("--payloads", type=int, help="random payloads per point")
    p.add_argument("--seed", type=int, help="override the scenario seed")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)
    log = logging.getLogger("hsofdmtdr")

    dispatcher = CommandDispatcher()
    build_default_commands(dispatcher)
    log.debug("%s", dispatcher.dump_state())
    return dispatcher.execute(args.command, args)


if __name__ == "__main__":
    raise SystemExit(main())
