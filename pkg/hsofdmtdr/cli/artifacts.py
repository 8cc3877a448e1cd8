"""
hsofdmtdr.cli.artifacts - Escritura de resultados en disco.

Todo lo que produce la CLI pasa por ArtifactWriter:
    - JSON con claves ordenadas e indentacion fija.
    - CSV con floats en repr(), para que dos ejecuciones con la misma
      semilla sean identicas byte a byte.
    - manifest.json con el comando, la version, la semilla y el
      escenario normalizado (sin marcas de tiempo).
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

import numpy as np

from hsofdmtdr import __version__

log = logging.getLogger(__name__)

REFLECTOGRAM_COLUMNS = ("index", "time_s", "distance_m", "amplitude")


def _clean(value: Any) -> Any:
    """numpy -> tipos nativos; inf/nan -> texto (JSON estricto)."""
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_clean(v) for v in value.tolist()]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
    return value


def to_json(data: Any) -> str:
    return json.dumps(_clean(data), indent=2, sort_keys=True) + "\n"


def _cell(value: Any) -> str:
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float):
        return repr(value)
    return str(value)


class ArtifactWriter:
    """
    Escribe los artefactos de un comando bajo un directorio raiz y
    recuerda las rutas relativas para el manifiesto.
    """

    def __init__(self, root: str | Path) -> None:
        self._root = Path(root)
        self._files: list[str] = []

    @property
    def root(self) -> Path:
        return self._root

    @property
    def files(self) -> list[str]:
        return sorted(self._files)

    def _path(self, name: str) -> Path:
        path = self._root / name
        path.parent.mkdir(parents=True, exist_ok=True)
        rel = path.relative_to(self._root).as_posix()
        if rel not in self._files:
            self._files.append(rel)
        return path

    def write_json(self, name: str, data: Any) -> Path:
        path = self._path(name)
        path.write_text(to_json(data), encoding="utf-8", newline="\n")
        log.debug("Wrote %s", path)
        return path

    def write_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        count = 0
        for row in rows:
            writer.writerow([_cell(v) for v in row])
            count += 1
        path = self._path(name)
        path.write_text(buf.getvalue(), encoding="utf-8", newline="\n")
        log.debug("Wrote %s (%d rows)", path, count)
        return path

    def write_reflectogram(
        self,
        name: str,
        amplitude: np.ndarray,
        sample_period: float,
        velocity: float,
        eta: int = 1,
    ) -> Path:
        """rho reconstruido a eta muestras por muestra de la rejilla."""
        amplitude = np.asarray(amplitude, dtype=float)
        n = np.arange(amplitude.size)
        t = n * sample_period / eta
        d = velocity * t / 2.0
        rows = zip(n.tolist(), t.tolist(), d.tolist(), amplitude.tolist())
        return self.write_csv(name, REFLECTOGRAM_COLUMNS, rows)

    def write_manifest(self, command: str, config: dict | None, seed: int | None, extra: dict | None = None) -> Path:
        manifest = {
            "command": command,
            "version": __version__,
            "seed": seed,
            "config": config,
            "files": [f for f in self.files if f != "manifest.json"],
        }
        if extra:
            manifest.update(extra)
        return self.write_json("manifest.json", manifest)
