"""
hsofdmtdr.network.topology - Modelo arborescente de la red electrica.

La red es un arbol: cada nodo tiene cero o mas cargas en paralelo
(shunt) y cero o mas segmentos de cable hacia nodos hijos. Las hojas
deben llevar al menos una terminacion (impedancia, corto, abierto o
adaptada). Los puertos donde se conectan los PLM se identifican por el
nombre del nodo.

Formato dict/JSON de un nodo:
    {
        "name": "feeder",
        "load": "open" | "short" | "matched" | 50 | [re, im],
        "segments": [
            {"cable": "mv" | {...RLGC...}, "length_m": 1000.0, "node": {...}}
        ]
    }
"""

from __future__ import annotations

import enum
import logging
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field

import numpy as np

from hsofdmtdr.core.errors import NetworkError
from hsofdmtdr.network.cable import (
    CABLE_PRESETS,
    CableParams,
    characteristic_impedance,
    get_cable,
)

log = logging.getLogger(__name__)

# Circuito abierto representado como impedancia finita muy grande
OPEN_CIRCUIT_OHMS = 1.0e12


# ============================================================================
# Cargas
# ============================================================================
class LoadKind(enum.Enum):
    """Tipo de terminacion/carga de un nodo."""
    IMPEDANCE = "impedance"
    SHORT = "short"
    OPEN = "open"
    MATCHED = "matched"


Impedance = complex | Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, slots=True)
class Load:
    """
    Carga en paralelo conectada a un nodo.

    MATCHED toma la Z0 del segmento por el que se mira hacia el nodo,
    por lo que solo tiene sentido en hojas.
    """

    kind: LoadKind
    impedance: Impedance = 0j

    @classmethod
    def ohms(cls, value: Impedance) -> Load:
        return cls(LoadKind.IMPEDANCE, value)

    @classmethod
    def open(cls) -> Load:
        return cls(LoadKind.OPEN)

    @classmethod
    def short(cls) -> Load:
        return cls(LoadKind.SHORT)

    @classmethod
    def matched(cls) -> Load:
        return cls(LoadKind.MATCHED)

    def impedance_at(self, f: np.ndarray, z0: np.ndarray | None = None) -> np.ndarray | None:
        """
        Impedancia en cada frecuencia; None para un abierto (se omite en
        la combinacion en paralelo).
        """
        f = np.asarray(f, dtype=float)
        if self.kind is LoadKind.OPEN:
            return None
        if self.kind is LoadKind.SHORT:
            return np.zeros(f.shape, dtype=complex)
        if self.kind is LoadKind.MATCHED:
            if z0 is None:
                raise NetworkError("matched load needs an adjacent segment")
            return np.asarray(z0, dtype=complex)
        value = self.impedance(f) if callable(self.impedance) else self.impedance
        z = np.broadcast_to(np.asarray(value, dtype=complex), f.shape).copy()
        if np.any(z.real < 0):
            raise NetworkError("load impedance must be passive (Re >= 0)")
        return z

    def to_json(self) -> object:
        if self.kind is not LoadKind.IMPEDANCE:
            return self.kind.value
        if callable(self.impedance):
            raise NetworkError("frequency-dependent loads cannot be serialized")
        z = complex(self.impedance)
        return z.real if z.imag == 0 else [z.real, z.imag]

    @classmethod
    def from_json(cls, value: object) -> Load:
        if isinstance(value, str):
            try:
                kind = LoadKind(value.lower())
            except ValueError:
                raise NetworkError(f"unknown load kind {value!r}") from None
            if kind is LoadKind.IMPEDANCE:
                raise NetworkError("impedance loads are given as a number or [re, im]")
            return cls(kind)
        if isinstance(value, bool):
            raise NetworkError(f"invalid load {value!r}")
        if isinstance(value, (int, float)):
            return cls.ohms(complex(value))
        if isinstance(value, (list, tuple)) and len(value) == 2:
            return cls.ohms(complex(float(value[0]), float(value[1])))
        raise NetworkError(f"invalid load {value!r}")


# ============================================================================
# Arbol
# ============================================================================
@dataclass(frozen=True, slots=True)
class Segment:
    """Tramo de cable de longitud length_m hacia el nodo hijo."""

    cable: CableParams
    length_m: float
    child: Node


@dataclass(frozen=True, slots=True)
class Node:
    name: str
    loads: tuple[Load, ...] = ()
    segments: tuple[Segment, ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.segments


@dataclass(frozen=True, slots=True)
class Edge:
    """Arista no dirigida usada para recorrer el arbol desde cualquier puerto."""

    a: str
    b: str
    cable: CableParams
    length_m: float

    def other(self, name: str) -> str:
        return self.b if name == self.a else self.a


@dataclass(frozen=True)
class NetworkModel:
    """
    Red electrica arborescente vista desde los PLM.

    Atributos:
        root:          Nodo raiz (puerto por defecto).
        plm_impedance: Impedancia interna del PLM (ohm o funcion de f).
        name:          Etiqueta para logs.
    """

    root: Node
    plm_impedance: Impedance = 50.0 + 0j
    name: str = "network"
    _nodes: dict[str, Node] = field(init=False, repr=False, compare=False)
    _adjacency: dict[str, tuple[Edge, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        nodes: dict[str, Node] = {}
        adjacency: dict[str, list[Edge]] = {}

        def walk(node: Node) -> None:
            if node.name in nodes:
                raise NetworkError(
                    f"node name {node.name!r} appears twice (names must be unique, "
                    "the topology must be a tree)"
                )
            nodes[node.name] = node
            adjacency.setdefault(node.name, [])
            if node.is_leaf and not node.loads and node is not self.root:
                raise NetworkError(f"leaf {node.name!r} has no termination")
            for seg in node.segments:
                if not seg.length_m > 0:
                    raise NetworkError(
                        f"segment {node.name!r} -> {seg.child.name!r}: "
                        f"length must be > 0, got {seg.length_m}"
                    )
                edge = Edge(node.name, seg.child.name, seg.cable, float(seg.length_m))
                adjacency[node.name].append(edge)
                adjacency.setdefault(seg.child.name, []).append(edge)
                walk(seg.child)

        walk(self.root)
        for node in nodes.values():
            if any(ld.kind is LoadKind.MATCHED for ld in node.loads) and len(adjacency[node.name]) != 1:
                raise NetworkError(f"matched load on non-leaf node {node.name!r}")
        object.__setattr__(self, "_nodes", nodes)
        object.__setattr__(
            self, "_adjacency", {k: tuple(v) for k, v in adjacency.items()}
        )

    # ------------------------------------------------------------------
    # Consultas
    # ------------------------------------------------------------------
    @property
    def node_names(self) -> list[str]:
        return list(self._nodes)

    @property
    def node_count(self) -> int:
        return len(self._nodes)

    def node(self, name: str) -> Node:
        try:
            return self._nodes[name]
        except KeyError:
            raise NetworkError(f"unknown port/node {name!r}") from None

    def edges_at(self, name: str) -> tuple[Edge, ...]:
        self.node(name)
        return self._adjacency[name]

    def iter_edges(self) -> Iterator[Edge]:
        seen: set[tuple[str, str]] = set()
        for edges in self._adjacency.values():
            for e in edges:
                if (e.a, e.b) not in seen:
                    seen.add((e.a, e.b))
                    yield e

    def path(self, start: str, end: str) -> list[tuple[str, Edge | None]]:
        """
        Camino unico entre dos nodos como lista [(nodo, arista_hacia_el_siguiente)].

        La ultima entrada lleva None como arista.
        """
        self.node(start)
        self.node(end)
        previous: dict[str, tuple[str, Edge] | None] = {start: None}
        queue = [start]
        while queue:
            current = queue.pop(0)
            if current == end:
                break
            for e in self._adjacency[current]:
                nxt = e.other(current)
                if nxt not in previous:
                    previous[nxt] = (current, e)
                    queue.append(nxt)
        chain: list[tuple[str, Edge | None]] = [(end, None)]
        cursor = end
        while previous[cursor] is not None:
            parent, edge = previous[cursor]
            chain.append((parent, edge))
            cursor = parent
        chain.reverse()
        return chain

    def plm_impedance_at(self, f: np.ndarray) -> np.ndarray:
        f = np.asarray(f, dtype=float)
        value = self.plm_impedance(f) if callable(self.plm_impedance) else self.plm_impedance
        return np.broadcast_to(np.asarray(value, dtype=complex), f.shape).copy()

    def load_impedances(
        self, name: str, f: np.ndarray, via: Edge | None = None
    ) -> list[np.ndarray]:
        """Impedancias de las cargas del nodo (los abiertos se omiten)."""
        node = self.node(name)
        z0 = None
        if any(ld.kind is LoadKind.MATCHED for ld in node.loads):
            edge = via if via is not None else self._adjacency[name][0]
            z0 = characteristic_impedance(edge.cable, f)
        out = []
        for ld in node.loads:
            z = ld.impedance_at(f, z0)
            if z is not None:
                out.append(z)
        return out

    # ------------------------------------------------------------------
    # Copias modificadas
    # ------------------------------------------------------------------
    def with_extra_loads(self, extra: dict[str, list[Load]]) -> NetworkModel:
        """Devuelve una copia con cargas adicionales en los nodos indicados."""
        for name in extra:
            self.node(name)

        def rebuild(node: Node) -> Node:
            segs = tuple(
                Segment(s.cable, s.length_m, rebuild(s.child)) for s in node.segments
            )
            return Node(node.name, node.loads + tuple(extra.get(node.name, ())), segs)

        return NetworkModel(rebuild(self.root), self.plm_impedance, self.name)

    # ------------------------------------------------------------------
    # Serializacion
    # ------------------------------------------------------------------
    @classmethod
    def from_dict(cls, data: dict, plm_impedance: Impedance = 50.0 + 0j, name: str = "network") -> NetworkModel:
        return cls(_node_from_dict(data, "network"), plm_impedance, name)

    def to_dict(self) -> dict:
        return _node_to_dict(self.root)

    def dump_state(self) -> str:
        lines = [f"NetworkModel {self.name!r}: {self.node_count} nodes, Z_PLM={self.plm_impedance!r}"]

        def walk(node: Node, depth: int) -> None:
            loads = ", ".join(str(ld.to_json()) for ld in node.loads) or "-"
            lines.append(f"{'  ' * depth}- {node.name} [loads: {loads}]")
            for seg in node.segments:
                lines.append(f"{'  ' * (depth + 1)}| {seg.cable.name} {seg.length_m:g} m")
                walk(seg.child, depth + 1)

        walk(self.root, 1)
        return "\n".join(lines)


def _cable_from_json(value: object, where: str) -> CableParams:
    if isinstance(value, str):
        return get_cable(value)
    if isinstance(value, dict):
        try:
            return CableParams(
                resistance=float(value.get("resistance_ohm_per_m", 0.0)),
                inductance=float(value["inductance_h_per_m"]),
                conductance=float(value.get("conductance_s_per_m", 0.0)),
                capacitance=float(value["capacitance_f_per_m"]),
                name=str(value.get("name", "custom")),
            )
        except KeyError as exc:
            raise NetworkError(f"{where}: cable is missing {exc.args[0]!r}") from None
    raise NetworkError(f"{where}: invalid cable {value!r}")


def _node_from_dict(data: object, where: str) -> Node:
    if not isinstance(data, dict) or "name" not in data:
        raise NetworkError(f"{where}: node must be an object with a 'name'")
    unknown = set(data) - {"name", "load", "loads", "segments"}
    if unknown:
        raise NetworkError(f"{where}: unknown node keys {sorted(unknown)}")
    name = str(data["name"])
    raw_loads = list(data.get("loads", []))
    if "load" in data:
        raw_loads.insert(0, data["load"])
    loads = tuple(Load.from_json(v) for v in raw_loads)
    segments = []
    for i, seg in enumerate(data.get("segments", [])):
        here = f"{where}.{name}.segments[{i}]"
        if not isinstance(seg, dict) or "node" not in seg or "length_m" not in seg:
            raise NetworkError(f"{here}: segment needs 'length_m' and 'node'")
        segments.append(
            Segment(
                cable=_cable_from_json(seg.get("cable", "lv"), here),
                length_m=float(seg["length_m"]),
                child=_node_from_dict(seg["node"], here),
            )
        )
    return Node(name, loads, tuple(segments))


def _node_to_dict(node: Node) -> dict:
    out: dict = {"name": node.name}
    if node.loads:
        out["loads"] = [ld.to_json() for ld in node.loads]
    if node.segments:
        out["segments"] = [
            {"cable": _cable_to_json(s.cable), "length_m": s.length_m, "node": _node_to_dict(s.child)}
            for s in node.segments
        ]
    return out


def _cable_to_json(cable: CableParams) -> object:
    for key, preset in CABLE_PRESETS.items():
        if preset == cable:
            return key
    if any(callable(p) for p in (cable.resistance, cable.inductance, cable.conductance, cable.capacitance)):
        raise NetworkError(f"cable {cable.name!r} has frequency-dependent parameters")
    return {
        "name": cable.name,
        "resistance_ohm_per_m": cable.resistance,
        "inductance_h_per_m": cable.inductance,
        "conductance_s_per_m": cable.conductance,
        "capacitance_f_per_m": cable.capacitance,
    }
