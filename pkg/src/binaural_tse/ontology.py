"""Target-class registry, query vectors and the class-hierarchy graph.

The registry order is part of a weight bundle: row ``i`` of the query
embedding belongs to ``registry.labels[i]``, so the order is fixed and
serialized alongside the weights.
"""

from __future__ import annotations

import json
from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from pathlib import Path

import numpy as np
import numpy.typing as npt

from binaural_tse.exceptions import ArgumentError, ConfigError, ResourceIOError, UnknownLabelError

DEFAULT_CLASSES: tuple[str, ...] = (
    "alarm_clock",
    "baby_cry",
    "birds_chirping",
    "car_horn",
    "cat",
    "rooster_crow",
    "computer_typing",
    "cricket",
    "dog",
    "door_knock",
    "glass_breaking",
    "gunshot",
    "hammer",
    "music",
    "ocean",
    "singing",
    "siren",
    "speech",
    "thunderstorm",
    "toilet_flush",
)


def _load_json(path: str | Path) -> object:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ResourceIOError(str(path), str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(str(path), f"invalid JSON: {exc}") from exc


# ── registry ─────────────────────────────────────────────────


@dataclass(frozen=True)
class ClassRegistry:
    """Ordered, duplicate-free list of class identifiers.

    Attributes:
        labels: Class identifiers in embedding-row order.
        index:  Label to position map, derived from ``labels``.
    """

    labels: tuple[str, ...]
    index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        if not labels:
            raise ConfigError("ClassRegistry", "registry must contain at least one label")
        if len(set(labels)) != len(labels):
            raise ConfigError("ClassRegistry", "labels must be distinct")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "index", {label: i for i, label in enumerate(labels)})

    @staticmethod
    def default() -> ClassRegistry:
        return ClassRegistry(DEFAULT_CLASSES)

    @staticmethod
    def from_json(path: str | Path) -> ClassRegistry:
        data = _load_json(path)
        if not isinstance(data, list) or not all(isinstance(x, str) for x in data):
            raise ConfigError(str(path), "registry file must be a JSON array of labels")
        return ClassRegistry(tuple(data))

    def to_json(self) -> str:
        return json.dumps(list(self.labels))

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self.index

    def position(self, label: str) -> int:
        """Row of ``label``, raising :class:`UnknownLabelError` when absent."""
        try:
            return self.index[label]
        except KeyError:
            raise UnknownLabelError(label, self.labels) from None


# ── query vectors ────────────────────────────────────────────


@dataclass(frozen=True)
class QueryVector:
    """Binary class selector of length ``N_c``."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ArgumentError("QueryVector", "bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @staticmethod
    def one_hot(position: int, size: int) -> QueryVector:
        if not 0 <= position < size:
            raise ArgumentError("QueryVector.one_hot", f"position {position} outside 0..{size - 1}")
        return QueryVector(tuple(int(i == position) for i in range(size)))

    def __len__(self) -> int:
        return len(self.bits)

    def as_array(self) -> npt.NDArray[np.float32]:
        return np.asarray(self.bits, dtype=np.float32)

    def is_empty(self) -> bool:
        return not any(self.bits)

    def labels(self, registry: ClassRegistry) -> list[str]:
        return [registry.labels[i] for i, b in enumerate(self.bits) if b]


def query_from_labels(labels: Sequence[str], registry: ClassRegistry) -> QueryVector:
    """Multi-hot query with a bit set at each named label's position.

    Raises:
        ArgumentError: If ``labels`` is empty.
        UnknownLabelError: If any label is not in ``registry``.
    """
    if not labels:
        raise ArgumentError("query_from_labels", "at least one label is required")
    bits = [0] * len(registry)
    for label in labels:
        bits[registry.position(label)] = 1
    return QueryVector(tuple(bits))


# ── class hierarchy ──────────────────────────────────────────


@dataclass(frozen=True)
class OntologyGraph:
    """Directed acyclic class hierarchy with parent -> child edges."""

    nodes: frozenset[str]
    edges: tuple[tuple[str, str], ...]
    _children: Mapping[str, tuple[str, ...]] = field(init=False, repr=False, compare=False)
    _parents: Mapping[str, tuple[str, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        nodes = frozenset(self.nodes)
        edges = tuple((str(p), str(c)) for p, c in self.edges)
        children: dict[str, list[str]] = {n: [] for n in nodes}
        parents: dict[str, list[str]] = {n: [] for n in nodes}
        for parent, child in edges:
            if parent not in nodes or child not in nodes:
                raise ConfigError("OntologyGraph", f"edge ({parent}, {child}) leaves the node set")
            children[parent].append(child)
            parents[child].append(parent)

        try:
            tuple(TopologicalSorter({n: parents[n] for n in nodes}).static_order())
        except CycleError as exc:
            raise ConfigError("OntologyGraph", f"graph has a cycle: {exc.args[1]}") from exc

        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_children", {n: tuple(c) for n, c in children.items()})
        object.__setattr__(self, "_parents", {n: tuple(p) for n, p in parents.items()})

    @staticmethod
    def from_dict(data: Mapping[str, object]) -> OntologyGraph:
        nodes = data.get("nodes", [])
        edges = data.get("edges", [])
        if not isinstance(nodes, list) or not isinstance(edges, list):
            raise ConfigError("OntologyGraph", "'nodes' and 'edges' must be arrays")
        if any(not isinstance(e, list | tuple) or len(e) != 2 for e in edges):
            raise ConfigError("OntologyGraph", "each edge must be a [parent, child] pair")
        return OntologyGraph(frozenset(map(str, nodes)), tuple((e[0], e[1]) for e in edges))

    @staticmethod
    def from_json(path: str | Path) -> OntologyGraph:
        data = _load_json(path)
        if not isinstance(data, dict):
            raise ConfigError(str(path), "graph file must be a JSON object")
        return OntologyGraph.from_dict(data)

    def children(self, node: str) -> tuple[str, ...]:
        return self._children[node]

    def parents(self, node: str) -> tuple[str, ...]:
        return self._parents[node]

    def _reach(self, sources: Iterable[str], step: Mapping[str, tuple[str, ...]]) -> set[str]:
        seen: set[str] = set()
        queue = deque(sources)
        while queue:
            for nxt in step[queue.popleft()]:
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return seen

    def descendants(self, sources: Iterable[str]) -> set[str]:
        return self._reach(sources, self._children)

    def ancestors(self, sources: Iterable[str]) -> set[str]:
        return self._reach(sources, self._parents)


def other_classes(graph: OntologyGraph, targets: Iterable[str]) -> set[str]:
    """Nodes with no directed path to or from any target.

    Raises:
        ArgumentError: If a target is not a node of ``graph``.
    """
    targets = set(targets)
    missing = sorted(targets - graph.nodes)
    if missing:
        raise ArgumentError("other_classes", f"targets not in graph: {', '.join(missing)}")
    connected = targets | graph.descendants(targets) | graph.ancestors(targets)
    return set(graph.nodes) - connected
