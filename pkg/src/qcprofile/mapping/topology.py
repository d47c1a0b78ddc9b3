"""Device connectivity: single-core coupling graphs and multi-core layouts."""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path


class TopologyError(ValueError):
    pass


def _all_pairs_hops(n: int, edges) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    for nb in adj:
        nb.sort()
    dist = []
    for s in range(n):
        d = [-1] * n
        d[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if d[v] < 0:
                    d[v] = d[u] + 1
                    queue.append(v)
        dist.append(d)
    return dist


def _normalise_edges(n: int, edges, what: str) -> frozenset[tuple[int, int]]:
    seen: set[tuple[int, int]] = set()
    for e in edges:
        if len(e) != 2:
            raise TopologyError(f"{what} edge {e!r} must have two endpoints")
        a, b = int(e[0]), int(e[1])
        if a == b:
            raise TopologyError(f"{what} has a self-loop on {a}")
        if not (0 <= a < n and 0 <= b < n):
            raise TopologyError(f"{what} edge ({a}, {b}) outside [0, {n})")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise TopologyError(f"{what} lists edge {key} twice")
        seen.add(key)
    return frozenset(seen)


@dataclass(frozen=True)
class CouplingTopology:
    n_physical: int
    edges: frozenset[tuple[int, int]]
    name: str = "custom"
    _dist: list[list[int]] = field(default=None, repr=False, compare=False)
    _adj: list[list[int]] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        edges = _normalise_edges(self.n_physical, self.edges, f"topology {self.name!r}")
        object.__setattr__(self, "edges", edges)
        if self.n_physical < 1:
            raise TopologyError("topology needs at least one qubit")
        dist = _all_pairs_hops(self.n_physical, edges)
        if any(d < 0 for d in dist[0]):
            raise TopologyError(f"topology {self.name!r} is disconnected")
        object.__setattr__(self, "_dist", dist)
        adj: list[list[int]] = [[] for _ in range(self.n_physical)]
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        object.__setattr__(self, "_adj", [sorted(nb) for nb in adj])

    def coupled(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def distance(self, a: int, b: int) -> int:
        return self._dist[a][b]

    def neighbors(self, a: int) -> list[int]:
        return self._adj[a]

    def to_json(self) -> str:
        return json.dumps({"n": self.n_physical, "edges": [list(e) for e in sorted(self.edges)]})


def linear(n: int) -> CouplingTopology:
    return CouplingTopology(n, frozenset((i, i + 1) for i in range(n - 1)), f"linear({n})")


def ring(n: int) -> CouplingTopology:
    edges = {(i, i + 1) for i in range(n - 1)}
    if n > 2:
        edges.add((0, n - 1))
    return CouplingTopology(n, frozenset(edges), f"ring({n})")


def grid(rows: int, cols: int) -> CouplingTopology:
    """Row-major numbering: node r * cols + c."""
    edges = set()
    for r in range(rows):
        for c in range(cols):
            u = r * cols + c
            if c + 1 < cols:
                edges.add((u, u + 1))
            if r + 1 < rows:
                edges.add((u, u + cols))
    return CouplingTopology(rows * cols, frozenset(edges), f"grid({rows},{cols})")


def all_to_all(n: int) -> CouplingTopology:
    return CouplingTopology(n, frozenset((i, j) for i in range(n) for j in range(i + 1, n)), f"all_to_all({n})")


def _from_json_doc(doc: dict, name: str) -> CouplingTopology:
    try:
        return CouplingTopology(int(doc["n"]), doc["edges"], doc.get("name", name))
    except (KeyError, TypeError) as exc:
        raise TopologyError(f"malformed topology file {name!r}: {exc}") from None


def surface17() -> CouplingTopology:
    text = resources.files("qcprofile.data").joinpath("surface17.json").read_text()
    return _from_json_doc(json.loads(text), "surface17")


_SPEC_RE = re.compile(r"^\s*([a-z_0-9]+)\s*(?:[:(]\s*(\d+)\s*(?:[x,]\s*(\d+))?\s*\)?)?\s*$")


def load_topology(spec) -> CouplingTopology:
    """Resolve ``linear:5``, ``ring:6``, ``grid:4x4`` / ``grid(2,3)``,
    ``all_to_all:4``, ``surface17``, a JSON file path, or an already-parsed dict."""
    if isinstance(spec, CouplingTopology):
        return spec
    if isinstance(spec, dict):
        return _from_json_doc(spec, "custom")
    spec = str(spec)
    if spec.endswith(".json") or Path(spec).is_file():
        path = Path(spec)
        try:
            doc = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise TopologyError(f"cannot read topology file {spec}: {exc}") from None
        return _from_json_doc(doc, path.stem)
    m = _SPEC_RE.match(spec)
    if not m:
        raise TopologyError(f"unrecognised topology spec {spec!r}")
    kind, a, b = m.group(1), m.group(2), m.group(3)
    if kind == "surface17":
        return surface17()
    if kind == "grid" and a and b:
        return grid(int(a), int(b))
    if kind in ("linear", "ring", "all_to_all") and a and not b:
        return {"linear": linear, "ring": ring, "all_to_all": all_to_all}[kind](int(a))
    raise TopologyError(f"unrecognised topology spec {spec!r}")


@dataclass(frozen=True)
class MultiCoreTopology:
    """Cores with all-to-all internal connectivity joined by ``core_edges``."""

    n_cores: int
    capacity: int
    core_edges: frozenset[tuple[int, int]]
    name: str = "custom"
    _dist: list[list[int]] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.n_cores < 1 or self.capacity < 1:
            raise TopologyError("need at least one core of capacity at least one")
        edges = _normalise_edges(self.n_cores, self.core_edges, f"core graph {self.name!r}")
        object.__setattr__(self, "core_edges", edges)
        dist = _all_pairs_hops(self.n_cores, edges)
        if any(d < 0 for d in dist[0]):
            raise TopologyError(f"core graph {self.name!r} is disconnected")
        object.__setattr__(self, "_dist", dist)

    @property
    def total_capacity(self) -> int:
        return self.n_cores * self.capacity

    def hops(self, a: int, b: int) -> int:
        return self._dist[a][b]

    def to_json(self) -> str:
        return json.dumps(
            {"cores": self.n_cores, "capacity": self.capacity, "core_edges": [list(e) for e in sorted(self.core_edges)]}
        )


def multicore_all_to_all(n_cores: int, capacity: int) -> MultiCoreTopology:
    edges = frozenset((i, j) for i in range(n_cores) for j in range(i + 1, n_cores))
    return MultiCoreTopology(n_cores, capacity, edges, f"all_to_all_cores({n_cores}x{capacity})")


def multicore_grid(rows: int, cols: int, capacity: int) -> MultiCoreTopology:
    g = grid(rows, cols)
    return MultiCoreTopology(rows * cols, capacity, g.edges, f"grid_cores({rows}x{cols}x{capacity})")


_MC_RE = re.compile(r"^\s*(all_to_all|grid)\s*:\s*(\d+)(?:x(\d+))?\s*:\s*(\d+)\s*$")


def load_multicore_topology(spec) -> MultiCoreTopology:
    """Resolve ``all_to_all:<cores>:<capacity>``, ``grid:<rows>x<cols>:<capacity>``,
    a JSON file (``{"cores", "capacity", "core_edges"}``) or a parsed dict."""
    if isinstance(spec, MultiCoreTopology):
        return spec
    if isinstance(spec, dict):
        doc, name = spec, "custom"
    else:
        spec = str(spec)
        m = _MC_RE.match(spec)
        if m:
            kind, a, b, cap = m.groups()
            if kind == "all_to_all" and not b:
                return multicore_all_to_all(int(a), int(cap))
            if kind == "grid" and b:
                return multicore_grid(int(a), int(b), int(cap))
            raise TopologyError(f"unrecognised multi-core spec {spec!r}")
        try:
            doc = json.loads(Path(spec).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise TopologyError(f"cannot read multi-core topology {spec}: {exc}") from None
        name = Path(spec).stem
    try:
        return MultiCoreTopology(int(doc["cores"]), int(doc["capacity"]), doc["core_edges"], doc.get("name", name))
    except (KeyError, TypeError) as exc:
        raise TopologyError(f"malformed multi-core topology: {exc}") from None
