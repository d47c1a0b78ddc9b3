"""Qubit interaction graph and gate-dependency DAG."""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit


@dataclass(frozen=True)
class InteractionGraph:
    n_nodes: int
    weights: dict[tuple[int, int], int]  # keys (i, j) with i < j

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.weights)

    @property
    def total_weight(self) -> int:
        return sum(self.weights.values())

    def adjacency(self, weighted: bool = True) -> np.ndarray:
        a = np.zeros((self.n_nodes, self.n_nodes), dtype=float)
        for (i, j), w in self.weights.items():
            a[i, j] = a[j, i] = w if weighted else 1.0
        return a

    def neighbors(self) -> list[set[int]]:
        """Unweighted skeleton as adjacency sets."""
        adj: list[set[int]] = [set() for _ in range(self.n_nodes)]
        for i, j in self.weights:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def weighted_degree(self) -> list[int]:
        deg = [0] * self.n_nodes
        for (i, j), w in self.weights.items():
            deg[i] += w
            deg[j] += w
        return deg

    @classmethod
    def from_edges(cls, n_nodes: int, edges) -> InteractionGraph:
        weights: dict[tuple[int, int], int] = {}
        for e in edges:
            i, j = e[0], e[1]
            w = e[2] if len(e) > 2 else 1
            if i == j:
                raise ValueError("self-loops are not allowed")
            key = (min(i, j), max(i, j))
            weights[key] = weights.get(key, 0) + w
        return cls(n_nodes, weights)

    def to_edge_list(self) -> str:
        return "".join(f"{i} {j} {w}\n" for (i, j), w in sorted(self.weights.items()))

    def to_dot(self, name: str = "ig") -> str:
        lines = [f"graph {name} {{"]
        lines += [f"  q{i};" for i in range(self.n_nodes)]
        lines += [f'  q{i} -- q{j} [label="{w}"];' for (i, j), w in sorted(self.weights.items())]
        return "\n".join(lines) + "\n}\n"


def build_interaction_graph(c: Circuit) -> InteractionGraph:
    weights: dict[tuple[int, int], int] = {}
    for g in c.gates:
        if g.is_two_qubit:
            a, b = g.qubits
            key = (min(a, b), max(a, b))
            weights[key] = weights.get(key, 0) + 1
    return InteractionGraph(c.n_qubits, weights)


class CycleError(RuntimeError):
    pass


@dataclass(frozen=True)
class GateDependencyGraph:
    """DAG over gates. Node 0 is the source sentinel, nodes 1..n_gates are the
    gates in program order, node n_gates + 1 is the sink sentinel."""

    n_gates: int
    children: tuple[tuple[int, ...], ...]
    is_two_qubit: tuple[bool, ...]
    order: tuple[int, ...]

    SOURCE = 0

    @property
    def sink(self) -> int:
        return self.n_gates + 1

    @property
    def n_nodes(self) -> int:
        return self.n_gates + 2

    @property
    def gate_nodes(self) -> range:
        return range(1, self.n_gates + 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, kids in enumerate(self.children) for v in kids]

    def parents(self) -> list[list[int]]:
        par: list[list[int]] = [[] for _ in range(self.n_nodes)]
        for u, v in self.edges():
            par[v].append(u)
        return par

    def label(self, node: int) -> str:
        if node == self.SOURCE:
            return "source"
        if node == self.sink:
            return "sink"
        return f"g{node - 1}"

    def to_edge_list(self) -> str:
        return "".join(f"{self.label(u)} {self.label(v)}\n" for u, v in self.edges())

    def to_dot(self, name: str = "gdg") -> str:
        lines = [f"digraph {name} {{"]
        lines += [f"  {self.label(u)} -> {self.label(v)};" for u, v in self.edges()]
        return "\n".join(lines) + "\n}\n"


def build_gdg(c: Circuit) -> GateDependencyGraph:
    n = c.n_gates
    sink = n + 1
    children: list[list[int]] = [[] for _ in range(n + 2)]
    last = [0] * c.n_qubits  # 0 = source
    for k, g in enumerate(c.gates):
        w = k + 1
        for v in dict.fromkeys(last[q] for q in g.qubits):
            children[v].append(w)
        for q in g.qubits:
            last[q] = w
    for u in range(n + 1):
        if not children[u]:
            children[u].append(sink)
    kids = tuple(tuple(ch) for ch in children)
    is_2q = (False,) + tuple(g.is_two_qubit for g in c.gates) + (False,)
    order = topological_order_of(kids)
    return GateDependencyGraph(n, kids, is_2q, tuple(order))


def topological_order_of(children) -> list[int]:
    """Kahn's algorithm; smallest ready node first so the result is deterministic."""
    n = len(children)
    indeg = [0] * n
    for kids in children:
        for v in kids:
            indeg[v] += 1
    ready = [u for u in range(n) if indeg[u] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        u = heapq.heappop(ready)
        order.append(u)
        for v in children[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(ready, v)
    if len(order) != n:
        raise CycleError(f"dependency graph has a cycle ({n - len(order)} nodes unresolved)")
    return order


def topological_order(g: GateDependencyGraph) -> list[int]:
    return topological_order_of(g.children)
