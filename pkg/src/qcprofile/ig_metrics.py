"""Interaction-graph features.

The low-level algorithms work on adjacency sets (``list[set[int]]``) so they
can be checked against brute force on arbitrary graphs. The IG-level wrappers
apply the conventions used for circuit features:

* hop-count metrics, betweenness and connectivity use the unweighted skeleton
  restricted to qubits that take part in at least one two-qubit gate;
  distances are taken on the largest component and ``ig_disconnected`` is set
  when there is more than one;
* average degree and the adjacency standard deviation use the weighted
  adjacency over all qubits, idle ones included;
* per-node quantities are reduced to max / mean / population std.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .graphs import InteractionGraph


class UndefinedMetricError(ValueError):
    """Raised when a feature has no meaningful value for the input."""


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


# -- traversal ----------------------------------------------------------------


def bfs_distances(adj, source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def connected_components(adj, nodes=None) -> list[list[int]]:
    """Components as sorted node lists, largest first (ties: smallest node)."""
    nodes = range(len(adj)) if nodes is None else nodes
    seen: set[int] = set()
    comps = []
    for s in nodes:
        if s in seen:
            continue
        comp = sorted(bfs_distances(adj, s))
        seen.update(comp)
        comps.append(comp)
    comps.sort(key=lambda c: (-len(c), c[0]))
    return comps


def induced(adj, nodes) -> list[set[int]]:
    """Subgraph on ``nodes`` relabelled to 0..len(nodes)-1 in the given order."""
    index = {u: i for i, u in enumerate(nodes)}
    return [{index[v] for v in adj[u] if v in index} for u in nodes]


def active_nodes(adj) -> list[int]:
    return [u for u in range(len(adj)) if adj[u]]


# -- distances ----------------------------------------------------------------


def average_shortest_path(adj) -> float:
    """Mean hop count over unordered pairs of a connected graph."""
    n = len(adj)
    if n < 2:
        raise UndefinedMetricError("average shortest path needs at least two nodes")
    total = 0
    for s in range(n):
        dist = bfs_distances(adj, s)
        if len(dist) != n:
            raise UndefinedMetricError("graph is disconnected")
        total += sum(dist.values())
    return total / (n * (n - 1))


def diameter(adj) -> int:
    n = len(adj)
    ecc = 0
    for s in range(n):
        dist = bfs_distances(adj, s)
        if len(dist) != n:
            raise UndefinedMetricError("graph is disconnected")
        ecc = max(ecc, max(dist.values()))
    return ecc


# -- centrality ---------------------------------------------------------------


def betweenness(adj) -> list[float]:
    """Brandes' algorithm, unnormalised, each unordered pair counted once."""
    n = len(adj)
    bc = [0.0] * n
    for s in range(n):
        stack = []
        preds: list[list[int]] = [[] for _ in range(n)]
        sigma = [0] * n
        sigma[s] = 1
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            stack.append(u)
            for v in adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue.append(v)
                if dist[v] == dist[u] + 1:
                    sigma[v] += sigma[u]
                    preds[v].append(u)
        delta = [0.0] * n
        while stack:
            w = stack.pop()
            for u in preds[w]:
                delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w])
            if w != s:
                bc[w] += delta[w]
    return [b / 2.0 for b in bc]


def central_point_of_dominance(adj) -> float:
    """Largest betweenness divided by the number of pairs that could route
    through a node, (n-1)(n-2)/2: 1 for a star centre, 0 for a complete graph."""
    n = len(adj)
    if n < 3:
        return 0.0
    return max(betweenness(adj)) / ((n - 1) * (n - 2) / 2)


def pagerank(weights: np.ndarray, damping: float = 0.85, tol: float = 1e-9, max_iter: int = 10_000) -> np.ndarray:
    """Power iteration on a weighted adjacency matrix; dangling nodes spread uniformly."""
    n = weights.shape[0]
    if n == 0:
        return np.zeros(0)
    out = weights.sum(axis=1)
    dangling = out == 0
    transition = np.divide(weights, out[:, None], out=np.zeros_like(weights, dtype=float), where=~dangling[:, None])
    rank = np.full(n, 1.0 / n)
    residual = math.inf
    for _ in range(max_iter):
        new = damping * (rank @ transition + rank[dangling].sum() / n) + (1.0 - damping) / n
        residual = float(np.abs(new - rank).sum())
        rank = new
        if residual < tol:
            return rank / rank.sum()
    raise ConvergenceError("pagerank did not converge", residual)


# -- cohesion -----------------------------------------------------------------


@dataclass
class CliqueResult:
    cliques: list[frozenset[int]]
    capped: bool = False


def maximal_cliques(adj, max_cliques: int | None = None) -> CliqueResult:
    """Bron-Kerbosch with Tomita pivoting. Isolated nodes are singleton cliques."""
    found: list[frozenset[int]] = []
    capped = False
    # explicit stack keeps deep graphs off the recursion limit
    stack = [(frozenset(), set(range(len(adj))), set())]
    while stack:
        r, p, x = stack.pop()
        if not p and not x:
            found.append(r)
            if max_cliques is not None and len(found) >= max_cliques:
                capped = True
                break
            continue
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in sorted(p - adj[pivot], reverse=True):
            stack.append((r | {v}, p & adj[v], x & adj[v]))
            p = p - {v}
            x = x | {v}
    return CliqueResult(found, capped)


def local_clustering(adj) -> list[float]:
    coeffs = []
    for u in range(len(adj)):
        k = len(adj[u])
        if k < 2:
            coeffs.append(0.0)
            continue
        links = sum(1 for v in adj[u] for w in adj[v] if w in adj[u]) // 2
        coeffs.append(links / (k * (k - 1) / 2))
    return coeffs


def core_numbers(adj) -> list[int]:
    """Coreness by repeatedly peeling a minimum-degree node."""
    n = len(adj)
    degree = [len(a) for a in adj]
    removed = [False] * n
    core = [0] * n
    k = 0
    for _ in range(n):
        u = min((d, i) for i, d in enumerate(degree) if not removed[i])[1]
        k = max(k, degree[u])
        core[u] = k
        removed[u] = True
        for v in adj[u]:
            if not removed[v]:
                degree[v] -= 1
    return core


# -- connectivity -------------------------------------------------------------


def _max_flow(cap: dict[int, dict[int, int]], s: int, t: int) -> int:
    """Edmonds-Karp on a residual dict-of-dicts (modified in place)."""
    flow = 0
    while True:
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            u = queue.popleft()
            for v, c in cap[u].items():
                if c > 0 and v not in parent:
                    parent[v] = u
                    queue.append(v)
        if t not in parent:
            return flow
        bottleneck = math.inf
        v = t
        while parent[v] is not None:
            bottleneck = min(bottleneck, cap[parent[v]][v])
            v = parent[v]
        v = t
        while parent[v] is not None:
            u = parent[v]
            cap[u][v] -= bottleneck
            cap[v][u] = cap[v].get(u, 0) + bottleneck
            v = u
        flow += bottleneck


def local_edge_connectivity(adj, s: int, t: int) -> int:
    cap: dict[int, dict[int, int]] = {u: {v: 1 for v in adj[u]} for u in range(len(adj))}
    return _max_flow(cap, s, t)


def local_vertex_connectivity(adj, s: int, t: int) -> int:
    """Internally disjoint s-t paths, via node splitting (u_in = 2u, u_out = 2u+1)."""
    n = len(adj)
    big = n + 1
    cap: dict[int, dict[int, int]] = {i: {} for i in range(2 * n)}
    for u in range(n):
        cap[2 * u][2 * u + 1] = big if u in (s, t) else 1
        for v in adj[u]:
            cap[2 * u + 1][2 * v] = big
    return _max_flow(cap, 2 * s + 1, 2 * t)


def edge_connectivity(adj) -> int:
    n = len(adj)
    if n < 2 or len(connected_components(adj)) > 1:
        return 0
    # every minimum cut separates node 0 from some other node
    return min(local_edge_connectivity(adj, 0, t) for t in range(1, n))


def vertex_connectivity(adj) -> int:
    """Minimum over non-adjacent pairs of the Menger path count; n-1 for complete graphs."""
    n = len(adj)
    if n < 2 or len(connected_components(adj)) > 1:
        return 0
    best = n - 1
    for s in range(n):
        for t in range(s + 1, n):
            if t not in adj[s]:
                best = min(best, local_vertex_connectivity(adj, s, t))
    return best


# -- feature assembly ---------------------------------------------------------


def _pstd(values) -> float:
    return float(np.std(np.asarray(values, dtype=float))) if len(values) else 0.0


def _skeleton(ig: InteractionGraph):
    adj = ig.neighbors()
    active = active_nodes(adj)
    return induced(adj, active), active


def distance_metrics(ig: InteractionGraph) -> dict[str, float]:
    sub, _ = _skeleton(ig)
    if len(sub) < 2:
        raise UndefinedMetricError("interaction graph has no edges")
    comps = connected_components(sub)
    largest = induced(sub, comps[0])
    return {
        "avg_shortest_path": average_shortest_path(largest),
        "diameter": diameter(largest),
        "ig_disconnected": float(len(comps) > 1),
    }


def degree_metrics(ig: InteractionGraph) -> dict[str, float]:
    n = ig.n_nodes
    if n < 2:
        raise UndefinedMetricError("degree metrics need at least two qubits")
    a = ig.adjacency(weighted=True)
    upper = a[np.triu_indices(n, k=1)]
    return {"avg_degree": float(a.sum(axis=1).mean()), "adjacency_std": float(np.std(upper))}


def centrality_metrics(ig: InteractionGraph) -> dict[str, float]:
    sub, active = _skeleton(ig)
    if not active:
        raise UndefinedMetricError("interaction graph has no edges")
    largest = induced(sub, connected_components(sub)[0])
    weights = ig.adjacency(weighted=True)[np.ix_(active, active)]
    return {
        "central_point_of_dominance": central_point_of_dominance(largest),
        "pagerank_std": _pstd(pagerank(weights)),
    }


def cohesion_metrics(ig: InteractionGraph, max_cliques: int | None = 100_000) -> dict[str, float]:
    sub, _ = _skeleton(ig)
    if not sub:
        raise UndefinedMetricError("interaction graph has no edges")
    cl = maximal_cliques(sub, max_cliques)
    core = core_numbers(sub)
    return {
        "n_maximal_cliques": len(cl.cliques),
        "max_clique_size": max(len(c) for c in cl.cliques),
        "cliques_capped": float(cl.capped),
        "clustering_coefficient": float(np.mean(local_clustering(sub))),
        "coreness_max": max(core),
        "coreness_mean": float(np.mean(core)),
    }


def connectivity_metrics(ig: InteractionGraph) -> dict[str, float]:
    sub, _ = _skeleton(ig)
    return {"vertex_connectivity": vertex_connectivity(sub), "edge_connectivity": edge_connectivity(sub)}


IG_FEATURES = (
    "avg_shortest_path",
    "adjacency_std",
    "diameter",
    "central_point_of_dominance",
    "avg_degree",
    "n_maximal_cliques",
    "max_clique_size",
    "clustering_coefficient",
    "vertex_connectivity",
    "edge_connectivity",
    "coreness_max",
    "coreness_mean",
    "pagerank_std",
    "ig_disconnected",
)


def ig_features(ig: InteractionGraph) -> dict[str, float | None]:
    """All IG features; metrics that are undefined for this graph are ``None``."""
    out: dict[str, float | None] = dict.fromkeys(IG_FEATURES)
    for fn in (distance_metrics, degree_metrics, centrality_metrics, cohesion_metrics, connectivity_metrics):
        try:
            out.update(fn(ig))
        except UndefinedMetricError:
            pass
    out.pop("cliques_capped", None)
    return out
