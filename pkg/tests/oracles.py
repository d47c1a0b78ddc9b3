"""Brute-force reference implementations. Deliberately naive and independent
of the package code paths they check."""

from __future__ import annotations

import itertools
import math
from functools import reduce

import numpy as np

# -- graphs -------------------------------------------------------------------


def random_graph(n: int, p: float, rng, connected: bool = False) -> list[set[int]]:
    adj = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                adj[i].add(j)
                adj[j].add(i)
    if connected:
        order = list(rng.permutation(n))
        for a, b in zip(order, order[1:]):
            adj[a].add(b)
            adj[b].add(a)
    return adj


def floyd_warshall(adj) -> list[list[float]]:
    n = len(adj)
    d = [[0 if i == j else (1 if j in adj[i] else math.inf) for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def asp_and_diameter(adj) -> tuple[float, int]:
    d = floyd_warshall(adj)
    n = len(adj)
    pairs = [d[i][j] for i in range(n) for j in range(i + 1, n)]
    return sum(pairs) / len(pairs), max(pairs)


def is_connected(adj, nodes) -> bool:
    nodes = list(nodes)
    if len(nodes) <= 1:
        return True
    keep = set(nodes)
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v in keep and v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(keep)


def brute_cliques(adj) -> set[frozenset[int]]:
    n = len(adj)
    cliques = []
    for mask in range(1, 1 << n):
        s = [i for i in range(n) if mask >> i & 1]
        if all(b in adj[a] for a, b in itertools.combinations(s, 2)):
            cliques.append(frozenset(s))
    clique_set = set(cliques)
    return {c for c in cliques if not any(c | {v} in clique_set for v in range(n) if v not in c)}


def brute_vertex_connectivity(adj) -> int:
    n = len(adj)
    if not is_connected(adj, range(n)):
        return 0
    for k in range(n - 1):
        for removed in itertools.combinations(range(n), k):
            rest = [v for v in range(n) if v not in removed]
            if len(rest) >= 2 and not is_connected(adj, rest):
                return k
    return n - 1


def brute_edge_connectivity(adj) -> int:
    n = len(adj)
    if n < 2 or not is_connected(adj, range(n)):
        return 0
    best = math.inf
    # every cut is a bipartition; fix node 0 on one side
    for mask in range(0, 1 << (n - 1)):
        side = {0} | {i + 1 for i in range(n - 1) if mask >> i & 1}
        if len(side) == n:
            continue
        best = min(best, sum(1 for u in side for v in adj[u] if v not in side))
    return best


def brute_betweenness(adj) -> list[float]:
    """Pair-by-pair shortest-path counting via all simple shortest paths."""
    n = len(adj)
    d = floyd_warshall(adj)
    bc = [0.0] * n

    def count(s, t):
        # number of shortest s-t paths
        if s == t:
            return 1
        return sum(count(s, u) for u in adj[t] if d[s][u] == d[s][t] - 1)

    for s, t in itertools.combinations(range(n), 2):
        if d[s][t] == math.inf:
            continue
        total = count(s, t)
        for v in range(n):
            if v not in (s, t) and d[s][v] + d[v][t] == d[s][t]:
                bc[v] += count(s, v) * count(v, t) / total
    return bc


def brute_core_numbers(adj) -> list[int]:
    """Coreness from the k-core definition: largest k whose k-core contains the node."""
    n = len(adj)
    core = [0] * n
    for k in range(1, n):
        alive = set(range(n))
        changed = True
        while changed:
            changed = False
            for v in list(alive):
                if sum(1 for u in adj[v] if u in alive) < k:
                    alive.discard(v)
                    changed = True
        for v in alive:
            core[v] = k
    return core


# -- GDG paths ----------------------------------------------------------------


def enumerate_paths(children, source: int, sink: int, is_2q) -> list[tuple[int, int, tuple[int, ...]]]:
    """Every source->sink path as (gate count, two-qubit gate count, gate nodes)."""
    out = []

    def walk(u, trail):
        if u == sink:
            gates = tuple(trail)
            out.append((len(gates), sum(1 for g in gates if is_2q[g]), gates))
            return
        for v in children[u]:
            walk(v, trail + ([v] if v != sink else []))

    walk(source, [])
    return out


def brute_gdg(children, source: int, sink: int, is_2q) -> dict:
    paths = enumerate_paths(children, source, sink, is_2q)
    lengths = [p[0] for p in paths]
    L = max(lengths)
    crit = [p for p in paths if p[0] == L]
    M = max(p[1] for p in crit)
    return {
        "L": L,
        "n": len(paths),
        "N": len(crit),
        "M": M,
        "K": sum(1 for p in crit if p[1] == M),
        "m": float(np.mean(lengths)),
        "v": float(np.var(lengths)),
        "critical": set().union(*(set(p[2]) for p in crit)),
    }


# -- circuits -----------------------------------------------------------------


def longest_repeat_brute(tokens) -> tuple[int, int]:
    n = len(tokens)
    for length in range(n - 1, 0, -1):
        for start in range(n - length + 1):
            sub = tokens[start : start + length]
            hits = sum(1 for j in range(n - length + 1) if tokens[j : j + length] == sub)
            if hits >= 2:
                return length, hits
    return 0, 0


def longest_repeat_lcp(tokens) -> tuple[int, int]:
    """Quadratic variant: a table of common-prefix lengths over all suffix pairs."""
    n = len(tokens)
    if n < 2:
        return 0, 0
    lcp = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        row, below = lcp[i], lcp[i + 1]
        ti = tokens[i]
        for j in range(n - 1, -1, -1):
            if j != i and tokens[j] == ti:
                row[j] = below[j + 1] + 1
    best = max(max(row) for row in lcp)
    if best == 0:
        return 0, 0
    start = min(i for i in range(n) if max(lcp[i]) >= best)
    return best, 1 + sum(1 for j in range(n) if j != start and lcp[start][j] >= best)


def min_depth_exhaustive(n_qubits: int, gates) -> int:
    """Smallest depth over all layer assignments that keep per-qubit order and
    put at most one gate per qubit in a layer (branch and bound)."""
    n = len(gates)
    if n == 0:
        return 0
    best = [n]

    def assign(i, last_layer, depth):
        if depth >= best[0]:
            return
        if i == n:
            best[0] = depth
            return
        lo = max(last_layer[q] + 1 for q in gates[i])
        for layer in range(lo, n):
            saved = [last_layer[q] for q in gates[i]]
            for q in gates[i]:
                last_layer[q] = layer
            assign(i + 1, last_layer, max(depth, layer + 1))
            for q, s in zip(gates[i], saved):
                last_layer[q] = s

    assign(0, [-1] * n_qubits, 0)
    return best[0]


_S2 = 1 / math.sqrt(2)
ONE_Q = {
    "id": np.eye(2),
    "h": np.array([[_S2, _S2], [_S2, -_S2]]),
    "x": np.array([[0, 1], [1, 0]]),
    "y": np.array([[0, -1j], [1j, 0]]),
    "z": np.diag([1, -1]),
    "s": np.diag([1, 1j]),
    "sdg": np.diag([1, -1j]),
    "t": np.diag([1, np.exp(1j * math.pi / 4)]),
    "tdg": np.diag([1, np.exp(-1j * math.pi / 4)]),
    "sx": 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]]),
}


def gate_matrix(name: str, params=()) -> np.ndarray:
    """Matrix with the first listed qubit as the most significant bit."""
    if name in ONE_Q:
        return np.asarray(ONE_Q[name], dtype=complex)
    if name == "rz":
        (t,) = params
        return np.diag([np.exp(-0.5j * t), np.exp(0.5j * t)])
    if name in ("p", "u1"):
        (t,) = params
        return np.diag([1, np.exp(1j * t)])
    if name == "cx":
        return np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
    if name == "cz":
        return np.diag([1, 1, 1, -1]).astype(complex)
    if name in ("cp", "cu1"):
        (t,) = params
        return np.diag([1, 1, 1, np.exp(1j * t)])
    if name == "swap":
        return np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
    raise KeyError(name)


def circuit_unitary(n_qubits: int, gates) -> np.ndarray:
    """Full 2^n unitary; qubit 0 is the most significant bit. ``gates`` holds
    (name, qubits, params) triples."""
    dim = 2**n_qubits
    u = np.eye(dim, dtype=complex).reshape((2,) * n_qubits + (dim,))
    for name, qubits, params in gates:
        k = len(qubits)
        g = gate_matrix(name, params).reshape((2,) * (2 * k))
        u = np.tensordot(g, u, axes=(list(range(k, 2 * k)), list(qubits)))
        u = np.moveaxis(u, list(range(k)), list(qubits))
    return u.reshape(dim, dim)


def permutation_matrix(n_qubits: int, sigma) -> np.ndarray:
    """Operator that moves the bit on wire ``p`` to wire ``sigma[p]``."""
    dim = 2**n_qubits
    pm = np.zeros((dim, dim))
    for idx in range(dim):
        bits = [(idx >> (n_qubits - 1 - p)) & 1 for p in range(n_qubits)]
        out = [0] * n_qubits
        for p, b in enumerate(bits):
            out[sigma[p]] = b
        j = reduce(lambda acc, b: acc * 2 + b, out, 0)
        pm[j, idx] = 1
    return pm


def toffoli_matrix() -> np.ndarray:
    m = np.eye(8, dtype=complex)
    m[[6, 7]] = m[[7, 6]]
    return m
