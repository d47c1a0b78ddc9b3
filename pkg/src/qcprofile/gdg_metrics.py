"""Path statistics of the gate-dependency graph.

All quantities are evaluated bottom-up over the reversed topological order,
each node combining the values of its children:

    L  longest gate count to the sink          n  number of paths to the sink
    N  number of longest (critical) paths      M  max two-qubit gates on a critical path
    K  critical paths reaching M               m, v  mean / variance of path lengths

The mean and variance of a node are the pooled statistics of its children's
path-length populations, each shifted by one for the node itself. Sentinels
are not gates, so the source adds nothing to the lengths it aggregates.
Counts are Python ints and therefore exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graphs import GateDependencyGraph


@dataclass(frozen=True)
class GdgFeatureSet:
    critical_path_length: int
    n_critical_paths: int
    n_paths: int
    path_length_mean: float
    path_length_variance: float
    pct_gates_in_critical_path: float
    max_2q_in_critical: int
    n_critical_with_max_2q: int

    @property
    def path_length_std(self) -> float:
        return math.sqrt(self.path_length_variance)

    def as_features(self) -> dict[str, float]:
        return {
            "critical_path_length": self.critical_path_length,
            "n_critical_paths": self.n_critical_paths,
            "n_paths": self.n_paths,
            "log10_n_critical_paths": _log10(self.n_critical_paths),
            "log10_n_paths": _log10(self.n_paths),
            "path_length_mean": self.path_length_mean,
            "path_length_std": self.path_length_std,
            "pct_gates_in_critical_path": self.pct_gates_in_critical_path,
            "max_2q_in_critical": self.max_2q_in_critical,
            "n_critical_with_max_2q": self.n_critical_with_max_2q,
        }


def _log10(n: int) -> float:
    # math.log10 accepts arbitrarily large ints without float overflow
    return math.log10(n) if n > 0 else 0.0


@dataclass
class PathTables:
    """Per-node recurrence values, indexed by GDG node id."""

    L: list[int]
    n: list[int]
    N: list[int]
    M: list[int]
    K: list[int]
    m: list[float]
    v: list[float]


def path_tables(g: GateDependencyGraph) -> PathTables:
    size = g.n_nodes
    L = [0] * size
    n = [0] * size
    N = [0] * size
    M = [0] * size
    K = [0] * size
    m = [0.0] * size
    v = [0.0] * size
    sink = g.sink
    n[sink] = N[sink] = K[sink] = 1

    for w in reversed(g.order):
        if w == sink:
            continue
        kids = g.children[w]
        step = 0 if w == g.SOURCE else 1
        L[w] = step + max(L[c] for c in kids)
        critical = [c for c in kids if L[w] == step + L[c]]
        n[w] = sum(n[c] for c in kids)
        N[w] = sum(N[c] for c in kids if c in critical)
        bump = 1 if g.is_two_qubit[w] else 0
        M[w] = bump + max(M[c] for c in critical)
        K[w] = sum(K[c] for c in critical if M[c] + bump == M[w])
        # int / int stays exact-then-rounded even when counts exceed float range
        share = [n[c] / n[w] for c in kids]
        mean = sum(p * (m[c] + step) for p, c in zip(share, kids))
        m[w] = mean
        v[w] = sum(p * (v[c] + (m[c] + step - mean) ** 2) for p, c in zip(share, kids))
    return PathTables(L, n, N, M, K, m, v)


def forward_longest(g: GateDependencyGraph) -> list[int]:
    """Longest gate count from the source to each node, not counting the node."""
    fwd = [0] * g.n_nodes
    for u in g.order:
        own = 1 if u in g.gate_nodes else 0
        for c in g.children[u]:
            fwd[c] = max(fwd[c], fwd[u] + own)
    return fwd


def critical_gates(g: GateDependencyGraph, tables: PathTables | None = None) -> set[int]:
    """Gate nodes lying on at least one critical path."""
    if tables is None:
        tables = path_tables(g)
    fwd = forward_longest(g)
    total = tables.L[g.SOURCE]
    return {w for w in g.gate_nodes if fwd[w] + tables.L[w] == total}


def pct_gates_in_critical_path(g: GateDependencyGraph, tables: PathTables | None = None) -> float:
    if g.n_gates == 0:
        raise ValueError("critical-path percentage is undefined for an empty circuit")
    return len(critical_gates(g, tables)) / g.n_gates


def gdg_path_features(g: GateDependencyGraph) -> GdgFeatureSet:
    t = path_tables(g)
    s = g.SOURCE
    pct = pct_gates_in_critical_path(g, t) if g.n_gates else 0.0
    return GdgFeatureSet(
        critical_path_length=t.L[s],
        n_critical_paths=t.N[s],
        n_paths=t.n[s],
        path_length_mean=t.m[s],
        path_length_variance=max(t.v[s], 0.0),
        pct_gates_in_critical_path=pct,
        max_2q_in_critical=t.M[s],
        n_critical_with_max_2q=t.K[s],
    )
