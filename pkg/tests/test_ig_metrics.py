import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import (
    asp_and_diameter,
    brute_betweenness,
    brute_cliques,
    brute_core_numbers,
    brute_edge_connectivity,
    brute_vertex_connectivity,
    random_graph,
)
from qcprofile.circuit import Circuit
from qcprofile.graphs import InteractionGraph, build_interaction_graph
from qcprofile.ig_metrics import (
    ConvergenceError,
    UndefinedMetricError,
    average_shortest_path,
    betweenness,
    central_point_of_dominance,
    cohesion_metrics,
    core_numbers,
    degree_metrics,
    diameter,
    distance_metrics,
    edge_connectivity,
    ig_features,
    local_clustering,
    maximal_cliques,
    pagerank,
    vertex_connectivity,
)


def complete(n):
    return [set(range(n)) - {i} for i in range(n)]


def path(n):
    return [{j for j in (i - 1, i + 1) if 0 <= j < n} for i in range(n)]


def star(leaves):
    return [set(range(1, leaves + 1))] + [{0} for _ in range(leaves)]


def ig_of(adj):
    return InteractionGraph.from_edges(len(adj), [(u, v) for u in range(len(adj)) for v in adj[u] if u < v])


# -- anchors ------------------------------------------------------------------


def test_distance_examples():
    assert average_shortest_path(path(3)) == pytest.approx(4 / 3)
    assert diameter(path(3)) == 2
    assert average_shortest_path(complete(3)) == 1 and diameter(complete(3)) == 1


def test_degree_examples():
    assert degree_metrics(ig_of(complete(3))) == {"avg_degree": 2.0, "adjacency_std": 0.0}
    two = InteractionGraph(2, {(0, 1): 2})
    assert degree_metrics(two) == {"avg_degree": 2.0, "adjacency_std": 0.0}
    c = Circuit.from_ops(3, [("cx", (0, 1))] * 3 + [("cx", (1, 2))])
    d = degree_metrics(build_interaction_graph(c))
    assert d["adjacency_std"] == pytest.approx(math.sqrt(14 / 9))
    assert d["adjacency_std"] == pytest.approx(1.247, abs=1e-3)


def test_centrality_examples():
    assert central_point_of_dominance(star(3)) == pytest.approx(1.0, abs=1e-12)
    assert central_point_of_dominance(complete(4)) == pytest.approx(0.0, abs=1e-12)
    pr = pagerank(np.ones((3, 3)) - np.eye(3))
    assert np.allclose(pr, 1 / 3)
    assert float(np.std(pr)) == pytest.approx(0.0, abs=1e-12)


def test_cohesion_examples():
    k3 = cohesion_metrics(ig_of(complete(3)))
    assert (k3["n_maximal_cliques"], k3["max_clique_size"], k3["clustering_coefficient"]) == (1, 3, 1.0)
    assert core_numbers(complete(3)) == [2, 2, 2]
    s3 = cohesion_metrics(ig_of(star(3)))
    assert (s3["n_maximal_cliques"], s3["max_clique_size"], s3["clustering_coefficient"]) == (3, 2, 0.0)
    assert core_numbers(star(3)) == [1, 1, 1, 1]


def test_connectivity_examples():
    assert (vertex_connectivity(complete(3)), edge_connectivity(complete(3))) == (2, 2)
    assert (vertex_connectivity(path(3)), edge_connectivity(path(3))) == (1, 1)
    disjoint = [{1}, {0}, {3}, {2}]
    assert (vertex_connectivity(disjoint), edge_connectivity(disjoint)) == (0, 0)


@pytest.mark.parametrize("n", range(3, 9))
def test_complete_graph_family(n):
    g = complete(n)
    assert vertex_connectivity(g) == edge_connectivity(g) == n - 1
    assert central_point_of_dominance(g) == 0.0
    assert maximal_cliques(g).cliques == [frozenset(range(n))]
    assert core_numbers(g) == [n - 1] * n
    assert local_clustering(g) == [1.0] * n


# -- errors -------------------------------------------------------------------


def test_edgeless_graph_is_undefined():
    ig = InteractionGraph(3, {})
    with pytest.raises(UndefinedMetricError):
        distance_metrics(ig)
    feats = ig_features(ig)
    assert feats["avg_shortest_path"] is None and feats["central_point_of_dominance"] is None
    assert feats["avg_degree"] == 0.0


def test_pagerank_reports_residual():
    with pytest.raises(ConvergenceError) as info:
        pagerank(np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]), max_iter=1, tol=0)
    assert info.value.residual >= 0


def test_clique_cap_flags_lower_bound():
    # the complement of a perfect matching on 12 nodes has 2^6 maximal cliques
    n = 12
    adj = [set(range(n)) - {i, i ^ 1} for i in range(n)]
    full = maximal_cliques(adj)
    assert len(full.cliques) == 64 and not full.capped
    capped = maximal_cliques(adj, max_cliques=10)
    assert capped.capped and len(capped.cliques) == 10


def test_disconnected_ig_uses_largest_component():
    c = Circuit.from_ops(6, [("cx", (0, 1)), ("cx", (1, 2)), ("cx", (3, 4))])
    d = distance_metrics(build_interaction_graph(c))
    assert d == {"avg_shortest_path": pytest.approx(4 / 3), "diameter": 2, "ig_disconnected": 1.0}


# -- oracles ------------------------------------------------------------------


def test_cliques_match_subset_enumeration():
    rng = np.random.default_rng(1)
    for _ in range(40):
        adj = random_graph(int(rng.integers(1, 10)), float(rng.uniform(0.1, 0.9)), rng)
        assert set(maximal_cliques(adj).cliques) == brute_cliques(adj)


def test_connectivity_matches_removal_enumeration():
    rng = np.random.default_rng(2)
    for _ in range(40):
        adj = random_graph(int(rng.integers(2, 9)), float(rng.uniform(0.2, 0.95)), rng)
        assert vertex_connectivity(adj) == brute_vertex_connectivity(adj)
        assert edge_connectivity(adj) == brute_edge_connectivity(adj)


def test_distances_match_floyd_warshall():
    rng = np.random.default_rng(3)
    for _ in range(40):
        adj = random_graph(int(rng.integers(2, 13)), float(rng.uniform(0.05, 0.6)), rng, connected=True)
        asp, diam = asp_and_diameter(adj)
        assert average_shortest_path(adj) == pytest.approx(asp, rel=1e-12)
        assert diameter(adj) == diam


def test_betweenness_and_coreness_match_definitions():
    rng = np.random.default_rng(4)
    for _ in range(40):
        adj = random_graph(int(rng.integers(1, 9)), float(rng.uniform(0.1, 0.8)), rng)
        assert np.allclose(betweenness(adj), brute_betweenness(adj))
        assert core_numbers(adj) == brute_core_numbers(adj)


# -- properties ---------------------------------------------------------------


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    adj = [set() for _ in range(n)]
    for a, b in chosen:
        adj[a].add(b)
        adj[b].add(a)
    return adj


@given(graphs())
def test_whitney_and_core_clique_bounds(adj):
    min_deg = min(len(a) for a in adj)
    kappa, lam = vertex_connectivity(adj), edge_connectivity(adj)
    if len(adj) >= 2:
        assert kappa <= lam <= min_deg
    cl = maximal_cliques(adj).cliques
    assert max(core_numbers(adj)) >= max(len(c) for c in cl) - 1
    assert all(0.0 <= x <= 1.0 for x in local_clustering(adj))


@given(graphs(), st.randoms(use_true_random=False))
def test_relabelling_leaves_features_unchanged(adj, rnd):
    n = len(adj)
    perm = list(range(n))
    rnd.shuffle(perm)
    moved = [set() for _ in range(n)]
    for u in range(n):
        for v in adj[u]:
            moved[perm[u]].add(perm[v])
    a, b = ig_features(ig_of(adj)), ig_features(ig_of(moved))
    assert a.keys() == b.keys()
    for k in a:
        if a[k] is None:
            assert b[k] is None
        else:
            assert a[k] == pytest.approx(b[k], rel=1e-9, abs=1e-12), k
