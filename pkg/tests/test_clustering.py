import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from qcprofile.clustering import (
    ClusterConfig,
    FeatureTable,
    impute_median,
    kmeans,
    log_transform,
    silhouette,
    standardize,
    two_level_cluster,
)

STRUCT = ("avg_degree", "density_score", "idling_score")
COLUMNS = ["n_qubits", "n_gates", "two_qubit_gate_pct", "depth", *STRUCT]


def same_partition(a, b) -> bool:
    a, b = np.asarray(a), np.asarray(b)
    pairs = set(zip(a.tolist(), b.tolist()))
    return len(pairs) == len(set(a.tolist())) == len(set(b.tolist()))


def planted_table(seed: int, n_per_group=10, n_tiny=6) -> tuple[FeatureTable, np.ndarray]:
    """Large circuits of similar size split into three structure groups, plus a few tiny ones."""
    rng = np.random.default_rng(seed)
    centers = np.array([[2.0, 0.1, 0.8], [6.0, 0.5, 0.4], [10.0, 0.9, 0.1]])
    rows, truth = [], []
    for g, center in enumerate(centers):
        for _ in range(n_per_group):
            size = [20, 2000 + rng.integers(-50, 50), 0.5 + rng.normal(0, 0.01), 400 + rng.integers(-10, 10)]
            rows.append(size + list(center + rng.normal(0, 0.05 * np.array([1, 0.1, 0.1]))))
            truth.append(g)
    for _ in range(n_tiny):
        rows.append([3, 5 + rng.integers(0, 3), 0.3, 4, 1.0, 0.2, 0.5])
        truth.append(-1)
    names = [f"c{i:02d}" for i in range(len(rows))]
    return FeatureTable(names, COLUMNS, np.array(rows, dtype=float)), np.array(truth)


def test_standardize_examples():
    t = standardize(FeatureTable(["a", "b", "c"], ["x"], [[1.0], [2.0], [3.0]]))
    assert np.allclose(t.values[:, 0], [-1.2247448713915890, 0, 1.2247448713915890], atol=1e-12)
    const = standardize(FeatureTable(["a", "b"], ["x"], [[5.0], [5.0]]))
    assert np.array_equal(const.values, np.zeros((2, 1)))


@given(arrays(float, (6, 3), elements=st.floats(-1e3, 1e3)))
def test_standardize_idempotent(vals):
    once = standardize(FeatureTable(list("abcdef"), ["x", "y", "z"], vals))
    twice = standardize(once)
    assert np.allclose(once.values, twice.values, atol=1e-9)


def test_impute_and_log():
    t = FeatureTable(["a", "b", "c"], ["n_gates", "x"], [[9.0, np.nan], [99.0, 1.0], [np.nan, 3.0]])
    filled, mask = impute_median(t)
    assert mask.sum() == 2
    assert filled.values[2, 0] == 54.0 and filled.values[0, 1] == 2.0
    logged = log_transform(filled, ("n_gates",))
    assert logged.values[0, 0] == pytest.approx(1.0) and logged.values[1, 0] == pytest.approx(2.0)
    assert logged.values[0, 1] == 2.0


def test_kmeans_small_examples():
    pts = [(0, 0), (0, 1), (10, 10), (10, 11)]
    res = kmeans(pts, 2, seed=3)
    assert same_partition(res.labels, [0, 0, 1, 1])
    one = kmeans(pts, 1)
    assert np.allclose(one.centroids[0], np.mean(pts, axis=0))
    with pytest.raises(ValueError):
        kmeans(pts, 5)


def test_kmeans_recovers_three_blobs():
    rng = np.random.default_rng(0)
    centers = np.array([[0, 0], [6, 0], [0, 6]])
    truth = np.repeat([0, 1, 2], 20)
    pts = centers[truth] + rng.normal(0, 0.1, (60, 2))
    res = kmeans(pts, 3, seed=1)
    assert same_partition(res.labels, truth)
    # Lloyd iterations never increase the objective
    assert all(b <= a + 1e-9 for a, b in itertools.pairwise(res.history))


def test_kmeans_is_deterministic():
    pts = np.random.default_rng(4).normal(size=(40, 3))
    a, b = kmeans(pts, 4, seed=9), kmeans(pts, 4, seed=9)
    assert np.array_equal(a.labels, b.labels) and a.wcss == b.wcss


def test_kmeans_with_duplicate_points():
    res = kmeans([[1.0], [1.0], [1.0], [2.0]], 3, seed=0)
    assert len(res.labels) == 4 and res.wcss == pytest.approx(0.0)


def test_silhouette_examples():
    pts = [[0.0], [1.0], [14.0], [15.0]]
    assert silhouette(pts, [0, 0, 1, 1]) == pytest.approx(0.93, abs=0.01)
    assert silhouette([[1.0]] * 4, [0, 0, 1, 1]) == 0.0
    with pytest.raises(ValueError):
        silhouette(pts, [0, 0, 0, 0])


def test_size_level_separates_scales():
    rows = [[2, 5, 0.2, 3]] * 4 + [[200, 90000, 0.6, 30000]] * 4
    rows = [list(r) for r in rows]
    rows[1][1] = 6
    rows[5][1] = 91000
    t = FeatureTable([f"c{i}" for i in range(8)], COLUMNS[:4], rows)
    a = two_level_cluster(t, ClusterConfig(k_size=2))
    assert same_partition(a.size_cluster, [0] * 4 + [1] * 4)


def test_planted_groups_recovered():
    hits = 0
    for seed in range(20):
        t, truth = planted_table(seed)
        a = two_level_cluster(t, ClusterConfig(k_size=2, seed=seed, structure_columns=STRUCT))
        big = truth >= 0
        big_cluster = set(a.size_cluster[big].tolist())
        if len(big_cluster) != 1:
            continue
        (c,) = big_cluster
        hits += a.sub_k[c] == 3 and same_partition(a.sub_cluster[big], truth[big])
    assert hits >= 19


def test_singleton_cluster_is_left_unsplit():
    t, _ = planted_table(0, n_tiny=0)
    outlier = [500, 10**6, 0.9, 2 * 10**5, 1.0, 0.5, 0.5]
    t = FeatureTable(t.names + ["huge"], COLUMNS, np.vstack([t.values, outlier]))
    a = two_level_cluster(t, ClusterConfig(k_size=2, structure_columns=STRUCT))
    c = int(a.size_cluster[-1])
    assert (a.size_cluster == c).sum() == 1
    assert a.sub_k[c] == 1 and a.sub_silhouette[c] is None
    doc = a.to_json()
    assert '"silhouette": null' in doc


def test_single_row_and_empty_tables():
    t = FeatureTable(["only"], COLUMNS, [[1, 2, 0.5, 2, 1, 0.1, 0.2]])
    a = two_level_cluster(t, ClusterConfig(structure_columns=STRUCT))
    assert a.size_cluster.tolist() == [0] and a.sub_k == {0: 1}
    with pytest.raises(ValueError):
        two_level_cluster(FeatureTable([], COLUMNS, np.zeros((0, len(COLUMNS)))))


def test_missing_values_are_imputed_and_reported():
    t, _ = planted_table(1)
    t.values[0, 4] = np.nan
    a = two_level_cluster(t, ClusterConfig(k_size=2, structure_columns=STRUCT))
    assert a.imputed == {"avg_degree": 1}


def test_serialization_is_deterministic():
    t, _ = planted_table(2)
    cfg = ClusterConfig(k_size=2, seed=5, structure_columns=STRUCT)
    a, b = two_level_cluster(t, cfg), two_level_cluster(t, cfg)
    assert a.to_json() == b.to_json() and a.to_csv() == b.to_csv()
