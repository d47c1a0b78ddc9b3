"""Two-level clustering of a mixed generated corpus, printed as a summary table.

Each row is one size cluster with its member count, the silhouette-selected
number of structure sub-clusters and the level-two silhouette ("-" when the
cluster was too small to split).
"""

import argparse

import numpy as np

from qcprofile.clustering import ClusterConfig, FeatureTable, two_level_cluster
from qcprofile.features import FEATURE_COLUMNS, profile_circuit
from qcprofile.generators import density_corpus, ghz, qft, random_circuit


def corpus(seed: int):
    rng = np.random.default_rng(seed)
    out = [ghz(n) for n in (3, 5, 8, 12)] + [qft(n) for n in (3, 5, 7)]
    out += density_corpus(30, n_qubits=10, seed=seed, n_gates_range=(40, 120))
    out += [random_circuit(20, int(rng.integers(400, 900)), rng, 0.5, name=f"big_{i}") for i in range(8)]
    out.append(random_circuit(40, 5000, rng, 0.5, name="huge"))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--k-size", type=int, default=5)
    ap.add_argument("--profile", default="single-core", choices=["single-core", "multi-core", "all"])
    args = ap.parse_args()
    circuits = corpus(args.seed)
    rows = [profile_circuit(c) for c in circuits]
    table = FeatureTable.from_rows([c.name for c in circuits], rows, FEATURE_COLUMNS)
    result = two_level_cluster(table, ClusterConfig(k_size=args.k_size, seed=args.seed, profile=args.profile))
    print(f"size-level silhouette: {result.size_silhouette}")
    print("cluster | members | sub-clusters | silhouette | mean n_gates")
    for c in sorted(result.sub_k):
        sil = result.sub_silhouette[c]
        members = int((result.size_cluster == c).sum())
        mean_gates = result.size_centroids[c]["n_gates"]
        print(f"{c:>7} | {members:>7} | {result.sub_k[c]:>12} | {'-' if sil is None else f'{sil:.3f}':>10} | {mean_gates:.0f}")


if __name__ == "__main__":
    main()
