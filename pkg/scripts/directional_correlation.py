"""Correlate IG features with routing overhead on generated corpora.

Sweeps corpus seeds and coupling topologies, prints Pearson r between each
chosen feature and the gate overhead of the reference router.

    python3 scripts/directional_correlation.py --seeds 0 1 2 --topologies grid:4x4 linear:16
"""

import argparse
import time

from qcprofile.correlation import correlation_table
from qcprofile.features import profile_circuit
from qcprofile.generators import density_corpus
from qcprofile.mapping import load_topology, route_single_core

FEATURES = ("avg_degree", "avg_shortest_path", "adjacency_std", "density_score", "critical_path_length")


def run(seed: int, topology: str, n_circuits: int) -> dict[str, float | None]:
    corpus = density_corpus(n_circuits, seed=seed)
    topo = load_topology(topology)
    feats = {c.name: profile_circuit(c) for c in corpus}
    results = {c.name: route_single_core(c, topo)[0].metrics() for c in corpus}
    report = correlation_table(feats, results, FEATURES, ("gate_overhead", "depth_overhead"))
    return {f: report.r[(f, "gate_overhead")] for f in FEATURES}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2, 3, 4])
    ap.add_argument("--topologies", nargs="+", default=["grid:4x4", "linear:16", "ring:16"])
    ap.add_argument("--circuits", type=int, default=50)
    args = ap.parse_args()
    print("topology     seed  " + "  ".join(f"{f[:14]:>14}" for f in FEATURES))
    for topology in args.topologies:
        for seed in args.seeds:
            t0 = time.perf_counter()
            r = run(seed, topology, args.circuits)
            cells = "  ".join(f"{'n/a' if r[f] is None else f'{r[f]:+.3f}':>14}" for f in FEATURES)
            print(f"{topology:<12} {seed:>4}  {cells}   ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
