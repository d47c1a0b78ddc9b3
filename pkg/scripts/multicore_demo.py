"""Inter-core moves of the greedy partitioner on grid versus fully connected core layouts."""

import argparse

import numpy as np

from qcprofile.generators import random_circuit
from qcprofile.mapping import CapacityError, map_multicore
from qcprofile.mapping.topology import multicore_all_to_all, multicore_grid


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--circuits", type=int, default=20)
    ap.add_argument("--capacity", type=int, default=10)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    layouts = {
        "grid 2x2": multicore_grid(2, 2, args.capacity),
        "all-to-all 4": multicore_all_to_all(4, args.capacity),
    }
    print("circuit      " + "  ".join(f"{k:>13}" for k in layouts))
    for i in range(args.circuits):
        c = random_circuit(4 * args.capacity - 4, int(rng.integers(50, 300)), rng, 0.4)
        cells = []
        for topo in layouts.values():
            try:
                cells.append(str(map_multicore(c, topo)[0].inter_core_moves))
            except CapacityError:
                cells.append("infeasible")
        print(f"random_{i:<5} " + "  ".join(f"{x:>13}" for x in cells))


if __name__ == "__main__":
    main()
