"""Small circuit families and random corpora for tests and experiments."""

from __future__ import annotations

import math
from importlib import resources

import numpy as np

from .circuit import Circuit, Gate
from .qasm import parse_qasm

SINGLE_QUBIT = ("h", "x", "t", "s", "sx", "tdg")


def ghz(n: int) -> Circuit:
    ops = [Gate("h", (0,))] + [Gate("cx", (i, i + 1)) for i in range(n - 1)]
    return Circuit(n, tuple(ops), f"ghz_{n}", "real")


def qft(n: int, with_swaps: bool = True) -> Circuit:
    ops = []
    for i in range(n):
        ops.append(Gate("h", (i,)))
        for j in range(i + 1, n):
            ops.append(Gate("cp", (j, i), (math.pi / 2 ** (j - i),)))
    if with_swaps:
        ops += [Gate("swap", (i, n - 1 - i)) for i in range(n // 2)]
    return Circuit(n, tuple(ops), f"qft_{n}", "real")


def figure2_circuit() -> Circuit:
    """Six-qubit, eight-CNOT example circuit shipped as ``data/fig2a.qasm``."""
    text = resources.files("qcprofile.data").joinpath("fig2a.qasm").read_text()
    return parse_qasm(text, name="fig2a", origin_label="other")


def random_circuit(
    n_qubits: int,
    n_gates: int,
    rng: np.random.Generator,
    p_two_qubit: float = 0.5,
    pairs: list[tuple[int, int]] | None = None,
    name: str = "random",
) -> Circuit:
    """Uniform random gates; two-qubit gates draw from ``pairs`` when given."""
    ops = []
    for _ in range(n_gates):
        if n_qubits >= 2 and rng.random() < p_two_qubit:
            if pairs:
                a, b = pairs[int(rng.integers(len(pairs)))]
                if rng.random() < 0.5:
                    a, b = b, a
            else:
                a, b = (int(x) for x in rng.choice(n_qubits, size=2, replace=False))
            ops.append(Gate("cx", (a, b)))
        else:
            ops.append(Gate(SINGLE_QUBIT[int(rng.integers(len(SINGLE_QUBIT)))], (int(rng.integers(n_qubits)),)))
    return Circuit(n_qubits, tuple(ops), name, "random")


def random_pairs(n_qubits: int, edge_prob: float, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Erdos-Renyi edge set, forced connected by chaining a random spanning path."""
    order = [int(q) for q in rng.permutation(n_qubits)]
    pairs = {tuple(sorted((order[i], order[i + 1]))) for i in range(n_qubits - 1)}
    for i in range(n_qubits):
        for j in range(i + 1, n_qubits):
            if rng.random() < edge_prob:
                pairs.add((i, j))
    return sorted(pairs)


def density_corpus(
    n_circuits: int = 50, n_qubits: int = 16, seed: int = 0, n_gates_range: tuple[int, int] = (60, 200)
) -> list[Circuit]:
    """Circuits whose interaction graphs range from sparse paths to dense graphs.

    Edge probability and two-qubit share sweep together across the corpus so the
    IG degree varies over a wide range.
    """
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n_circuits):
        frac = i / max(1, n_circuits - 1)
        edge_prob = 0.02 + 0.6 * frac
        p2q = 0.2 + 0.6 * rng.random()
        n_gates = int(rng.integers(n_gates_range[0], n_gates_range[1] + 1))
        pairs = random_pairs(n_qubits, edge_prob, rng)
        out.append(random_circuit(n_qubits, n_gates, rng, p2q, pairs, name=f"dens_{i:03d}"))
    return out
