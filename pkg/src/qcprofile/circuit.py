"""Gate-list circuit representation, ASAP layering and size features."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

ORIGIN_LABELS = ("real", "random", "queko", "other")


@dataclass(frozen=True)
class Gate:
    name: str
    qubits: tuple[int, ...]
    params: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        if len(self.qubits) not in (1, 2):
            raise ValueError(f"gate {self.name!r} has arity {len(self.qubits)}; only 1 or 2 allowed")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"gate {self.name!r} repeats a qubit: {self.qubits}")

    @property
    def is_two_qubit(self) -> bool:
        return len(self.qubits) == 2

    def __str__(self) -> str:
        args = ",".join(str(q) for q in self.qubits)
        if self.params:
            return f"{self.name}({','.join(repr(p) for p in self.params)}) {args}"
        return f"{self.name} {args}"


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple[Gate, ...] = ()
    name: str = "circuit"
    origin_label: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.n_qubits < 0:
            raise ValueError("n_qubits must be non-negative")
        for g in self.gates:
            for q in g.qubits:
                if not 0 <= q < self.n_qubits:
                    raise ValueError(f"gate {g} uses qubit {q} outside [0, {self.n_qubits})")
        if self.origin_label is not None and self.origin_label not in ORIGIN_LABELS:
            raise ValueError(f"origin_label must be one of {ORIGIN_LABELS}, got {self.origin_label!r}")

    @classmethod
    def from_ops(cls, n_qubits: int, ops: Iterable, name: str = "circuit", origin_label: str | None = None) -> Circuit:
        """Build from ``(name, qubits)`` or ``(name, qubits, params)`` tuples."""
        gates = []
        for op in ops:
            if isinstance(op, Gate):
                gates.append(op)
                continue
            gname, qubits, *rest = op
            if isinstance(qubits, int):
                qubits = (qubits,)
            gates.append(Gate(gname, tuple(qubits), tuple(rest[0]) if rest else ()))
        return cls(n_qubits, tuple(gates), name, origin_label)

    @property
    def n_gates(self) -> int:
        return len(self.gates)

    @property
    def n_two_qubit_gates(self) -> int:
        return sum(1 for g in self.gates if g.is_two_qubit)

    @property
    def n_single_qubit_gates(self) -> int:
        return self.n_gates - self.n_two_qubit_gates

    def append(self, *gates: Gate) -> Circuit:
        return Circuit(self.n_qubits, self.gates + tuple(gates), self.name, self.origin_label)

    def relabel(self, perm) -> Circuit:
        """Return the circuit with qubit ``q`` renamed to ``perm[q]``."""
        gates = tuple(Gate(g.name, tuple(perm[q] for q in g.qubits), g.params) for g in self.gates)
        return Circuit(self.n_qubits, gates, self.name, self.origin_label)


@dataclass(frozen=True)
class Layering:
    layer_of_gate: tuple[int, ...]
    depth: int
    layers: tuple[tuple[int, ...], ...] = field(default=(), repr=False)


def asap_layering(c: Circuit) -> Layering:
    """Schedule every gate one layer after the latest earlier gate on any of its qubits."""
    next_free = [0] * c.n_qubits
    layer_of_gate = []
    for g in c.gates:
        layer = max(next_free[q] for q in g.qubits)
        for q in g.qubits:
            next_free[q] = layer + 1
        layer_of_gate.append(layer)
    depth = max(layer_of_gate) + 1 if layer_of_gate else 0
    buckets: list[list[int]] = [[] for _ in range(depth)]
    for i, layer in enumerate(layer_of_gate):
        buckets[layer].append(i)
    return Layering(tuple(layer_of_gate), depth, tuple(tuple(b) for b in buckets))


def size_features(c: Circuit, layering: Layering | None = None) -> dict[str, float]:
    if layering is None:
        layering = asap_layering(c)
    pct = c.n_two_qubit_gates / c.n_gates if c.n_gates else 0.0
    return {
        "n_qubits": c.n_qubits,
        "n_gates": c.n_gates,
        "two_qubit_gate_pct": pct,
        "depth": layering.depth,
    }


def gate_token(g: Gate) -> str:
    # params are left out on purpose: rotation angles would make every token unique
    return f"{g.name}:{','.join(str(q) for q in g.qubits)}"


def gate_token_sequence(c: Circuit) -> list[str]:
    return [gate_token(g) for g in c.gates]
