"""Circuit density and qubit idling scores."""

from __future__ import annotations

from .circuit import Circuit, Layering, asap_layering
from .ig_metrics import UndefinedMetricError


def density_score(c: Circuit, layering: Layering | None = None) -> float:
    """Qubit-slots filled per layer, rescaled so one gate per layer gives 0 and
    a full layer of two-qubit gates gives 1."""
    layering = layering or asap_layering(c)
    if c.n_qubits < 2 or layering.depth == 0:
        raise UndefinedMetricError("density needs at least two qubits and one gate")
    per_layer = (2 * c.n_two_qubit_gates + c.n_single_qubit_gates) / layering.depth
    return (per_layer - 1) / (c.n_qubits - 1)


def idling_score(c: Circuit, layering: Layering | None = None) -> float:
    layering = layering or asap_layering(c)
    d = layering.depth
    if d == 0 or c.n_qubits == 0:
        raise UndefinedMetricError("idling is undefined for an empty circuit")
    busy = [0] * c.n_qubits
    for g in c.gates:
        # a qubit hosts at most one gate per layer, so counting gates counts layers
        for q in g.qubits:
            busy[q] += 1
    return sum(d - b for b in busy) / (c.n_qubits * d)


def density_features(c: Circuit, layering: Layering | None = None) -> dict[str, float | None]:
    layering = layering or asap_layering(c)
    out: dict[str, float | None] = {}
    for key, fn in (("density_score", density_score), ("idling_score", idling_score)):
        try:
            out[key] = fn(c, layering)
        except UndefinedMetricError:
            out[key] = None
    return out
