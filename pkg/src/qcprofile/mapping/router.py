"""Baseline SWAP-insertion router for single-core coupling graphs.

Placement starts as the identity onto the breadth-first order of the device
(from physical qubit 0, neighbours visited by index). Before each two-qubit
gate whose operands sit on uncoupled qubits, the first operand is swapped
one hop at a time along a shortest path towards the second.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ..circuit import Circuit, Gate
from ..correlation import CircuitStats, ErrorModel, MappingResult, performance_metrics
from .topology import CouplingTopology


class TopologyTooSmallError(ValueError):
    pass


class RoutingCheckError(AssertionError):
    pass


@dataclass(frozen=True)
class RoutedCircuit:
    circuit: Circuit  # over physical qubits, SWAPs as ``swap`` gates
    initial_layout: tuple[int, ...]  # logical -> physical
    final_layout: tuple[int, ...]
    n_swaps: int
    inserted: tuple[int, ...] = ()  # positions of routing SWAPs in ``circuit.gates``


def bfs_order(t: CouplingTopology, start: int = 0) -> list[int]:
    order = [start]
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in t.neighbors(u):
            if v not in seen:
                seen.add(v)
                order.append(v)
                queue.append(v)
    return order


def shortest_path(t: CouplingTopology, src: int, dst: int) -> list[int]:
    """BFS path; among equal-length paths the one through lower-indexed qubits
    (compared hop by hop from ``src``) wins."""
    path = [src]
    u = src
    while u != dst:
        u = min(v for v in t.neighbors(u) if t.distance(v, dst) == t.distance(u, dst) - 1)
        path.append(u)
    return path


def route(c: Circuit, t: CouplingTopology) -> RoutedCircuit:
    if c.n_qubits > t.n_physical:
        raise TopologyTooSmallError(f"{c.name}: {c.n_qubits} qubits do not fit on {t.name} ({t.n_physical})")
    layout = bfs_order(t)[: c.n_qubits]
    initial = tuple(layout)
    occupant = {p: q for q, p in enumerate(layout)}
    out: list[Gate] = []
    inserted: list[int] = []
    n_swaps = 0
    for g in c.gates:
        if g.is_two_qubit:
            a, b = g.qubits
            while not t.coupled(layout[a], layout[b]):
                pa = layout[a]
                nxt = shortest_path(t, pa, layout[b])[1]
                inserted.append(len(out))
                out.append(Gate("swap", (pa, nxt)))
                n_swaps += 1
                other = occupant.get(nxt)
                layout[a] = nxt
                occupant[nxt] = a
                if other is None:
                    del occupant[pa]
                else:
                    layout[other] = pa
                    occupant[pa] = other
        out.append(Gate(g.name, tuple(layout[q] for q in g.qubits), g.params))
    mapped = Circuit(t.n_physical, tuple(out), f"{c.name}@{t.name}", c.origin_label)
    return RoutedCircuit(mapped, initial, tuple(layout), n_swaps, tuple(inserted))


def check_routed(original: Circuit, routed: RoutedCircuit, t: CouplingTopology) -> None:
    """Replay ``routed`` against ``original`` and raise on any inconsistency.

    Every two-qubit gate must act on a coupled pair, the non-SWAP gates must be
    the original gates in order under the layout implied by the SWAPs so far,
    and the replayed layout must end at ``routed.final_layout``.
    """
    layout = list(routed.initial_layout)
    where = {p: q for q, p in enumerate(layout)}
    pending = iter(original.gates)
    inserted = set(routed.inserted)
    n_swaps = 0
    for i, g in enumerate(routed.circuit.gates):
        if g.is_two_qubit and not t.coupled(*g.qubits):
            raise RoutingCheckError(f"{g} acts on uncoupled physical qubits")
        if i in inserted:
            if g.name != "swap":
                raise RoutingCheckError(f"inserted gate {g} is not a SWAP")
            a, b = g.qubits
            qa, qb = where.pop(a, None), where.pop(b, None)
            if qa is not None:
                layout[qa] = b
                where[b] = qa
            if qb is not None:
                layout[qb] = a
                where[a] = qb
            n_swaps += 1
            continue
        expected = next(pending, None)
        if expected is None or expected.name != g.name or expected.params != g.params:
            raise RoutingCheckError(f"unexpected gate {g}")
        if tuple(layout[q] for q in expected.qubits) != g.qubits:
            raise RoutingCheckError(f"{g} does not match {expected} under the tracked layout")
    if next(pending, None) is not None:
        raise RoutingCheckError("routed circuit drops gates")
    if tuple(layout) != routed.final_layout or n_swaps != routed.n_swaps:
        raise RoutingCheckError("final layout or swap count disagrees with the replay")


def route_single_core(
    c: Circuit,
    t: CouplingTopology,
    seed: int = 0,
    swap_cost: int = 3,
    error_model: ErrorModel | None = None,
) -> tuple[MappingResult, RoutedCircuit]:
    """Route ``c`` and score it. Each SWAP costs ``swap_cost`` two-qubit gates
    in the gate and fidelity accounting and one layer in the depth.

    ``seed`` is accepted for interface symmetry; every tie is broken by index,
    so the result does not depend on it.
    """
    del seed
    routed = route(c, t)
    check_routed(c, routed, t)
    before = CircuitStats.of(c)
    after_depth = CircuitStats.of(routed.circuit).depth
    after = CircuitStats(before.n_1q, before.n_2q + swap_cost * routed.n_swaps, after_depth)
    return performance_metrics(before, after, error_model), routed
