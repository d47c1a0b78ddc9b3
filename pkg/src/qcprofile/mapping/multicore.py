"""Greedy time-sliced qubit-to-core partitioner.

Each ASAP layer is a slice. Before a slice executes, every two-qubit pair in
it must sit in one core. Violations are fixed one pair at a time by moving
the operand with fewer interactions in later slices into its partner's core,
evicting the least-used unlocked qubit there when the core is full. A move
between cores ``i`` and ``j`` costs ``hops(i, j)`` inter-core communications.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from ..circuit import Circuit, Layering, asap_layering
from ..correlation import CircuitStats, ErrorModel, MappingResult, performance_metrics
from .topology import MultiCoreTopology


class CapacityError(ValueError):
    pass


@dataclass(frozen=True)
class Slice:
    index: int
    gates: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]
    qubits: frozenset[int]


def slice_circuit(c: Circuit, layering: Layering | None = None) -> list[Slice]:
    layering = layering or asap_layering(c)
    out = []
    for i, gates in enumerate(layering.layers):
        pairs = tuple(tuple(sorted(c.gates[g].qubits)) for g in gates if c.gates[g].is_two_qubit)
        qubits = frozenset(q for g in gates for q in c.gates[g].qubits)
        out.append(Slice(i, tuple(gates), pairs, qubits))
    return out


@dataclass(frozen=True)
class Move:
    slice: int
    qubit: int
    src: int
    dst: int
    hops: int


@dataclass(frozen=True)
class PartitionResult:
    initial: tuple[int, ...]  # qubit -> core
    placements: tuple[tuple[int, ...], ...]  # per slice, after its moves
    moves: tuple[Move, ...]

    @property
    def inter_core_moves(self) -> int:
        return sum(m.hops for m in self.moves)


def _interaction_weights(slices: list[Slice]) -> Counter:
    w: Counter = Counter()
    for s in slices:
        w.update(s.pairs)
    return w


def initial_assignment(n_qubits: int, slices: list[Slice], t: MultiCoreTopology) -> list[int]:
    """Greedy packing on the whole-circuit interaction graph.

    Repeatedly take the unassigned qubit most strongly tied to already placed
    qubits (then by total weight, then index) and put it in the open core of
    its heaviest placed neighbour; qubits with no placed neighbour go to the
    least loaded open core.
    """
    weights = _interaction_weights(slices)
    nbr: dict[int, Counter] = {q: Counter() for q in range(n_qubits)}
    for (a, b), w in weights.items():
        nbr[a][b] += w
        nbr[b][a] += w
    total = {q: sum(nbr[q].values()) for q in range(n_qubits)}
    core = [-1] * n_qubits
    load = [0] * t.n_cores
    tie = {q: 0 for q in range(n_qubits)}
    unassigned = set(range(n_qubits))
    while unassigned:
        q = min(unassigned, key=lambda u: (-tie[u], -total[u], u))
        unassigned.discard(q)
        target = None
        placed = sorted((-w, v) for v, w in nbr[q].items() if core[v] >= 0)
        for _, v in placed:
            if load[core[v]] < t.capacity:
                target = core[v]
                break
        if target is None:
            target = min((c for c in range(t.n_cores) if load[c] < t.capacity), key=lambda c: (load[c], c))
        core[q] = target
        load[target] += 1
        for v, w in nbr[q].items():
            tie[v] += w
    return core


def _future_interactions(slices: list[Slice]) -> list[Counter]:
    """``after[i][q]`` = pairs involving ``q`` in slices strictly after ``i``."""
    after = [Counter() for _ in slices]
    running: Counter = Counter()
    for i in range(len(slices) - 1, -1, -1):
        after[i] = running.copy()
        for a, b in slices[i].pairs:
            running[a] += 1
            running[b] += 1
    return after


def check_slice_feasible(s: Slice, t: MultiCoreTopology):
    if len(s.pairs) > t.n_cores * (t.capacity // 2):
        raise CapacityError(
            f"slice {s.index} has {len(s.pairs)} interacting pairs but the cores hold at most "
            f"{t.n_cores * (t.capacity // 2)} co-located pairs"
        )


class _State:
    def __init__(self, core: list[int], t: MultiCoreTopology):
        self.core = core
        self.t = t
        self.members: list[set[int]] = [set() for _ in range(t.n_cores)]
        for q, c in enumerate(core):
            self.members[c].add(q)
        self.moves: list[Move] = []

    def free(self, c: int) -> int:
        return self.t.capacity - len(self.members[c])

    def move(self, slice_idx: int, q: int, dst: int):
        src = self.core[q]
        self.members[src].discard(q)
        self.members[dst].add(q)
        self.core[q] = dst
        self.moves.append(Move(slice_idx, q, src, dst, self.t.hops(src, dst)))

    def nearest_free(self, origin: int, exclude: int) -> int:
        options = [c for c in range(self.t.n_cores) if c != exclude and self.free(c) > 0]
        return min(options, key=lambda c: (self.t.hops(origin, c), c))


def _bring_into(state: _State, si: int, movers: list[int], dst: int, pinned: set[int], future: Counter) -> bool:
    """Move ``movers`` into core ``dst``, evicting residents not in ``pinned``
    as needed. Returns False (and changes nothing) when there is not enough room."""
    incoming = [q for q in movers if state.core[q] != dst]
    need = len(incoming) - state.free(dst)
    keep = set(movers) | pinned
    victims = sorted((q for q in state.members[dst] if q not in keep), key=lambda q: (future[q], q))
    if need > len(victims):
        return False
    for q in incoming:
        state.members[state.core[q]].discard(q)  # vacate first so evictees can use the slot
    origins = {q: state.core[q] for q in incoming}
    for victim in victims[: max(need, 0)]:
        state.move(si, victim, state.nearest_free(dst, exclude=dst))
    for q in incoming:
        state.members[origins[q]].add(q)
        state.move(si, q, dst)
    return True


def partition_multicore(
    slices: list[Slice], t: MultiCoreTopology, n_qubits: int | None = None, initial: list[int] | None = None
) -> PartitionResult:
    if n_qubits is None:
        n_qubits = 1 + max((q for s in slices for q in s.qubits), default=-1)
    if n_qubits > t.total_capacity:
        raise CapacityError(f"{n_qubits} qubits exceed total capacity {t.total_capacity}")
    for s in slices:
        check_slice_feasible(s, t)
    if initial is None:
        initial = initial_assignment(n_qubits, slices, t)
    initial = list(initial)
    if len(initial) != n_qubits or any(Counter(initial)[c] > t.capacity for c in set(initial)):
        raise CapacityError("initial assignment violates core capacity")
    state = _State(list(initial), t)
    future = _future_interactions(slices)
    placements = []
    for s in slices:
        locked: set[int] = set()
        fut = future[s.index]
        for a, b in s.pairs:
            if state.core[a] != state.core[b]:
                pinned = locked | {a, b}
                mover, stay = (a, b) if (fut[a], a) <= (fut[b], b) else (b, a)
                done = _bring_into(state, s.index, [mover], state.core[stay], pinned, fut) or _bring_into(
                    state, s.index, [stay], state.core[mover], pinned, fut
                )
                if not done:
                    ca, cb = state.core[a], state.core[b]
                    for c in sorted(range(t.n_cores), key=lambda c: (t.hops(ca, c) + t.hops(cb, c), c)):
                        if _bring_into(state, s.index, [a, b], c, pinned, fut):
                            done = True
                            break
                if not done:
                    raise CapacityError(f"could not co-locate pair {(a, b)} in slice {s.index}")
            locked.update((a, b))
        placements.append(tuple(state.core))
    return PartitionResult(tuple(initial), tuple(placements), tuple(state.moves))


def map_multicore(
    c: Circuit, t: MultiCoreTopology, seed: int = 0, error_model: ErrorModel | None = None
) -> tuple[MappingResult, PartitionResult]:
    """Partition ``c`` over the cores; gate and depth counts are unchanged, the
    cost shows up as ``inter_core_moves``. ``seed`` is unused (ties break by index)."""
    del seed
    layering = asap_layering(c)
    part = partition_multicore(slice_circuit(c, layering), t, c.n_qubits)
    stats = CircuitStats.of(c)
    return performance_metrics(stats, stats, error_model, part.inter_core_moves), part


def recount_moves(result: PartitionResult, slices: list[Slice], t: MultiCoreTopology) -> int:
    """Replay the move log from the initial placement, checking every slice
    boundary, and return the hop-weighted move count."""
    core = list(result.initial)
    by_slice: dict[int, list[Move]] = {}
    for m in result.moves:
        by_slice.setdefault(m.slice, []).append(m)
    hop = {}
    # independent hop table from the core edge list
    for src in range(t.n_cores):
        dist = {src: 0}
        frontier = [src]
        while frontier:
            nxt = []
            for u in frontier:
                for a, b in t.core_edges:
                    for x, y in ((a, b), (b, a)):
                        if x == u and y not in dist:
                            dist[y] = dist[u] + 1
                            nxt.append(y)
            frontier = nxt
        hop[src] = dist
    total = 0
    if any(Counter(core)[c] > t.capacity for c in range(t.n_cores)):
        raise AssertionError("initial placement exceeds capacity")
    for s in slices:
        for m in by_slice.get(s.index, []):
            if core[m.qubit] != m.src:
                raise AssertionError(f"move {m} starts from core {core[m.qubit]}")
            total += hop[m.src][m.dst]
            core[m.qubit] = m.dst
        loads = Counter(core)
        if any(loads[c] > t.capacity for c in range(t.n_cores)):
            raise AssertionError(f"capacity exceeded after slice {s.index}")
        for a, b in s.pairs:
            if core[a] != core[b]:
                raise AssertionError(f"pair {(a, b)} split after slice {s.index}")
        if tuple(core) != result.placements[s.index]:
            raise AssertionError(f"reported placement for slice {s.index} disagrees with replay")
    return total
