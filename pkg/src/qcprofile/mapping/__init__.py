from .multicore import CapacityError, PartitionResult, Slice, map_multicore, partition_multicore, recount_moves, slice_circuit
from .router import RoutedCircuit, RoutingCheckError, TopologyTooSmallError, check_routed, route_single_core
from .topology import (
    CouplingTopology,
    MultiCoreTopology,
    TopologyError,
    load_multicore_topology,
    load_topology,
)

__all__ = [
    "CapacityError",
    "CouplingTopology",
    "MultiCoreTopology",
    "PartitionResult",
    "RoutedCircuit",
    "RoutingCheckError",
    "Slice",
    "TopologyError",
    "TopologyTooSmallError",
    "check_routed",
    "load_multicore_topology",
    "load_topology",
    "map_multicore",
    "partition_multicore",
    "recount_moves",
    "route_single_core",
    "slice_circuit",
]
