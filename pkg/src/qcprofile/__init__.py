"""Structural profiling of quantum circuits: feature extraction, two-level
clustering, reference mappers and feature/performance correlation."""

from .circuit import Circuit, Gate, Layering, asap_layering, gate_token_sequence, size_features
from .clustering import ClusterConfig, FeatureTable, kmeans, silhouette, standardize, two_level_cluster
from .correlation import ErrorModel, MappingResult, correlation_table, pearson, performance_metrics
from .features import FEATURE_COLUMNS, PROFILES, profile_circuit
from .gdg_metrics import gdg_path_features
from .graphs import build_gdg, build_interaction_graph, topological_order
from .qasm import load_qasm, parse_qasm, to_qasm

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "ClusterConfig",
    "ErrorModel",
    "FEATURE_COLUMNS",
    "FeatureTable",
    "Gate",
    "Layering",
    "MappingResult",
    "PROFILES",
    "asap_layering",
    "build_gdg",
    "build_interaction_graph",
    "correlation_table",
    "gate_token_sequence",
    "gdg_path_features",
    "kmeans",
    "load_qasm",
    "parse_qasm",
    "pearson",
    "performance_metrics",
    "profile_circuit",
    "silhouette",
    "size_features",
    "standardize",
    "to_qasm",
    "two_level_cluster",
]
