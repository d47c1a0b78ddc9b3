"""Full circuit profile: canonical feature columns and per-architecture profiles."""

from __future__ import annotations

from .circuit import Circuit, asap_layering, gate_token_sequence, size_features
from .density import density_features
from .gdg_metrics import gdg_path_features
from .graphs import build_gdg, build_interaction_graph
from .ig_metrics import IG_FEATURES, ig_features
from .repetition import longest_repeated_subcircuit

SIZE_COLUMNS = ("n_qubits", "n_gates", "two_qubit_gate_pct", "depth")
GDG_COLUMNS = (
    "critical_path_length",
    "n_critical_paths",
    "n_paths",
    "log10_n_critical_paths",
    "log10_n_paths",
    "path_length_mean",
    "path_length_std",
    "pct_gates_in_critical_path",
    "max_2q_in_critical",
    "n_critical_with_max_2q",
)
# exact big-integer counts; statistics use their log10 columns instead
RAW_COUNT_COLUMNS = ("n_critical_paths", "n_paths")
DENSITY_COLUMNS = ("density_score", "idling_score")
REPETITION_COLUMNS = ("largest_repeat_len", "largest_repeat_count")

FEATURE_COLUMNS = SIZE_COLUMNS + IG_FEATURES + GDG_COLUMNS + DENSITY_COLUMNS + REPETITION_COLUMNS

# structure columns fed to second-level clustering, following which
# architecture each metric was selected for; raw path counts are replaced by
# their logarithms
_SHARED = (
    "avg_degree",
    "critical_path_length",
    "log10_n_critical_paths",
    "log10_n_paths",
    "path_length_mean",
    "path_length_std",
    "pct_gates_in_critical_path",
    "density_score",
    "idling_score",
    "largest_repeat_len",
    "largest_repeat_count",
)
PROFILES = {
    "single-core": ("avg_shortest_path", "adjacency_std") + _SHARED,
    "multi-core": (
        "diameter",
        "central_point_of_dominance",
        "n_maximal_cliques",
        "max_clique_size",
        "clustering_coefficient",
        "vertex_connectivity",
        "edge_connectivity",
        "coreness_max",
        "coreness_mean",
        "pagerank_std",
    )
    + _SHARED,
}


def profile_columns(profile: str) -> tuple[str, ...]:
    """CSV columns written for a profile, in canonical order."""
    if profile == "all":
        return FEATURE_COLUMNS
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; choose from {sorted(PROFILES)} or 'all'")
    wanted = set(SIZE_COLUMNS) | set(PROFILES[profile]) | set(GDG_COLUMNS)
    return tuple(c for c in FEATURE_COLUMNS if c in wanted)


def profile_circuit(c: Circuit) -> dict[str, float | int | None]:
    """Every feature for one circuit, keyed by canonical column name.
    Metrics undefined on degenerate circuits are ``None``."""
    layering = asap_layering(c)
    out: dict[str, float | int | None] = dict.fromkeys(FEATURE_COLUMNS)
    out.update(size_features(c, layering))
    out.update(ig_features(build_interaction_graph(c)))
    out.update(gdg_path_features(build_gdg(c)).as_features())
    if c.n_gates == 0:
        out["pct_gates_in_critical_path"] = None
    out.update(density_features(c, layering))
    out.update(longest_repeated_subcircuit(gate_token_sequence(c)).as_features())
    return out
