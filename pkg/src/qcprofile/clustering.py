"""Two-level K-means clustering of circuit feature tables."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .features import PROFILES, SIZE_COLUMNS


@dataclass
class FeatureTable:
    names: list[str]
    columns: list[str]
    values: np.ndarray  # float, NaN marks a missing feature

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float).reshape(len(self.names), len(self.columns))

    @classmethod
    def from_rows(cls, names, rows: list[dict], columns) -> FeatureTable:
        columns = list(columns)
        vals = np.full((len(rows), len(columns)), np.nan)
        for i, row in enumerate(rows):
            for j, col in enumerate(columns):
                x = row.get(col)
                if x is not None and x != "":
                    try:
                        vals[i, j] = float(x)
                    except OverflowError:  # exact path counts can exceed the float range
                        vals[i, j] = math.inf
        return cls(list(names), columns, vals)

    @property
    def missing(self) -> np.ndarray:
        return np.isnan(self.values)

    def select(self, columns, rows=None) -> FeatureTable:
        idx = [self.columns.index(c) for c in columns]
        rows = np.arange(len(self.names)) if rows is None else np.asarray(rows, dtype=int)
        return FeatureTable([self.names[i] for i in rows], list(columns), self.values[np.ix_(rows, idx)])


def impute_median(t: FeatureTable) -> tuple[FeatureTable, np.ndarray]:
    """Fill gaps with the column median (0 for all-missing columns); returns the mask too."""
    mask = t.missing
    vals = t.values.copy()
    for j in range(vals.shape[1]):
        col = vals[:, j]
        present = col[~mask[:, j]]
        col[mask[:, j]] = float(np.median(present)) if present.size else 0.0
    return FeatureTable(t.names, t.columns, vals), mask


def log_transform(t: FeatureTable, columns) -> FeatureTable:
    vals = t.values.copy()
    for j, c in enumerate(t.columns):
        if c in columns:
            vals[:, j] = np.log10(1.0 + np.clip(vals[:, j], 0.0, None))
    return FeatureTable(t.names, t.columns, vals)


def standardize(t: FeatureTable) -> FeatureTable:
    """Z-score every column (population std); constant columns become 0."""
    vals = t.values
    mean = vals.mean(axis=0)
    std = vals.std(axis=0)
    centered = vals - mean
    # 1e-12 relative guard keeps round-off noise in constant columns from being amplified
    scale = np.where(std > 1e-12 * np.maximum(1.0, np.abs(mean)), std, np.inf)
    return FeatureTable(t.names, t.columns, centered / scale)


# -- k-means ------------------------------------------------------------------


@dataclass
class KMeansResult:
    labels: np.ndarray
    centroids: np.ndarray
    wcss: float
    history: list[float] = field(default_factory=list)
    restart: int = 0


def _sq_dists(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    return ((points[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)


def _kmeanspp(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = len(points)
    chosen = [int(rng.integers(n))]
    d2 = _sq_dists(points, points[chosen]).min(axis=1)
    for _ in range(1, k):
        total = d2.sum()
        if total <= 0:
            # fewer distinct points than k: take any not yet chosen
            nxt = next(i for i in range(n) if i not in chosen)
        else:
            nxt = int(rng.choice(n, p=d2 / total))
        chosen.append(nxt)
        d2 = np.minimum(d2, _sq_dists(points, points[[nxt]])[:, 0])
    return points[chosen].astype(float)


def _lloyd(points: np.ndarray, centroids: np.ndarray, max_iter: int, tol: float):
    k = len(centroids)
    history = []
    for _ in range(max_iter):
        d2 = _sq_dists(points, centroids)
        labels = d2.argmin(axis=1)
        for j in range(k):
            if not np.any(labels == j):
                # reseed an empty cluster with the point farthest from its centroid
                sizes = np.bincount(labels, minlength=k)
                cost = np.where(sizes[labels] > 1, d2[np.arange(len(points)), labels], -1.0)
                far = int(cost.argmax())
                labels[far] = j
                d2[far] = _sq_dists(points[far : far + 1], centroids)[0]
        new = np.array([points[labels == j].mean(axis=0) for j in range(k)])
        wcss = float(_sq_dists(points, new)[np.arange(len(points)), labels].sum())
        history.append(wcss)
        shift = float(np.abs(new - centroids).max()) if k else 0.0
        centroids = new
        if shift <= tol:
            break
    d2 = _sq_dists(points, centroids)
    labels = d2.argmin(axis=1)
    return labels, centroids, float(d2[np.arange(len(points)), labels].sum()), history


def _relabel_by_first_appearance(labels: np.ndarray, centroids: np.ndarray):
    order = list(dict.fromkeys(labels.tolist()))
    order += [j for j in range(len(centroids)) if j not in order]
    remap = np.empty(len(centroids), dtype=int)
    remap[order] = np.arange(len(order))
    return remap[labels], centroids[order]


def kmeans(points, k: int, seed: int = 0, restarts: int = 10, max_iter: int = 300, tol: float = 1e-10) -> KMeansResult:
    """Lloyd's algorithm with k-means++ seeding; best of ``restarts`` by WCSS.

    Labels are renumbered in order of first appearance so results compare
    directly across runs.
    """
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points[:, None]
    n = len(points)
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > n:
        raise ValueError(f"k={k} exceeds the number of points ({n})")
    rng = np.random.default_rng(seed)
    best = None
    for r in range(max(1, restarts)):
        init = _kmeanspp(points, k, rng)
        labels, cents, wcss, hist = _lloyd(points, init, max_iter, tol)
        if best is None or wcss < best.wcss - 1e-12 * max(1.0, abs(best.wcss)):
            labels, cents = _relabel_by_first_appearance(labels, cents)
            best = KMeansResult(labels, cents, wcss, hist, r)
    return best


def silhouette(points, labels) -> float:
    """Mean silhouette, Euclidean. Members of singleton clusters score 0."""
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points[:, None]
    labels = np.asarray(labels)
    clusters = np.unique(labels)
    if len(clusters) < 2:
        raise ValueError("silhouette needs at least two clusters")
    dist = np.sqrt(_sq_dists(points, points))
    scores = np.zeros(len(points))
    for i in range(len(points)):
        own = labels == labels[i]
        if own.sum() == 1:
            continue
        a = dist[i, own].sum() / (own.sum() - 1)
        b = min(dist[i, labels == c].mean() for c in clusters if c != labels[i])
        denom = max(a, b)
        scores[i] = 0.0 if denom == 0 else (b - a) / denom
    return float(scores.mean())


# -- two-level pipeline -------------------------------------------------------


LOG_COLUMNS = ("n_gates", "depth", "n_paths", "n_critical_paths")


@dataclass
class ClusterConfig:
    k_size: int = 5
    k_range: tuple[int, int] = (2, 10)
    seed: int = 0
    restarts: int = 10
    profile: str = "single-core"
    structure_columns: tuple[str, ...] | None = None
    log_columns: tuple[str, ...] = LOG_COLUMNS
    min_split_size: int = 2  # size clusters with this many members or fewer stay whole

    def structure(self) -> tuple[str, ...]:
        if self.structure_columns is not None:
            return tuple(self.structure_columns)
        if self.profile == "all":
            return tuple(dict.fromkeys(PROFILES["single-core"] + PROFILES["multi-core"]))
        return PROFILES[self.profile]


@dataclass
class ClusterAssignment:
    names: list[str]
    size_cluster: np.ndarray
    sub_cluster: np.ndarray
    size_columns: list[str]
    structure_columns: list[str]
    size_centroids: dict[int, dict[str, float]]
    sub_centroids: dict[tuple[int, int], dict[str, float]]
    size_silhouette: float | None
    sub_k: dict[int, int]
    sub_silhouette: dict[int, float | None]
    imputed: dict[str, int]
    config: ClusterConfig

    def to_json(self) -> str:
        def num(x):
            return None if x is None or (isinstance(x, float) and math.isnan(x)) else x

        doc = {
            "config": {
                "k_size": self.config.k_size,
                "k_range": list(self.config.k_range),
                "seed": self.config.seed,
                "restarts": self.config.restarts,
                "profile": self.config.profile,
                "min_split_size": self.config.min_split_size,
            },
            "size_columns": self.size_columns,
            "structure_columns": self.structure_columns,
            "size_silhouette": num(self.size_silhouette),
            "clusters": [
                {
                    "size_cluster": c,
                    "n_members": int((self.size_cluster == c).sum()),
                    "n_sub_clusters": self.sub_k[c],
                    "silhouette": num(self.sub_silhouette[c]),
                    "centroid": self.size_centroids[c],
                    "sub_centroids": {
                        str(s): cent for (cc, s), cent in sorted(self.sub_centroids.items()) if cc == c
                    },
                }
                for c in sorted(self.size_centroids)
            ],
            "assignments": [
                {"name": n, "size_cluster": int(a), "sub_cluster": int(b)}
                for n, a, b in zip(self.names, self.size_cluster, self.sub_cluster)
            ],
            "imputed_values": self.imputed,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        lines = ["name,size_cluster,sub_cluster"]
        lines += [f"{n},{int(a)},{int(b)}" for n, a, b in zip(self.names, self.size_cluster, self.sub_cluster)]
        return "\n".join(lines) + "\n"


def _prepare(t: FeatureTable, log_columns) -> FeatureTable:
    return standardize(log_transform(t, log_columns))


def _centroids(raw: FeatureTable, labels: np.ndarray) -> dict[int, dict[str, float]]:
    out = {}
    for c in np.unique(labels):
        rows = raw.values[labels == c]
        out[int(c)] = {col: float(v) for col, v in zip(raw.columns, rows.mean(axis=0))}
    return out


def select_k(points: np.ndarray, k_range: tuple[int, int], seed: int, restarts: int):
    """K with the highest silhouette in ``k_range`` (capped at n-1); ties keep the smaller k."""
    lo, hi = k_range
    hi = min(hi, len(points) - 1)
    best = None
    for k in range(max(lo, 2), hi + 1):
        res = kmeans(points, k, seed=seed, restarts=restarts)
        if len(np.unique(res.labels)) < 2:
            continue
        score = silhouette(points, res.labels)
        if best is None or score > best[1] + 1e-12:
            best = (k, score, res)
    return best


def two_level_cluster(t: FeatureTable, config: ClusterConfig | None = None) -> ClusterAssignment:
    config = config or ClusterConfig()
    n = len(t.names)
    if n == 0:
        raise ValueError("cannot cluster an empty table")
    size_cols = [c for c in SIZE_COLUMNS if c in t.columns]
    struct_cols = [c for c in config.structure() if c in t.columns]
    if not size_cols:
        raise ValueError("feature table has no size columns")

    filled, mask = impute_median(t.select(size_cols + struct_cols))
    imputed = {c: int(mask[:, j].sum()) for j, c in enumerate(filled.columns) if mask[:, j].any()}

    size_raw = filled.select(size_cols)
    k_size = min(config.k_size, n)
    size_pts = _prepare(size_raw, config.log_columns).values
    level1 = kmeans(size_pts, k_size, seed=config.seed, restarts=config.restarts)
    size_labels = level1.labels
    n_found = len(np.unique(size_labels))
    size_sil = silhouette(size_pts, size_labels) if 2 <= n_found < n else None

    sub_labels = np.zeros(n, dtype=int)
    sub_k: dict[int, int] = {}
    sub_sil: dict[int, float | None] = {}
    sub_cents: dict[tuple[int, int], dict[str, float]] = {}
    for c in sorted(np.unique(size_labels).tolist()):
        rows = np.flatnonzero(size_labels == c)
        sub_k[c], sub_sil[c] = 1, None
        if struct_cols and len(rows) > config.min_split_size:
            raw = filled.select(struct_cols, rows)
            pts = _prepare(raw, config.log_columns).values
            # identical structure vectors cannot be split meaningfully
            if np.ptp(pts, axis=0).max() > 0:
                chosen = select_k(pts, config.k_range, config.seed, config.restarts)
                if chosen is not None:
                    k, score, res = chosen
                    sub_labels[rows] = res.labels
                    sub_k[c], sub_sil[c] = k, score
        if struct_cols:
            raw = filled.select(struct_cols, rows)
            for s, cent in _centroids(raw, sub_labels[rows]).items():
                sub_cents[(c, s)] = cent

    return ClusterAssignment(
        names=list(t.names),
        size_cluster=size_labels,
        sub_cluster=sub_labels,
        size_columns=size_cols,
        structure_columns=struct_cols,
        size_centroids=_centroids(size_raw, size_labels),
        sub_centroids=sub_cents,
        size_silhouette=size_sil,
        sub_k=sub_k,
        sub_silhouette=sub_sil,
        imputed=imputed,
        config=config,
    )
