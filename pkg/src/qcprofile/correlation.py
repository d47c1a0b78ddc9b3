"""Mapping performance metrics and feature-vs-performance Pearson rankings."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from xml.sax.saxutils import escape

import numpy as np

from .circuit import Circuit, asap_layering
from .ig_metrics import UndefinedMetricError

PERFORMANCE_METRICS = ("gate_overhead", "depth_overhead", "fidelity_decrease", "inter_core_moves")


@dataclass(frozen=True)
class ErrorModel:
    """Uniform per-gate error rates for one- and two-qubit gates."""

    eps_1q: float = 0.001
    eps_2q: float = 0.01

    def fidelity(self, n_1q: int, n_2q: int) -> float:
        return (1.0 - self.eps_1q) ** n_1q * (1.0 - self.eps_2q) ** n_2q


@dataclass(frozen=True)
class CircuitStats:
    n_1q: int
    n_2q: int
    depth: int

    @property
    def n_gates(self) -> int:
        return self.n_1q + self.n_2q

    @classmethod
    def of(cls, c: Circuit) -> CircuitStats:
        return cls(c.n_single_qubit_gates, c.n_two_qubit_gates, asap_layering(c).depth)


@dataclass(frozen=True)
class MappingResult:
    gates_before: int
    gates_after: int
    depth_before: int
    depth_after: int
    n_1q_added: int
    n_2q_added: int
    fidelity_before: float
    fidelity_after: float
    inter_core_moves: int = 0

    @staticmethod
    def _ratio(after: float, before: float, what: str) -> float:
        if before == 0:
            raise UndefinedMetricError(f"{what} is undefined for a zero baseline")
        return (after - before) / before

    @property
    def gate_overhead(self) -> float:
        return self._ratio(self.gates_after, self.gates_before, "gate overhead")

    @property
    def depth_overhead(self) -> float:
        return self._ratio(self.depth_after, self.depth_before, "depth overhead")

    @property
    def fidelity_decrease(self) -> float:
        return -self._ratio(self.fidelity_after, self.fidelity_before, "fidelity decrease")

    def metrics(self) -> dict[str, float | None]:
        out: dict[str, float | None] = {}
        for name in PERFORMANCE_METRICS:
            try:
                value = getattr(self, name)
                out[name] = value if name == "inter_core_moves" else float(value)
            except UndefinedMetricError:
                out[name] = None
        return out

    def as_dict(self) -> dict:
        return {**asdict(self), **self.metrics()}


def performance_metrics(
    before: CircuitStats, after: CircuitStats, error_model: ErrorModel | None = None, inter_core_moves: int = 0
) -> MappingResult:
    em = error_model or ErrorModel()
    return MappingResult(
        gates_before=before.n_gates,
        gates_after=after.n_gates,
        depth_before=before.depth,
        depth_after=after.depth,
        n_1q_added=after.n_1q - before.n_1q,
        n_2q_added=after.n_2q - before.n_2q,
        fidelity_before=em.fidelity(before.n_1q, before.n_2q),
        fidelity_after=em.fidelity(after.n_1q, after.n_2q),
        inter_core_moves=inter_core_moves,
    )


def pearson(x, y) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("pearson needs two 1-D series of equal length")
    if len(x) < 2:
        raise UndefinedMetricError("pearson needs at least two samples")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    # relative guard: a column of identical floats can have tiny nonzero spread after centering
    if sxx <= 1e-24 * max(1.0, float(x @ x)) or syy <= 1e-24 * max(1.0, float(y @ y)):
        raise UndefinedMetricError("pearson is undefined for a constant series")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


@dataclass
class CorrelationReport:
    features: list[str]
    metrics: list[str]
    r: dict[tuple[str, str], float | None]
    n: dict[tuple[str, str], int]

    def ranking(self, metric: str) -> list[str]:
        """Features from most positively to most negatively correlated; undefined last."""
        defined = [f for f in self.features if self.r[(f, metric)] is not None]
        undefined = [f for f in self.features if self.r[(f, metric)] is None]
        return sorted(defined, key=lambda f: -self.r[(f, metric)]) + undefined

    def to_csv(self) -> str:
        lines = ["metric,rank,feature,r,n"]
        for m in self.metrics:
            for rank, f in enumerate(self.ranking(m), start=1):
                r = self.r[(f, m)]
                lines.append(f"{m},{rank},{f},{'' if r is None else repr(r)},{self.n[(f, m)]}")
        return "\n".join(lines) + "\n"

    def to_svg(self, title: str = "Pearson correlation", cell: int = 28) -> str:
        return heatmap_svg(self, title, cell)


def correlation_table(
    features: dict[str, dict[str, float | None]],
    results: dict[str, dict[str, float | None]],
    feature_columns=None,
    metric_columns=PERFORMANCE_METRICS,
    min_rows: int = 3,
) -> CorrelationReport:
    """Pearson r for every (feature, metric) pair over circuits present in both tables.

    Missing values are dropped pair by pair. Pairs with fewer than ``min_rows``
    usable rows or a constant side get ``None``.
    """
    keys = [k for k in features if k in results]
    if not keys:
        raise ValueError("feature and result tables share no circuit names")
    if feature_columns is None:
        feature_columns = list(next(iter(features.values())).keys())
    metric_columns = [m for m in metric_columns if any(results[k].get(m) is not None for k in keys)]
    r: dict[tuple[str, str], float | None] = {}
    n: dict[tuple[str, str], int] = {}
    for f in feature_columns:
        for m in metric_columns:
            pairs = [
                (features[k][f], results[k][m])
                for k in keys
                if features[k].get(f) is not None and results[k].get(m) is not None
            ]
            n[(f, m)] = len(pairs)
            if len(pairs) < min_rows:
                r[(f, m)] = None
                continue
            xs, ys = zip(*pairs)
            try:
                r[(f, m)] = pearson(xs, ys)
            except UndefinedMetricError:
                r[(f, m)] = None
    return CorrelationReport(list(feature_columns), list(metric_columns), r, n)


def diverging_color(r: float | None) -> str:
    """Blue (-1) through white (0) to red (+1); grey when undefined."""
    if r is None:
        return "#bdbdbd"
    t = max(-1.0, min(1.0, r))
    red, blue = (178, 24, 43), (33, 102, 172)
    end = red if t >= 0 else blue
    a = abs(t)
    rgb = tuple(round(255 + (e - 255) * a) for e in end)
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def heatmap_svg(report: CorrelationReport, title: str = "Pearson correlation", cell: int = 28) -> str:
    """Features as rows in first-metric ranking order, metrics as columns; one rect per cell."""
    rows = report.ranking(report.metrics[0]) if report.metrics else list(report.features)
    left, top = 220, 60
    width = left + cell * len(report.metrics) + 20
    height = top + cell * len(rows) + 40
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'font-family="sans-serif" font-size="11">',
        f'<text x="{left}" y="18" font-size="13">{escape(title)}</text>',
    ]
    for j, m in enumerate(report.metrics):
        x = left + j * cell + cell // 2
        out.append(f'<text x="{x}" y="{top - 6}" transform="rotate(-35 {x} {top - 6})">{escape(m)}</text>')
    for i, f in enumerate(rows):
        y = top + i * cell
        out.append(f'<text x="{left - 6}" y="{y + cell // 2 + 4}" text-anchor="end">{escape(f)}</text>')
        for j, m in enumerate(report.metrics):
            r = report.r[(f, m)]
            label = "n/a" if r is None else f"{r:.2f}"
            out.append(
                f'<rect x="{left + j * cell}" y="{y}" width="{cell}" height="{cell}" '
                f'fill="{diverging_color(r)}" stroke="#ffffff"><title>{escape(f)} / {escape(m)}: {label}</title></rect>'
            )
    out.append(f'<text x="{left}" y="{height - 14}">red = +1, white = 0, blue = -1</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
