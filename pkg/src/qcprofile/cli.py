"""Command-line batch runs: profile, cluster, map, correlate, report.

Exit codes: 0 success (including partial success with warnings),
2 usage error, 3 nothing valid to work on.
"""

from __future__ import annotations

import argparse
import csv
import glob
import io
import json
import logging
import os
import secrets
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .circuit import ORIGIN_LABELS
from .clustering import ClusterConfig, FeatureTable, two_level_cluster
from .correlation import PERFORMANCE_METRICS, ErrorModel, correlation_table
from .features import RAW_COUNT_COLUMNS, profile_circuit, profile_columns
from .mapping import (
    CapacityError,
    TopologyError,
    TopologyTooSmallError,
    load_multicore_topology,
    load_topology,
    map_multicore,
    route_single_core,
)
from .qasm import QasmError, load_qasm, to_qasm

log = logging.getLogger("qcprofile")

SCHEMA_VERSION = 1
EXIT_OK, EXIT_USAGE, EXIT_NO_WORK = 0, 2, 3
OUTPUT_ENV = "QCPROFILE_OUTPUT_DIR"

RESULT_COLUMNS = (
    "name",
    "status",
    "topology",
    "gates_before",
    "gates_after",
    "depth_before",
    "depth_after",
    "n_1q_added",
    "n_2q_added",
    "fidelity_before",
    "fidelity_after",
) + PERFORMANCE_METRICS


class NoWorkError(RuntimeError):
    pass


@dataclass
class RunConfig:
    inputs: list[str] = field(default_factory=list)
    profile: str = "single-core"
    k_size: int = 5
    k_range: tuple[int, int] = (2, 10)
    restarts: int = 10
    seed: int | None = None
    topology: str = "grid:4x4"
    multicore: str | None = None
    swap_cost: int = 3
    eps_1q: float = 0.001
    eps_2q: float = 0.01
    workers: int = 1
    decompose: bool = True
    output_dir: str = "qcprofile-out"

    def resolved(self) -> RunConfig:
        if self.seed is None:
            self.seed = secrets.randbelow(2**31)
        return self

    def to_json(self) -> str:
        doc = asdict(self)
        doc["k_range"] = list(self.k_range)
        doc["schema_version"] = SCHEMA_VERSION
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# -- helpers ------------------------------------------------------------------


def expand_inputs(patterns) -> list[Path]:
    found: list[Path] = []
    for p in patterns:
        path = Path(p)
        if path.is_dir():
            found += sorted(path.rglob("*.qasm"))
        elif any(ch in p for ch in "*?["):
            found += sorted(Path(x) for x in glob.glob(p, recursive=True))
        else:
            found.append(path)
    return list(dict.fromkeys(found))


def origin_from_path(path: Path) -> str | None:
    for part in reversed(path.parent.parts):
        if part.lower() in ORIGIN_LABELS:
            return part.lower()
    return None


def unique_names(paths: list[Path]) -> list[str]:
    seen: dict[str, int] = {}
    names = []
    for p in paths:
        n = seen.get(p.stem, 0) + 1
        seen[p.stem] = n
        names.append(p.stem if n == 1 else f"{p.stem}_{n}")
    return names


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def write_csv(path: Path, header, rows) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(row.get(h)) for h in header])
    path.write_text(buf.getvalue())


def read_csv(path: Path) -> tuple[list[str], list[dict[str, str]]]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or "name" not in reader.fieldnames:
            raise ValueError(f"{path}: missing header with a 'name' column")
        rows = list(reader)
    return list(reader.fieldnames), rows


def _number(x: str):
    if x is None or x == "":
        return None
    try:
        return int(x)
    except ValueError:
        return float(x)


def _map_parallel(fn, items, workers: int):
    if workers <= 1 or len(items) <= 1:
        return [fn(i) for i in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _write_config(out: Path, command: str, cfg: RunConfig) -> None:
    (out / f"{command}.config.json").write_text(cfg.to_json())


# -- profile ------------------------------------------------------------------


def _profile_one(job):
    path, name, decompose = job
    try:
        circuit, meta = load_qasm(path, decompose=decompose, origin_label=origin_from_path(Path(path)))
    except (OSError, UnicodeDecodeError, QasmError, ValueError) as exc:
        return name, None, None, f"{path}: {exc}"
    feats = profile_circuit(circuit)
    return name, circuit.origin_label, {"features": feats, "parse": asdict(meta), "source": str(path)}, None


def cmd_profile(cfg: RunConfig) -> Path:
    out = Path(cfg.output_dir)
    paths = expand_inputs(cfg.inputs)
    names = unique_names(paths)
    columns = profile_columns(cfg.profile)
    results = _map_parallel(_profile_one, [(str(p), n, cfg.decompose) for p, n in zip(paths, names)], cfg.workers)
    rows, errors = [], []
    (out / "circuits").mkdir(parents=True, exist_ok=True)
    for name, origin, doc, err in results:
        if err:
            errors.append(err)
            log.warning("skipping %s", err)
            continue
        row = {"name": name, "origin": origin, **doc["features"]}
        rows.append(row)
        (out / "circuits" / f"{name}.json").write_text(json.dumps({"name": name, **doc}, indent=2, sort_keys=True) + "\n")
    if errors:
        (out / "errors.log").write_text("\n".join(errors) + "\n")
    if not rows:
        raise NoWorkError("no valid circuits to profile")
    write_csv(out / "features.csv", ("name", "origin") + columns, rows)
    _write_config(out, "profile", cfg)
    return out / "features.csv"


# -- cluster ------------------------------------------------------------------


def cmd_cluster(features_csv: Path, cfg: RunConfig) -> tuple[Path, Path]:
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    header, rows = read_csv(features_csv)
    if not rows:
        raise NoWorkError(f"{features_csv} has no rows")
    columns = [c for c in header if c not in ("name", "origin")]
    try:
        table = FeatureTable.from_rows([r["name"] for r in rows], rows, columns)
    except ValueError as exc:
        raise ValueError(f"{features_csv}: non-numeric feature value ({exc})") from None
    ccfg = ClusterConfig(
        k_size=cfg.k_size, k_range=tuple(cfg.k_range), seed=cfg.seed, restarts=cfg.restarts, profile=cfg.profile
    )
    result = two_level_cluster(table, ccfg)
    (out / "clusters.csv").write_text(result.to_csv())
    (out / "clusters.json").write_text(result.to_json())
    _write_config(out, "cluster", cfg)
    return out / "clusters.csv", out / "clusters.json"


# -- map ----------------------------------------------------------------------


def _map_one(job):
    path, name, cfg = job
    em = ErrorModel(cfg.eps_1q, cfg.eps_2q)
    try:
        circuit, _ = load_qasm(path, decompose=cfg.decompose)
    except (OSError, UnicodeDecodeError, QasmError, ValueError) as exc:
        return {"name": name, "status": f"failed: {exc}"}, None
    try:
        if cfg.multicore:
            topo = load_multicore_topology(cfg.multicore)
            result, _ = map_multicore(circuit, topo, cfg.seed, em)
            mapped = None
        else:
            topo = load_topology(cfg.topology)
            result, routed = route_single_core(circuit, topo, cfg.seed, cfg.swap_cost, em)
            mapped = to_qasm(routed.circuit)
    except (TopologyTooSmallError, CapacityError) as exc:
        return {"name": name, "status": f"failed: {exc}", "topology": topo.name}, None
    row = {"name": name, "status": "ok", "topology": topo.name, **result.as_dict()}
    if not cfg.multicore:
        row["inter_core_moves"] = None
    return row, mapped


def cmd_map(cfg: RunConfig) -> Path:
    out = Path(cfg.output_dir)
    # fail fast on a bad topology spec before touching any circuit
    if cfg.multicore:
        load_multicore_topology(cfg.multicore)
    else:
        load_topology(cfg.topology)
    paths = expand_inputs(cfg.inputs)
    names = unique_names(paths)
    results = _map_parallel(_map_one, [(str(p), n, cfg) for p, n in zip(paths, names)], cfg.workers)
    (out / "mapped").mkdir(parents=True, exist_ok=True)
    rows = []
    for row, mapped in results:
        rows.append(row)
        if row["status"] != "ok":
            log.warning("%s: %s", row["name"], row["status"])
        if mapped is not None:
            (out / "mapped" / f"{row['name']}.qasm").write_text(mapped)
    if not any(r["status"] == "ok" for r in rows):
        raise NoWorkError("no circuit could be mapped")
    write_csv(out / "results.csv", RESULT_COLUMNS, rows)
    _write_config(out, "map", cfg)
    return out / "results.csv"


# -- correlate ----------------------------------------------------------------


def cmd_correlate(features_csv: Path, results_csv: Path, cfg: RunConfig) -> tuple[Path, Path]:
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    fheader, frows = read_csv(features_csv)
    _, rrows = read_csv(results_csv)
    feature_cols = [c for c in fheader if c not in ("name", "origin") + RAW_COUNT_COLUMNS]
    features = {r["name"]: {c: _number(r[c]) for c in feature_cols} for r in frows}
    results = {
        r["name"]: {m: _number(r.get(m)) for m in PERFORMANCE_METRICS} for r in rrows if r.get("status") == "ok"
    }
    if not set(features) & set(results):
        raise NoWorkError("features and results share no circuit names")
    report = correlation_table(features, results, feature_cols)
    (out / "corr.csv").write_text(report.to_csv())
    title = f"Pearson r (eps_1q={cfg.eps_1q}, eps_2q={cfg.eps_2q})"
    (out / "heatmap.svg").write_text(report.to_svg(title))
    _write_config(out, "correlate", cfg)
    return out / "corr.csv", out / "heatmap.svg"


def cmd_report(cfg: RunConfig) -> None:
    features = cmd_profile(cfg)
    cmd_cluster(features, cfg)
    results = cmd_map(cfg)
    cmd_correlate(features, results, cfg)


# -- argument parsing ---------------------------------------------------------


def _k_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError("k-range must look like 2..10") from None
    if not 1 <= lo <= hi:
        raise argparse.ArgumentTypeError("k-range needs 1 <= lo <= hi")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output-dir", default=os.environ.get(OUTPUT_ENV, "qcprofile-out"))
    common.add_argument("--seed", type=int, default=None, help="random seed (generated and recorded if omitted)")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("-v", "--verbose", action="store_true")

    circuits = argparse.ArgumentParser(add_help=False)
    circuits.add_argument("inputs", nargs="+", help=".qasm files, directories or glob patterns")
    circuits.add_argument("--no-decompose", dest="decompose", action="store_false", help="reject 3-qubit gates")

    prof = argparse.ArgumentParser(add_help=False)
    prof.add_argument("--profile", default="single-core", choices=["single-core", "multi-core", "all"])

    clus = argparse.ArgumentParser(add_help=False)
    clus.add_argument("--k-size", type=int, default=5)
    clus.add_argument("--k-range", type=_k_range, default=(2, 10))
    clus.add_argument("--restarts", type=int, default=10)

    mapper = argparse.ArgumentParser(add_help=False)
    mapper.add_argument("--topology", default="grid:4x4", help="linear:N, ring:N, grid:RxC, all_to_all:N, surface17 or JSON")
    mapper.add_argument("--multicore", default=None, help="all_to_all:CORES:CAP, grid:RxC:CAP or JSON")
    mapper.add_argument("--swap-cost", type=int, default=3)
    mapper.add_argument("--eps1", dest="eps_1q", type=float, default=0.001)
    mapper.add_argument("--eps2", dest="eps_2q", type=float, default=0.01)

    p = argparse.ArgumentParser(prog="qcprofile", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("profile", parents=[common, circuits, prof], help="extract features")
    c = sub.add_parser("cluster", parents=[common, prof, clus], help="two-level clustering of a features CSV")
    c.add_argument("features")
    sub.add_parser("map", parents=[common, circuits, mapper], help="route circuits with a reference mapper")
    k = sub.add_parser("correlate", parents=[common, mapper], help="Pearson features vs mapping results")
    k.add_argument("features")
    k.add_argument("results")
    sub.add_parser("report", parents=[common, circuits, prof, clus, mapper], help="profile + cluster + map + correlate")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    known = set(RunConfig.__dataclass_fields__)
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in known}).resolved()
    Path(cfg.output_dir).mkdir(parents=True, exist_ok=True)
    try:
        if args.command == "profile":
            print(cmd_profile(cfg))
        elif args.command == "cluster":
            print(*cmd_cluster(Path(args.features), cfg), sep="\n")
        elif args.command == "map":
            print(cmd_map(cfg))
        elif args.command == "correlate":
            print(*cmd_correlate(Path(args.features), Path(args.results), cfg), sep="\n")
        else:
            cmd_report(cfg)
            print(cfg.output_dir)
    except NoWorkError as exc:
        log.error("%s", exc)
        return EXIT_NO_WORK
    except (TopologyError, ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
