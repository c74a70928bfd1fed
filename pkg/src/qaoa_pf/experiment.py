"""Batch experiments over graph ensembles, written as flat CSV files.

An experiment directory contains:

``trials.csv``
    strategy, instance_id, n, depth, trial, seed, alpha, f_opt, c_max,
    n_evals, termination, gamma_1..gamma_P, beta_1..beta_P. Angles are the
    canonical optimal angles (gamma in [0, 2pi), beta in [0, pi)); cells past
    the trial's depth are empty. ``seed`` is empty for the zero-seeded trial.
``aggregate.csv``
    strategy, instance_id, n, depth, n_trials, mean_alpha, std_alpha,
    best_alpha, best_trial, best_f_opt. One row per instance and depth.
``pooled.csv``
    strategy, n, depth, n_instances, n_trials, mean_alpha, std_alpha,
    mean_best_alpha. Trials of all instances with the same n pooled.
``drift.csv``
    instance_id, n, index, kind, depth, value. Parameters-fixing runs only.
``manifest.json``
    config, derived seeds, instance edge lists, creation timestamp.
``graphs/<instance_id>.txt``
    each instance in the plain graph text format.

Floats are written with 17 significant digits so numbers round-trip
exactly. Rows are ordered by (strategy, instance, depth, trial) whatever
order the workers finish in.
"""
from __future__ import annotations

import csv
import datetime as _dt
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .errors import DegenerateInstanceError, GenerationError, ParameterError
from .graphs import Graph, generate_erdos_renyi, generate_regular, max_cut_bruteforce, write_graph
from .optimize import OptimizerOptions
from .strategies import (
    DepthRecord,
    alpha_stats,
    derive_seed,
    drift_tracks,
    parameters_fixing_sweep,
    random_init_sweep,
)

log = logging.getLogger(__name__)

WORKERS_ENV = "QAOA_PF_WORKERS"
EMPTY_GRAPH_RETRIES = 100
STRATEGIES = ("random", "parameters_fixing")

# counter keys for derive_seed; keep stable, they define reproducibility
_GRAPH_KEY = 0
_SWEEP_KEY = 1


def _fmt(x: float) -> str:
    return f"{x:.17g}"


@dataclass(frozen=True)
class ExperimentConfig:
    ensemble: str = "regular"  # "regular" or "erdos_renyi"
    degree: int = 3
    edge_prob: float = 0.5
    node_counts: tuple[int, ...] = (6,)
    instances_per_n: int = 1
    p_max: int = 10
    trials_per_depth: int = 20
    strategy: str = "parameters_fixing"  # "random", "parameters_fixing" or "both"
    master_seed: int = 0
    augment_zero_trial: bool = True
    optimizer: OptimizerOptions = field(default_factory=OptimizerOptions)
    output_dir: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "node_counts", tuple(int(n) for n in self.node_counts))
        if self.ensemble not in ("regular", "erdos_renyi"):
            raise ParameterError(f"unknown ensemble {self.ensemble!r}")
        if self.strategy not in ("random", "parameters_fixing", "both"):
            raise ParameterError(f"unknown strategy {self.strategy!r}")
        if not self.node_counts or any(n < 2 for n in self.node_counts):
            raise ParameterError("node_counts must be non-empty with every n >= 2")
        for name in ("instances_per_n", "p_max", "trials_per_depth"):
            if getattr(self, name) < 1:
                raise ParameterError(f"{name} must be >= 1")
        if self.ensemble == "regular":
            for n in self.node_counts:
                if (n * self.degree) % 2 or not 0 <= self.degree < n:
                    raise ParameterError(f"no {self.degree}-regular graph on {n} vertices")
        elif not 0.0 <= self.edge_prob <= 1.0:
            raise ParameterError("edge_prob must lie in [0, 1]")

    @property
    def strategies(self) -> tuple[str, ...]:
        return STRATEGIES if self.strategy == "both" else (self.strategy,)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["node_counts"] = list(self.node_counts)
        if self.ensemble == "regular":
            d["ensemble"] = {"kind": "regular", "degree": self.degree}
        else:
            d["ensemble"] = {"kind": "erdos_renyi", "prob": self.edge_prob}
        del d["degree"], d["edge_prob"]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        d = dict(d)
        unknown = set(d) - {
            "ensemble", "node_counts", "instances_per_n", "p_max", "trials_per_depth",
            "strategy", "master_seed", "augment_zero_trial", "optimizer", "output_dir",
        }
        if unknown:
            raise ParameterError(f"unknown config keys: {sorted(unknown)}")
        ens = d.pop("ensemble", {"kind": "regular", "degree": 3})
        if isinstance(ens, str):
            ens = {"kind": ens}
        kind = ens.get("kind", "regular")
        kw = {"ensemble": kind}
        if "degree" in ens:
            kw["degree"] = int(ens["degree"])
        if "prob" in ens:
            kw["edge_prob"] = float(ens["prob"])
        if "optimizer" in d:
            kw["optimizer"] = OptimizerOptions(**d.pop("optimizer"))
        if d.get("strategy") == "pf":
            d["strategy"] = "parameters_fixing"
        kw.update(d)
        return cls(**kw)


def load_config(path: str | os.PathLike) -> ExperimentConfig:
    with open(path) as fh:
        return ExperimentConfig.from_dict(json.load(fh))


@dataclass(frozen=True)
class Instance:
    instance_id: str
    n: int
    index: int  # position among the instances with this n
    seed: int
    graph: Graph
    c_max: int
    witness: str


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    instances: list[Instance]
    # (strategy, instance_id) -> per-depth records
    records: dict[tuple[str, str], list[DepthRecord]]
    output_dir: Optional[Path] = None

    def aggregate_rows(self) -> list[dict]:
        return aggregate_rows(self)

    def pooled_rows(self) -> list[dict]:
        return pooled_rows(self)


def make_instances(config: ExperimentConfig) -> list[Instance]:
    """Seeded instances for every node count, in config order."""
    out = []
    for n in config.node_counts:
        for idx in range(config.instances_per_n):
            seed = derive_seed(config.master_seed, _GRAPH_KEY, n, idx)
            if config.ensemble == "regular":
                graph = generate_regular(n, config.degree, seed)
            else:
                graph = generate_erdos_renyi(n, config.edge_prob, seed)
                retries = 0
                while graph.num_edges == 0:
                    if retries == EMPTY_GRAPH_RETRIES:
                        raise GenerationError(f"n={n} instance {idx}: only empty graphs drawn")
                    log.warning("n=%d instance %d: empty graph from seed %d, retrying", n, idx, seed)
                    seed += 1
                    retries += 1
                    graph = generate_erdos_renyi(n, config.edge_prob, seed)
            if graph.num_edges == 0:
                raise DegenerateInstanceError(f"n={n} instance {idx} has no edges")
            sol = max_cut_bruteforce(graph)
            out.append(Instance(f"n{n}_i{idx}", n, idx, seed, graph, sol.c_max, sol.witness))
    return out


def _run_job(args):
    strategy, inst, config = args
    sweep_seed = derive_seed(config.master_seed, _SWEEP_KEY, inst.n, inst.index)
    if strategy == "random":
        recs = random_init_sweep(
            inst.graph, config.p_max, config.trials_per_depth, sweep_seed,
            c_max=inst.c_max, options=config.optimizer,
        )
    else:
        recs = parameters_fixing_sweep(
            inst.graph, config.p_max, config.trials_per_depth, sweep_seed,
            c_max=inst.c_max, options=config.optimizer,
            augment_zero_trial=config.augment_zero_trial,
        )
    return (strategy, inst.instance_id), recs


def worker_count() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_experiment(
    config: ExperimentConfig,
    output_dir: str | os.PathLike | None = None,
    workers: Optional[int] = None,
) -> ExperimentReport:
    """Generate instances, run the configured sweeps, and write result files.

    ``output_dir`` overrides ``config.output_dir``; with neither set nothing
    is written and only the in-memory report is returned.
    """
    out = output_dir if output_dir is not None else config.output_dir
    instances = make_instances(config)
    jobs = [(s, inst, config) for s in config.strategies for inst in instances]
    workers = worker_count() if workers is None else workers
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            results = dict(pool.map(_run_job, jobs))
    else:
        results = dict(map(_run_job, jobs))
    records = {(s, inst.instance_id): results[(s, inst.instance_id)] for s, inst, _ in jobs}
    report = ExperimentReport(config, instances, records)
    if out is not None:
        write_report(report, out)
    return report


TRIAL_FIELDS = [
    "strategy", "instance_id", "n", "depth", "trial", "seed", "alpha", "f_opt",
    "c_max", "n_evals", "termination",
]
AGGREGATE_FIELDS = [
    "strategy", "instance_id", "n", "depth", "n_trials", "mean_alpha", "std_alpha",
    "best_alpha", "best_trial", "best_f_opt",
]
POOLED_FIELDS = [
    "strategy", "n", "depth", "n_instances", "n_trials", "mean_alpha", "std_alpha",
    "mean_best_alpha",
]
DRIFT_FIELDS = ["instance_id", "n", "index", "kind", "depth", "value"]


def _iter_records(report: ExperimentReport):
    for strategy in report.config.strategies:
        for inst in report.instances:
            yield strategy, inst, report.records[(strategy, inst.instance_id)]


def trial_rows(report: ExperimentReport) -> list[dict]:
    p_max = report.config.p_max
    rows = []
    for strategy, inst, recs in _iter_records(report):
        for rec in recs:
            for k, t in enumerate(rec.trials):
                canon = t.optimal_params.canonical()
                row = {
                    "strategy": strategy, "instance_id": inst.instance_id, "n": inst.n,
                    "depth": rec.depth, "trial": k, "seed": "" if t.seed is None else t.seed,
                    "alpha": _fmt(t.alpha), "f_opt": _fmt(t.f_opt), "c_max": inst.c_max,
                    "n_evals": t.n_evals, "termination": t.termination.value,
                }
                for i in range(p_max):
                    row[f"gamma_{i + 1}"] = _fmt(canon.gammas[i]) if i < rec.depth else ""
                for i in range(p_max):
                    row[f"beta_{i + 1}"] = _fmt(canon.betas[i]) if i < rec.depth else ""
                rows.append(row)
    return rows


def aggregate_rows(report: ExperimentReport) -> list[dict]:
    rows = []
    for strategy, inst, recs in _iter_records(report):
        for rec in recs:
            rows.append({
                "strategy": strategy, "instance_id": inst.instance_id, "n": inst.n,
                "depth": rec.depth, "n_trials": len(rec.trials),
                "mean_alpha": _fmt(rec.mean_alpha), "std_alpha": _fmt(rec.std_alpha),
                "best_alpha": _fmt(rec.best_trial.alpha),
                "best_trial": rec.trials.index(rec.best_trial),
                "best_f_opt": _fmt(rec.best_trial.f_opt),
            })
    return rows


def pooled_rows(report: ExperimentReport) -> list[dict]:
    rows = []
    for strategy in report.config.strategies:
        for n in report.config.node_counts:
            insts = [i for i in report.instances if i.n == n]
            for q in range(1, report.config.p_max + 1):
                recs = [report.records[(strategy, i.instance_id)][q - 1] for i in insts]
                alphas = [a for r in recs for a in r.all_alphas]
                mean, std = alpha_stats(alphas)
                mean_best, _ = alpha_stats([r.best_trial.alpha for r in recs])
                rows.append({
                    "strategy": strategy, "n": n, "depth": q, "n_instances": len(insts),
                    "n_trials": len(alphas), "mean_alpha": _fmt(mean), "std_alpha": _fmt(std),
                    "mean_best_alpha": _fmt(mean_best),
                })
    return rows


def drift_rows(report: ExperimentReport) -> list[dict]:
    rows = []
    if "parameters_fixing" not in report.config.strategies:
        return rows
    for inst in report.instances:
        for track in drift_tracks(report.records[("parameters_fixing", inst.instance_id)]):
            for depth, value in sorted(track.values.items()):
                rows.append({
                    "instance_id": inst.instance_id, "n": inst.n, "index": track.index,
                    "kind": track.kind, "depth": depth, "value": _fmt(value),
                })
    return rows


def _write_csv(path: Path, fields: Sequence[str], rows: list[dict]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(fields), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)


def write_report(report: ExperimentReport, output_dir: str | os.PathLike) -> Path:
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    p_max = report.config.p_max
    trial_fields = TRIAL_FIELDS + [f"gamma_{i}" for i in range(1, p_max + 1)] + [
        f"beta_{i}" for i in range(1, p_max + 1)
    ]
    _write_csv(out / "trials.csv", trial_fields, trial_rows(report))
    _write_csv(out / "aggregate.csv", AGGREGATE_FIELDS, aggregate_rows(report))
    _write_csv(out / "pooled.csv", POOLED_FIELDS, pooled_rows(report))
    if "parameters_fixing" in report.config.strategies:
        _write_csv(out / "drift.csv", DRIFT_FIELDS, drift_rows(report))
    gdir = out / "graphs"
    gdir.mkdir(exist_ok=True)
    for inst in report.instances:
        write_graph(inst.graph, gdir / f"{inst.instance_id}.txt")
    manifest = {
        "package_version": __version__,
        "created": _dt.datetime.now(_dt.timezone.utc).isoformat(),
        "config": report.config.to_dict(),
        "instances": [
            {
                "instance_id": i.instance_id, "n": i.n, "seed": i.seed, "c_max": i.c_max,
                "witness": i.witness, "edges": [list(e) for e in i.graph.edges],
                "sweep_seed": derive_seed(report.config.master_seed, _SWEEP_KEY, i.n, i.index),
            }
            for i in report.instances
        ],
    }
    with open(out / "manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")
    report.output_dir = out
    return out


def read_csv(path: str | os.PathLike) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def load_aggregate(directory: str | os.PathLike, strategy: Optional[str] = None) -> list[dict]:
    """Aggregate rows of an experiment directory, optionally for one strategy."""
    rows = read_csv(Path(directory) / "aggregate.csv")
    if strategy is not None:
        if strategy == "pf":
            strategy = "parameters_fixing"
        rows = [r for r in rows if r["strategy"] == strategy]
    return rows


@dataclass
class ComparisonSummary:
    rows: list[dict]
    wins: int
    losses: int
    ties: int

    def to_csv(self, path: str | os.PathLike) -> None:
        _write_csv(
            Path(path),
            ["instance_id", "n", "depth", "mean_alpha_random", "mean_alpha_pf", "delta", "outcome"],
            self.rows,
        )


def _by_key(rows: Sequence[dict], label: str) -> dict:
    strategies = {r.get("strategy") for r in rows}
    if len(strategies) > 1:
        raise ParameterError(f"report {label} mixes strategies {sorted(strategies)}; select one")
    out = {}
    for r in rows:
        key = (r["instance_id"], int(r["depth"]))
        out[key] = r
    return out


def compare_strategies(
    report_random: Sequence[dict] | ExperimentReport,
    report_pf: Sequence[dict] | ExperimentReport,
    tie_tol: float = 0.0,
) -> ComparisonSummary:
    """Per (instance, depth): delta = pf mean alpha - random mean alpha.

    Inputs are aggregate rows of a single strategy each (see
    ``load_aggregate``) or in-memory reports holding that strategy. A delta
    with ``|delta| <= tie_tol`` counts as a tie.
    """
    if isinstance(report_random, ExperimentReport):
        report_random = [r for r in report_random.aggregate_rows() if r["strategy"] == "random"]
    if isinstance(report_pf, ExperimentReport):
        report_pf = [r for r in report_pf.aggregate_rows() if r["strategy"] == "parameters_fixing"]
    a = _by_key(report_random, "a")
    b = _by_key(report_pf, "b")
    if set(a) != set(b):
        missing = sorted(set(a) ^ set(b))[:5]
        raise ParameterError(f"reports cover different (instance, depth) pairs, e.g. {missing}")
    rows, wins, losses, ties = [], 0, 0, 0
    for key in sorted(a, key=lambda k: (int(a[k]["n"]), k[0], k[1])):
        ra, rb = a[key], b[key]
        if int(ra["n"]) != int(rb["n"]):
            raise ParameterError(f"instance {key[0]} has different sizes in the two reports")
        ma, mb = float(ra["mean_alpha"]), float(rb["mean_alpha"])
        delta = mb - ma
        if abs(delta) <= tie_tol:
            outcome, ties = "tie", ties + 1
        elif delta > 0:
            outcome, wins = "win", wins + 1
        else:
            outcome, losses = "loss", losses + 1
        rows.append({
            "instance_id": key[0], "n": int(ra["n"]), "depth": key[1],
            "mean_alpha_random": _fmt(ma), "mean_alpha_pf": _fmt(mb),
            "delta": _fmt(delta), "outcome": outcome,
        })
    return ComparisonSummary(rows, wins, losses, ties)


def with_overrides(config: ExperimentConfig, **overrides) -> ExperimentConfig:
    """Copy of ``config`` with every non-None override applied."""
    return replace(config, **{k: v for k, v in overrides.items() if v is not None})
