"""Experiment sweeps over datasets, methods, spreader fractions and probabilities."""

from __future__ import annotations

import csv
import math
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np

from . import baselines
from .diffusion import fis
from .graph import Graph, load_edge_list
from .hho import HHOConfig, select_seeds
from .influence import lie
from .stats import FriedmanReport, ResultMatrix, compare as friedman_compare

SMALL_FRACTIONS = (0.02, 0.03, 0.04, 0.05, 0.06)
LARGE_FRACTIONS = (0.005, 0.01, 0.015, 0.02, 0.025, 0.03, 0.035, 0.04)
PROB_GRID = (0.05, 0.075, 0.1, 0.125, 0.15, 0.175, 0.2, 0.225, 0.25)
METHODS = ("dhho", "degree", "pagerank", "hindex", "enc")
COLUMNS = ("dataset", "method", "fraction", "p", "k", "fis_mean", "fis_std",
           "lie", "log_lie", "wall_ms", "seed", "seed_nodes")


@dataclass
class ExperimentConfig:
    graphs: list[str] = field(default_factory=list)
    methods: list[str] = field(default_factory=lambda: list(METHODS))
    fractions: list[float] | None = None  # None -> size-dependent defaults
    p: list[float] = field(default_factory=lambda: [0.1])
    runs: int = 50
    pop: int = 20
    iters: int = 50
    scout_threshold: float | None = None
    beta: float = 1.5
    sig_threshold: int | None = None
    seed: int = 0
    out: str = "results"
    workers: int = 1

    def __post_init__(self):
        for f in self.fractions or ():
            if not 0.0 < f < 1.0:
                raise ValueError(f"spreader fraction {f} outside (0, 1)")
        for p in self.p:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"probability {p} outside [0, 1]")
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise ValueError(f"unknown methods: {sorted(unknown)}")


@dataclass
class ExperimentRecord:
    dataset: str
    method: str
    fraction: float
    p: float
    k: int
    fis_mean: float
    fis_std: float
    lie: float
    log_lie: float
    wall_ms: float
    seed: int
    seed_nodes: tuple[str, ...] = ()

    def key(self):
        return (self.dataset, self.method, self.fraction, self.p)


def seed_budget(fraction: float, n: int) -> int:
    return max(1, round(fraction * n))


def default_fractions(n: int) -> tuple[float, ...]:
    return LARGE_FRACTIONS if n > 2000 else SMALL_FRACTIONS


def select(g: Graph, method: str, k: int, p: float, cfg: ExperimentConfig) -> tuple[int, ...]:
    if method == "dhho":
        hcfg = HHOConfig(k=k, pop_size=cfg.pop, iterations=cfg.iters, scout_threshold=cfg.scout_threshold,
                         beta=cfg.beta, p=p if p > 0 else 0.1, seed=cfg.seed)
        return select_seeds(g, hcfg, cfg.sig_threshold).seeds
    return baselines.top_k(baselines.RANKERS[method](g), k)


def _cell_seed(master: int, *key) -> int:
    return int(np.random.SeedSequence([master, zlib.crc32(repr(key).encode())]).generate_state(1)[0])


def run_cell(g: Graph, dataset: str, method: str, fraction: float, p: float,
             cfg: ExperimentConfig, simulate: bool = True) -> ExperimentRecord:
    k = seed_budget(fraction, g.node_count)
    t0 = time.perf_counter()
    seeds = select(g, method, k, p, cfg)
    wall = 1000.0 * (time.perf_counter() - t0)
    value = lie(g, seeds, p) if p > 0 else float(k)
    if simulate:
        res = fis(g, seeds, p, cfg.runs, seed=_cell_seed(cfg.seed, dataset, method, fraction, p))
        fmean, fstd = res.fis, res.fis_std
    else:
        fmean = fstd = math.nan
    return ExperimentRecord(dataset, method, fraction, p, k, fmean, fstd, value, math.log(value),
                            wall, cfg.seed, tuple(g.labels[s] for s in seeds))


def _job(args):
    return run_cell(*args)


def _load(cfg: ExperimentConfig) -> dict[str, Graph]:
    return {Path(path).stem: load_edge_list(path) for path in cfg.graphs}


def _run(cfg: ExperimentConfig, graphs: dict[str, Graph], cells: Iterable[tuple],
         simulate: bool) -> list[ExperimentRecord]:
    jobs = []
    for name, frac, p in cells:
        g = graphs[name]
        for method in cfg.methods:
            jobs.append((g, name, method, frac, p, cfg, simulate))
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as ex:
            recs = list(ex.map(_job, jobs))
    else:
        recs = [_job(j) for j in jobs]
    return sorted(recs, key=ExperimentRecord.key)


def _fraction_cells(cfg: ExperimentConfig, graphs: dict[str, Graph], probs: Sequence[float]):
    for name, g in graphs.items():
        for f in cfg.fractions or default_fractions(g.node_count):
            for p in probs:
                yield name, f, p


def run_fis_sweep(cfg: ExperimentConfig) -> list[ExperimentRecord]:
    """Mean final infected scale per (method, fraction) at the first configured p."""
    graphs = _load(cfg)
    return _run(cfg, graphs, _fraction_cells(cfg, graphs, cfg.p[:1]), simulate=True)


def run_lie_sweep(cfg: ExperimentConfig) -> list[ExperimentRecord]:
    """LIE and ln(LIE) of each method's seed set on the full graph."""
    graphs = _load(cfg)
    return _run(cfg, graphs, _fraction_cells(cfg, graphs, cfg.p[:1]), simulate=False)


def run_prob_sweep(cfg: ExperimentConfig) -> list[ExperimentRecord]:
    """FIS versus activation probability at spreader fraction 0.10 unless overridden."""
    probs = cfg.p if len(cfg.p) > 1 else list(PROB_GRID)
    cfg = replace(cfg, fractions=cfg.fractions or [0.10])
    graphs = _load(cfg)
    return _run(cfg, graphs, _fraction_cells(cfg, graphs, probs), simulate=True)


def run_timing(cfg: ExperimentConfig) -> list[ExperimentRecord]:
    """Wall time of seed selection alone; no diffusion is simulated."""
    graphs = _load(cfg)
    return _run(cfg, graphs, _fraction_cells(cfg, graphs, cfg.p[:1]), simulate=False)


def write_records(records: Sequence[ExperimentRecord], sink: TextIO) -> None:
    w = csv.writer(sink)
    w.writerow(COLUMNS)
    for r in records:
        w.writerow([r.dataset, r.method, repr(r.fraction), repr(r.p), r.k, repr(r.fis_mean),
                    repr(r.fis_std), repr(r.lie), repr(r.log_lie), f"{r.wall_ms:.3f}", r.seed,
                    " ".join(r.seed_nodes)])


def read_records(source: TextIO) -> list[ExperimentRecord]:
    out = []
    for row in csv.DictReader(source):
        out.append(ExperimentRecord(
            row["dataset"], row["method"], float(row["fraction"]), float(row["p"]), int(row["k"]),
            float(row["fis_mean"]), float(row["fis_std"]), float(row["lie"]), float(row["log_lie"]),
            float(row["wall_ms"]), int(row["seed"]), tuple(row.get("seed_nodes", "").split())))
    return out


def result_matrix(records: Sequence[ExperimentRecord], metric: str = "fis_mean") -> ResultMatrix:
    """Rows are (dataset, fraction, p) problems, columns are methods."""
    methods = list(dict.fromkeys(r.method for r in records))
    problems = sorted({(r.dataset, r.fraction, r.p) for r in records})
    cell = {(r.dataset, r.fraction, r.p, r.method): getattr(r, metric) for r in records}
    vals = np.array([[cell.get((*pr, m), math.nan) for m in methods] for pr in problems])
    labels = tuple(f"{d}@{f:g}/p={p:g}" for d, f, p in problems)
    return ResultMatrix(labels, tuple(methods), vals, higher_is_better=True)


def compare(records: Sequence[ExperimentRecord]) -> FriedmanReport:
    m = result_matrix(records)
    if len(m.cols) < 2:
        raise ValueError("comparison needs at least two methods")
    return friedman_compare(m)


CONFIG_KEYS = {f.name for f in fields(ExperimentConfig)}
