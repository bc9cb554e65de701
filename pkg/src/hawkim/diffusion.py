"""Independent Cascade Monte-Carlo simulation."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .graph import Graph


@dataclass(frozen=True)
class DiffusionResult:
    runs: int
    mean_infected: float
    fis: float
    per_run_infected: tuple[int, ...]
    node_count: int

    @property
    def fis_std(self) -> float:
        """Standard deviation of the per-run infected fraction."""
        return float(np.std(self.per_run_infected)) / self.node_count


def ic_run(g: Graph, seeds: Iterable[int], p: float, rng: np.random.Generator) -> set[int]:
    """One cascade: every newly active node gets a single Bernoulli(p) try per inactive neighbour."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    active = np.zeros(g.node_count, dtype=bool)
    frontier = []
    for s in seeds:
        s = int(s)
        g._check(s)
        if not active[s]:
            active[s] = True
            frontier.append(s)
    indptr, indices = g.indptr, g.indices
    while frontier:
        nxt = []
        for u in frontier:
            nb = indices[indptr[u]:indptr[u + 1]]
            nb = nb[~active[nb]]
            if nb.size == 0:
                continue
            hit = nb[rng.random(nb.size) < p]
            if hit.size:
                active[hit] = True
                nxt.extend(hit.tolist())
        frontier = nxt
    return set(np.flatnonzero(active).tolist())


def _batch(args):
    g, seeds, p, seqs = args
    return [len(ic_run(g, seeds, p, np.random.default_rng(sq))) for sq in seqs]


def fis(g: Graph, seeds: Iterable[int], p: float, runs: int = 50, seed: int | None = None,
        workers: int = 1) -> DiffusionResult:
    """Final infected scale averaged over ``runs`` cascades.

    Replicate ``i`` draws from its own stream spawned from ``seed``, so the
    result does not depend on ``workers``.
    """
    if runs < 1:
        raise ValueError("runs must be >= 1")
    seeds = tuple(int(s) for s in seeds)
    streams = np.random.SeedSequence(seed).spawn(runs)
    if workers <= 1:
        counts = _batch((g, seeds, p, streams))
    else:
        chunks = np.array_split(np.arange(runs), workers)
        jobs = [(g, seeds, p, [streams[i] for i in c]) for c in chunks if len(c)]
        with ProcessPoolExecutor(workers) as ex:
            counts = [c for part in ex.map(_batch, jobs) for c in part]
    mean = float(np.mean(counts))
    return DiffusionResult(runs, mean, mean / g.node_count, tuple(counts), g.node_count)
