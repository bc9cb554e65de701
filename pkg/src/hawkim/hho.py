"""Discrete Harris' hawks optimizer over community-restricted candidate pools.

Each hawk holds a real position vector with one entry per candidate node. The
entries act as selection scores: decoding takes the top-scoring candidates of
every significant community up to that community's budget.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence, TextIO

import numpy as np
from scipy.special import gamma

from .community import (
    BudgetPlan,
    InfeasibleBudgetError,
    allocate_budgets,
    louvain,
    prune_intercommunity_edges,
    select_significant,
    significance_threshold,
)
from .graph import Graph
from .influence import lie

Estimator = Callable[[Graph, Sequence[int], float], float]

EXPLORE = "explore"
SOFT = "soft_besiege"
HARD = "hard_besiege"
SOFT_DIVE = "soft_besiege_dive"
HARD_DIVE = "hard_besiege_dive"


@dataclass
class HHOConfig:
    k: int
    pop_size: int = 20
    iterations: int = 50
    scout_threshold: float | None = None  # None -> ceil(mean degree)
    beta: float = 1.5
    lb: float = 0.0
    ub: float = 1.0
    p: float = 0.1
    seed: int | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.pop_size < 2:
            raise ValueError("population size must be >= 2")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if not 0.0 <= self.lb < self.ub:
            raise ValueError("bounds must satisfy 0 <= lb < ub")
        if not 1.0 < self.beta <= 2.0:
            raise ValueError("beta must lie in (1, 2]")


@dataclass
class Hawk:
    position: np.ndarray
    seeds: tuple[int, ...]
    fitness: float

    def copy(self) -> "Hawk":
        return Hawk(self.position.copy(), self.seeds, self.fitness)


@dataclass
class OptimizeResult:
    seeds: tuple[int, ...]
    fitness: float
    position: np.ndarray
    trace: list[tuple[int, float, float]] = field(default_factory=list)
    branch_counts: dict[str, int] = field(default_factory=dict)

    def write_trace_csv(self, sink: TextIO) -> None:
        w = csv.writer(sink)
        w.writerow(["iteration", "best_fitness", "wall_ms"])
        for it, f, ms in self.trace:
            w.writerow([it, repr(f), f"{ms:.3f}"])


def decode(position: np.ndarray, plan: BudgetPlan) -> tuple[int, ...]:
    """Top-``budget`` candidates of each significant community, as sorted node ids.

    Ties on position value go to the higher-degree node, then the lower id.
    """
    position = np.asarray(position)
    if position.shape != plan.candidates.shape:
        raise ValueError("position length does not match candidate pool")
    chosen: list[int] = []
    for c in plan.significant:
        b = plan.budget[c]
        if b == 0:
            continue
        idx = np.flatnonzero(plan.candidate_community == c)
        order = np.lexsort((plan.candidates[idx], -plan.candidate_degree[idx], -position[idx]))
        chosen.extend(int(v) for v in plan.candidates[idx[order[:b]]])
    return tuple(sorted(chosen))


def init_population(plan: BudgetPlan, cfg: HHOConfig, rng: np.random.Generator,
                    fitness: Callable[[tuple[int, ...]], float]) -> list[Hawk]:
    """Degree-scaled random positions: entry j is ``randint(1..d_j) / max_degree``."""
    pool = len(plan.candidates)
    if pool == 0 or cfg.k > pool:
        raise InfeasibleBudgetError(f"k={cfg.k} exceeds candidate pool of {pool} nodes")
    deg = plan.candidate_degree
    dmax = float(deg.max())
    hawks = []
    for _ in range(cfg.pop_size):
        x = rng.integers(1, deg + 1) / dmax
        s = decode(x, plan)
        hawks.append(Hawk(x, s, fitness(s)))
    return hawks


def escaping_energy(e0: float, t: int, T: int) -> float:
    return 2.0 * e0 * (1.0 - t / T)


def jump_strength(rng: np.random.Generator | float) -> float:
    """``2 (1 - u)`` with ``u`` uniform on [0, 1); a float is taken as ``u`` itself."""
    u = rng if isinstance(rng, (int, float)) else rng.random()
    return 2.0 * (1.0 - u)


def branch(E: float, r: float) -> str:
    """Which of the five position-update rules fires for energy ``E`` and draw ``r``."""
    a = abs(E)
    if a >= 1.0:
        return EXPLORE
    if r >= 0.5:
        return SOFT if a >= 0.5 else HARD
    return SOFT_DIVE if a >= 0.5 else HARD_DIVE


def explore_update(x, x_rand, x_rabbit, x_mean, q, r1, r2, r3, r4, lb=0.0, ub=1.0):
    if q >= 0.5:
        out = x_rand - r1 * np.abs(x_rand - 2.0 * r2 * x)
    else:
        out = (x_rabbit - x_mean) - r3 * (lb + r4 * (ub - lb))
    return np.clip(out, lb, ub)


def soft_besiege(x, x_rabbit, E, J, lb=0.0, ub=1.0):
    return np.clip((x_rabbit - x) - E * np.abs(J * x_rabbit - x), lb, ub)


def hard_besiege(x, x_rabbit, E, lb=0.0, ub=1.0):
    return np.clip(x_rabbit - E * np.abs(x_rabbit - x), lb, ub)


def levy_sigma(beta: float) -> float:
    num = gamma(1 + beta) * math.sin(math.pi * beta / 2)
    den = gamma((1 + beta) / 2) * beta * 2 ** ((beta - 1) / 2)
    return (num / den) ** (1 / beta)


def levy_flight(dim: int, beta: float, rng: np.random.Generator) -> np.ndarray:
    """Mantegna heavy-tailed steps scaled by 0.01."""
    u = rng.standard_normal(dim)
    v = rng.standard_normal(dim)
    return 0.01 * u * levy_sigma(beta) / np.abs(v) ** (1 / beta)


def rapid_dive_update(x, x_rabbit, x_mean, E, J, mode, current_fitness, evaluate,
                      rng, beta=1.5, lb=0.0, ub=1.0, levy=None):
    """Besiege with progressive dives; returns ``(position, fitness)``.

    ``evaluate`` maps a clamped position to its fitness. ``Y`` targets the
    rabbit relative to the hawk (soft) or the population mean (hard);
    ``Z = Y + S * levy``. A candidate is kept only if it beats
    ``current_fitness``; when both do, ``Z`` wins unless ``Y`` is strictly better.
    """
    ref = x if mode == "soft" else x_mean
    y = np.clip(x_rabbit - E * np.abs(J * x_rabbit - ref), lb, ub)
    if levy is None:
        levy = levy_flight(len(x), beta, rng)
    z = np.clip(y + rng.random(len(x)) * levy, lb, ub)
    fy = evaluate(y)
    fz = evaluate(z)
    y_ok, z_ok = fy > current_fitness, fz > current_fitness
    if z_ok and (not y_ok or fz >= fy):
        return z, fz
    if y_ok:
        return y, fy
    return x, current_fitness


def neighbor_scout(hawk: Hawk, g: Graph, L: float, plan: BudgetPlan,
                   fitness: Callable[[tuple[int, ...]], float],
                   rng: np.random.Generator) -> Hawk:
    """Try swapping each seed for one of its neighbours, lowest-degree seeds first.

    A seed is only scouted when it has more than ``L`` neighbours, and each
    neighbour is tried with probability 1/2. A swap must keep the newcomer in
    the same community's candidate pool, raise fitness, and survive re-decoding
    after the two position entries are exchanged.
    """
    slot = {int(v): j for j, v in enumerate(plan.candidates)}
    pos = hawk.position.copy()
    current = list(hawk.seeds)
    fit = hawk.fitness
    order = sorted(range(len(current)), key=lambda i: (g.degree(current[i]), current[i]))
    for i in order:
        nbrs = g.neighbors(current[i])
        if len(nbrs) <= L:
            continue
        for nb in nbrs:
            if rng.random() <= 0.5:
                continue
            nb = int(nb)
            old = current[i]
            if nb not in slot or nb in current:
                continue
            if plan.candidate_community[slot[nb]] != plan.candidate_community[slot[old]]:
                continue
            trial = current.copy()
            trial[i] = nb
            key = tuple(sorted(trial))
            f = fitness(key)
            if f <= fit:
                continue
            a, b = slot[old], slot[nb]
            pos[a], pos[b] = pos[b], pos[a]
            if decode(pos, plan) != key:
                pos[a], pos[b] = pos[b], pos[a]
                continue
            current, fit = trial, f
    return Hawk(pos, tuple(sorted(current)), fit)


def optimize(g: Graph, plan: BudgetPlan, cfg: HHOConfig, estimator: Estimator = lie) -> OptimizeResult:
    """Run the hawk swarm for ``cfg.iterations`` rounds and return the best seed set.

    The rabbit (best-so-far hawk) and the population mean are frozen for the
    duration of an iteration; the rabbit is replaced only on strict improvement,
    then polished by the neighbour scout.
    """
    if plan.k != cfg.k:
        raise ValueError(f"plan budgets sum to {plan.k}, config asks for k={cfg.k}")
    rng = np.random.default_rng(cfg.seed)
    lb, ub = cfg.lb, cfg.ub
    L = math.ceil(2 * g.edge_count / g.node_count) if cfg.scout_threshold is None else cfg.scout_threshold
    cache: dict[tuple[int, ...], float] = {}

    def fitness(seeds: tuple[int, ...]) -> float:
        f = cache.get(seeds)
        if f is None:
            f = cache[seeds] = estimator(g, seeds, cfg.p)
        return f

    def evaluate(x):
        return fitness(decode(x, plan))

    start = time.perf_counter()
    hawks = init_population(plan, cfg, rng, fitness)
    rabbit = max(hawks, key=lambda h: h.fitness).copy()
    N, T = cfg.pop_size, cfg.iterations
    counts = dict.fromkeys((EXPLORE, SOFT, HARD, SOFT_DIVE, HARD_DIVE), 0)
    trace = []
    for t in range(T):
        snapshot = np.array([h.position for h in hawks])
        x_mean = snapshot.mean(axis=0)
        x_rabbit = rabbit.position.copy()
        for i, hawk in enumerate(hawks):
            E = escaping_energy(rng.uniform(-1.0, 1.0), t, T)
            J = jump_strength(rng)
            r = rng.random() if abs(E) < 1.0 else 1.0
            kind = branch(E, r)
            counts[kind] += 1
            x = snapshot[i]
            if kind == EXPLORE:
                q, r1, r2, r3, r4 = rng.random(5)
                j = int(rng.integers(N - 1))
                j += j >= i
                new = explore_update(x, snapshot[j], x_rabbit, x_mean, q, r1, r2, r3, r4, lb, ub)
            elif kind == SOFT:
                new = soft_besiege(x, x_rabbit, E, J, lb, ub)
            elif kind == HARD:
                new = hard_besiege(x, x_rabbit, E, lb, ub)
            else:
                mode = "soft" if kind == SOFT_DIVE else "hard"
                new, _ = rapid_dive_update(x, x_rabbit, x_mean, E, J, mode, hawk.fitness,
                                           evaluate, rng, cfg.beta, lb, ub)
            seeds = decode(new, plan)
            hawks[i] = Hawk(np.array(new, copy=True), seeds, fitness(seeds))
        best = max(hawks, key=lambda h: h.fitness)
        if best.fitness > rabbit.fitness:
            rabbit = best.copy()
        scouted = neighbor_scout(rabbit, g, L, plan, fitness, rng)
        if scouted.fitness > rabbit.fitness:
            rabbit = scouted
        trace.append((t, rabbit.fitness, 1000.0 * (time.perf_counter() - start)))
    return OptimizeResult(rabbit.seeds, rabbit.fitness, rabbit.position, trace, counts)


@dataclass
class Selection:
    seeds: tuple[int, ...]
    fitness: float
    plan: BudgetPlan
    pruned: Graph
    result: OptimizeResult
    community_count: int


def select_seeds(g: Graph, cfg: HHOConfig, sig_threshold: int | None = None,
                 louvain_seed: int | None = None, estimator: Estimator = lie) -> Selection:
    """Full pipeline: Louvain, prune, significant communities, budgets, optimize."""
    part = louvain(g, louvain_seed)
    pruned = prune_intercommunity_edges(g, part)
    thr = significance_threshold(g.node_count, cfg.k) if sig_threshold is None else sig_threshold
    sig = select_significant(part, thr)
    plan = allocate_budgets(pruned, part, sig, cfg.k)
    res = optimize(pruned, plan, cfg, estimator)
    return Selection(res.seeds, res.fitness, plan, pruned, res, part.count)
