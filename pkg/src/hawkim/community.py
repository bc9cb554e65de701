"""Louvain communities, inter-community pruning and per-community seed budgets."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Sequence, TextIO

import numpy as np

from .graph import Graph, from_edges


class InfeasibleBudgetError(ValueError):
    """More seeds requested than the candidate pool can supply."""


@dataclass(frozen=True)
class CommunityPartition:
    assignment: np.ndarray          # node id -> community id
    communities: tuple[tuple[int, ...], ...]
    modularity: float

    @property
    def count(self) -> int:
        return len(self.communities)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.communities]


@dataclass(frozen=True)
class BudgetPlan:
    """Seed budget per significant community plus the optimizer's search space.

    ``candidates`` lists candidate node ids grouped by community (in the order
    of ``significant``); ``candidate_community[j]`` is the community id of
    ``candidates[j]`` and ``candidate_degree[j]`` its degree in the pruned graph.
    """

    significant: tuple[int, ...]
    budget: dict[int, int]
    candidates: np.ndarray
    candidate_community: np.ndarray
    candidate_degree: np.ndarray

    @property
    def k(self) -> int:
        return sum(self.budget.values())

    @property
    def candidate_pool(self) -> frozenset[int]:
        return frozenset(int(v) for v in self.candidates)


def modularity(g: Graph, assignment: Sequence[int], resolution: float = 1.0) -> float:
    """Newman modularity of a hard assignment on ``g``."""
    m = g.edge_count
    if m == 0:
        return 0.0
    assignment = np.asarray(assignment)
    ncom = int(assignment.max()) + 1
    internal = np.zeros(ncom)
    total = np.zeros(ncom)
    np.add.at(total, assignment, g.degrees)
    for u, v in g.edges():
        if assignment[u] == assignment[v]:
            internal[assignment[u]] += 1
    return float(np.sum(internal / m - resolution * (total / (2 * m)) ** 2))


def _local_moving(adj, strength, m2, order, resolution):
    n = len(adj)
    comm = list(range(n))
    tot = list(strength)
    improved = False
    moved = True
    while moved:
        moved = False
        for i in order:
            ci = comm[i]
            ki = strength[i]
            links: dict[int, float] = {}
            for j, w in adj[i].items():
                if j != i:
                    links[comm[j]] = links.get(comm[j], 0.0) + w
            tot[ci] -= ki
            best, best_gain = ci, links.get(ci, 0.0) - resolution * tot[ci] * ki / m2
            for c in sorted(links):
                gain = links[c] - resolution * tot[c] * ki / m2
                if gain > best_gain + 1e-12:
                    best, best_gain = c, gain
            tot[best] += ki
            if best != ci:
                comm[i] = best
                moved = improved = True
    return comm, improved


def louvain(g: Graph, seed: int | None = None, resolution: float = 1.0) -> CommunityPartition:
    """Two-phase Louvain (local moving + aggregation) until no gain.

    Nodes are visited in ascending id order, which makes the result a pure
    function of the graph. Passing ``seed`` visits them in a permutation drawn
    from that seed instead.
    """
    n = g.node_count
    rng = None if seed is None else np.random.default_rng(seed)
    membership = np.arange(n)
    if g.edge_count == 0:
        return _finish(g, membership, resolution)

    adj: list[dict[int, float]] = [{int(v): 1.0 for v in g.neighbors(u)} for u in range(n)]
    while True:
        strength = [sum(a.values()) for a in adj]
        m2 = sum(strength)
        order = list(range(len(adj))) if rng is None else list(rng.permutation(len(adj)))
        comm, improved = _local_moving(adj, strength, m2, order, resolution)
        if not improved:
            break
        relabel = {c: i for i, c in enumerate(sorted(set(comm)))}
        comm = [relabel[c] for c in comm]
        membership = np.array([comm[c] for c in membership])
        agg: list[dict[int, float]] = [{} for _ in relabel]
        for i, a in enumerate(adj):
            ci = comm[i]
            row = agg[ci]
            for j, w in a.items():
                cj = comm[j]
                row[cj] = row.get(cj, 0.0) + w
        adj = agg
    return _finish(g, membership, resolution)


def _finish(g: Graph, membership: np.ndarray, resolution: float) -> CommunityPartition:
    # canonical ids: communities numbered by their smallest member
    first: dict[int, int] = {}
    for v, c in enumerate(membership):
        first.setdefault(int(c), len(first))
    assignment = np.array([first[int(c)] for c in membership], dtype=np.int64)
    groups: list[list[int]] = [[] for _ in first]
    for v, c in enumerate(assignment):
        groups[c].append(v)
    return CommunityPartition(assignment, tuple(tuple(x) for x in groups),
                              modularity(g, assignment, resolution))


def partition_from_assignment(g: Graph, assignment: Sequence[int]) -> CommunityPartition:
    return _finish(g, np.asarray(assignment), 1.0)


def prune_intercommunity_edges(g: Graph, p: CommunityPartition) -> Graph:
    a = p.assignment
    return from_edges(g.node_count, ((u, v) for u, v in g.edges() if a[u] == a[v]), g.labels)


def significance_threshold(n: int, k: int) -> int:
    return max(k, math.ceil(0.01 * n))


def select_significant(p: CommunityPartition, threshold: int) -> list[int]:
    """Community ids with at least ``threshold`` members, largest first.

    Falls back to the single largest community when none qualifies.
    """
    if threshold < 1:
        raise ValueError("threshold must be >= 1")
    order = sorted(range(p.count), key=lambda c: (-len(p.communities[c]), c))
    chosen = [c for c in order if len(p.communities[c]) >= threshold]
    return chosen or order[:1]


def largest_remainder(weights: Sequence[float], k: int, priority: Sequence[int] | None = None) -> list[int]:
    """Apportion ``k`` seats proportionally to ``weights``.

    Leftover seats go to the largest fractional remainders; equal remainders are
    resolved by ``priority`` order (earlier wins), defaulting to index order.
    """
    w = np.asarray(weights, dtype=float)
    if k < 0 or len(w) == 0:
        raise ValueError("need k >= 0 and at least one weight")
    if w.sum() <= 0:
        w = np.ones_like(w)
    quota = k * w / w.sum()
    seats = np.floor(quota).astype(int)
    rem = quota - seats
    rank = {c: r for r, c in enumerate(priority if priority is not None else range(len(w)))}
    left = k - int(seats.sum())
    for c in sorted(range(len(w)), key=lambda c: (-round(rem[c], 12), rank[c]))[:left]:
        seats[c] += 1
    return seats.tolist()


def allocate_budgets(g: Graph, p: CommunityPartition, significant: Sequence[int], k: int) -> BudgetPlan:
    """Split ``k`` seeds across significant communities of the pruned graph ``g``.

    Weights are community total degree. A community holding fewer degree->1
    candidates than its share passes the surplus to the next-largest community
    with room.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not significant:
        raise ValueError("no significant community")
    deg = g.degrees
    # `significant` is already largest-first; keep that as the tie/donation order
    members = [np.asarray(p.communities[c], dtype=np.int64) for c in significant]
    cand = [m[deg[m] > 1] for m in members]
    capacity = [len(c) for c in cand]
    if sum(capacity) < k:
        raise InfeasibleBudgetError(f"k={k} exceeds candidate pool of {sum(capacity)} nodes")
    weights = [float(deg[m].sum()) for m in members]
    seats = largest_remainder(weights, k)
    for i in range(len(seats)):
        excess = seats[i] - capacity[i]
        if excess <= 0:
            continue
        seats[i] = capacity[i]
        for j in sorted(range(len(seats)), key=lambda j: (-len(members[j]), significant[j])):
            room = capacity[j] - seats[j]
            if room > 0:
                take = min(room, excess)
                seats[j] += take
                excess -= take
            if excess == 0:
                break
    budget = {int(c): int(s) for c, s in zip(significant, seats)}
    candidates = np.concatenate(cand)
    comm_of = np.concatenate([np.full(len(c), sig, dtype=np.int64) for c, sig in zip(cand, significant)])
    return BudgetPlan(tuple(int(c) for c in significant), budget, candidates, comm_of, deg[candidates].copy())


def single_community_plan(g: Graph, k: int) -> BudgetPlan:
    """Plan treating the whole graph as one community (no pruning, no budgets)."""
    p = partition_from_assignment(g, np.zeros(g.node_count, dtype=np.int64))
    return allocate_budgets(g, p, [0], k)


def write_partition_csv(g: Graph, p: CommunityPartition, sink: TextIO) -> None:
    w = csv.writer(sink)
    w.writerow(["node_label", "community_id"])
    for v in range(g.node_count):
        w.writerow([g.labels[v], int(p.assignment[v])])
