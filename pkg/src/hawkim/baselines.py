"""Centrality heuristics for top-k seed selection."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import TextIO

import numpy as np

from .graph import Graph


class ConvergenceError(RuntimeError):
    def __init__(self, residual: float, iterations: int):
        super().__init__(f"power iteration did not converge in {iterations} steps (residual {residual:.3e})")
        self.residual = residual


@dataclass(frozen=True)
class NodeRanking:
    method: str
    scores: np.ndarray
    order: np.ndarray

    @classmethod
    def from_scores(cls, method: str, scores) -> "NodeRanking":
        scores = np.asarray(scores, dtype=float)
        # stable sort on -score keeps lower ids first among ties
        order = np.argsort(-scores, kind="stable")
        return cls(method, scores, order)

    def write_csv(self, g: Graph, sink: TextIO) -> None:
        w = csv.writer(sink)
        w.writerow(["node_label", "score", "rank"])
        for rank, v in enumerate(self.order, start=1):
            w.writerow([g.labels[v], repr(float(self.scores[v])), rank])


def degree_rank(g: Graph) -> NodeRanking:
    return NodeRanking.from_scores("degree", g.degrees)


def pagerank(g: Graph, damping: float = 0.85, tol: float = 1e-8, max_iter: int = 200) -> NodeRanking:
    """Power iteration on the random walk of the undirected graph.

    Degree-zero nodes spread their mass uniformly. Stops when the L1 change
    drops below ``tol``.
    """
    if not 0.0 < damping < 1.0:
        raise ValueError("damping must lie in (0, 1)")
    n = g.node_count
    deg = g.degrees.astype(float)
    dangling = deg == 0
    inv = np.divide(1.0, deg, out=np.zeros(n), where=~dangling)
    A = g.matrix
    x = np.full(n, 1.0 / n)
    residual = np.inf
    for _ in range(max_iter):
        nxt = damping * (A @ (x * inv)) + (damping * x[dangling].sum() + 1.0 - damping) / n
        residual = float(np.abs(nxt - x).sum())
        x = nxt
        if residual < tol:
            return NodeRanking.from_scores("pagerank", x / x.sum())
    raise ConvergenceError(residual, max_iter)


def h_index(g: Graph) -> np.ndarray:
    deg = g.degrees
    out = np.zeros(g.node_count, dtype=np.int64)
    for v in range(g.node_count):
        d = np.sort(deg[g.neighbors(v)])[::-1]
        hs = np.flatnonzero(d >= np.arange(1, len(d) + 1))
        out[v] = hs[-1] + 1 if hs.size else 0
    return out


def h_index_rank(g: Graph) -> NodeRanking:
    return NodeRanking.from_scores("hindex", h_index(g))


def kshell(g: Graph) -> np.ndarray:
    """Shell index of every node by repeated removal of minimum-degree nodes."""
    n = g.node_count
    deg = g.degrees.copy()
    removed = np.zeros(n, dtype=bool)
    shell = np.zeros(n, dtype=np.int64)
    k = 0
    left = n
    while left:
        k = max(k, int(deg[~removed].min()))
        stack = list(np.flatnonzero(~removed & (deg <= k)))
        while stack:
            v = stack.pop()
            if removed[v]:
                continue
            removed[v] = True
            shell[v] = k
            left -= 1
            for u in g.neighbors(v):
                if not removed[u]:
                    deg[u] -= 1
                    if deg[u] <= k:
                        stack.append(u)
    return shell


def neighborhood_coreness(g: Graph, shell: np.ndarray | None = None) -> np.ndarray:
    ks = kshell(g) if shell is None else shell
    return g.matrix @ ks.astype(float)


def enc_rank(g: Graph) -> NodeRanking:
    """Extended neighbourhood coreness: sum of neighbours' neighbourhood coreness."""
    cnc = neighborhood_coreness(g)
    return NodeRanking.from_scores("enc", g.matrix @ cnc)


RANKERS = {
    "degree": degree_rank,
    "pagerank": pagerank,
    "hindex": h_index_rank,
    "enc": enc_rank,
}


def top_k(r: NodeRanking, k: int) -> tuple[int, ...]:
    if not 1 <= k <= len(r.order):
        raise ValueError(f"k must be in [1, {len(r.order)}], got {k}")
    return tuple(int(v) for v in r.order[:k])
