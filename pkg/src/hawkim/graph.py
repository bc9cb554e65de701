"""Undirected simple graphs loaded from edge-list files."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, TextIO

import numpy as np
import scipy.sparse as sp


class GraphFormatError(ValueError):
    """Raised for malformed or empty edge-list input."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected simple graph in CSR form.

    Node ids are dense integers ``0..n-1``; ``labels[i]`` is the label the
    node carried in the source file.
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: tuple[str, ...]

    @property
    def node_count(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @cached_property
    def matrix(self) -> sp.csr_matrix:
        """Symmetric 0/1 adjacency matrix (float64)."""
        n = self.node_count
        data = np.ones(len(self.indices), dtype=np.float64)
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(n, n))

    @cached_property
    def adjacency(self) -> list[np.ndarray]:
        return [self.indices[self.indptr[v]:self.indptr[v + 1]] for v in range(self.node_count)]

    def neighbors(self, v: int) -> np.ndarray:
        self._check(v)
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        self._check(v)
        return int(self.indptr[v + 1] - self.indptr[v])

    def edges(self) -> Iterable[tuple[int, int]]:
        """Yield each edge once as ``(u, v)`` with ``u < v``."""
        for u in range(self.node_count):
            for v in self.neighbors(u):
                if u < v:
                    yield u, int(v)

    def index_of(self, label: str) -> int:
        return self._label_index[label]

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def _check(self, v: int) -> None:
        if not 0 <= v < self.node_count:
            raise IndexError(f"node id {v} out of range for graph with {self.node_count} nodes")

    def __repr__(self) -> str:
        return f"Graph(n={self.node_count}, m={self.edge_count})"


def from_edges(n: int, edges: Iterable[tuple[int, int]], labels: Iterable[str] | None = None) -> Graph:
    """Build a graph on ``n`` nodes; self-loops and duplicates are dropped."""
    labels = tuple(str(i) for i in range(n)) if labels is None else tuple(labels)
    if len(labels) != n:
        raise ValueError("labels must have one entry per node")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise IndexError(f"edge ({u}, {v}) out of range")
        if u != v:
            nbrs[u].add(v)
            nbrs[v].add(u)
    degs = np.fromiter((len(s) for s in nbrs), dtype=np.int64, count=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(degs, out=indptr[1:])
    indices = np.fromiter((v for s in nbrs for v in sorted(s)), dtype=np.int64, count=int(indptr[-1]))
    indptr.flags.writeable = False
    indices.flags.writeable = False
    return Graph(indptr, indices, labels)


def load_edge_list(source: TextIO | str, directed_input: bool = False) -> Graph:
    """Parse a whitespace-separated edge list.

    Lines starting with ``#`` or ``%`` and blank lines are skipped. Labels are
    assigned dense ids in first-seen order. ``directed_input`` only documents the
    source; arcs are symmetrized either way.

    Raises
    ------
    GraphFormatError
        On a line that does not hold exactly two tokens, or when no node is read.
    """
    if isinstance(source, str):
        with open(source, encoding="utf-8") as fh:
            return load_edge_list(fh, directed_input)

    ids: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    for lineno, line in enumerate(source, start=1):
        s = line.strip()
        if not s or s[0] in "#%":
            continue
        tok = s.split()
        if len(tok) != 2:
            raise GraphFormatError(f"line {lineno}: expected 2 tokens, got {len(tok)}")
        u = ids.setdefault(tok[0], len(ids))
        v = ids.setdefault(tok[1], len(ids))
        edges.append((u, v))
    if not ids:
        raise GraphFormatError("edge list is empty")
    return from_edges(len(ids), edges, ids.keys())


def write_edge_list(g: Graph, sink: TextIO) -> None:
    for u, v in g.edges():
        sink.write(f"{g.labels[u]} {g.labels[v]}\n")


def khop_neighborhood(g: Graph, seeds: Iterable[int], hops: int) -> set[int]:
    """Nodes within ``hops`` (1 or 2) of any seed, seeds included."""
    if hops not in (1, 2):
        raise ValueError("hops must be 1 or 2")
    reached = set()
    for s in seeds:
        g._check(int(s))
        reached.add(int(s))
    frontier = set(reached)
    for _ in range(hops):
        nxt = set()
        for u in frontier:
            nxt.update(int(v) for v in g.neighbors(u))
        nxt -= reached
        reached |= nxt
        frontier = nxt
    return reached
