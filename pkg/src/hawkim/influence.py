"""Closed-form spread estimators used as optimizer fitness."""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .graph import Graph


def _seed_indicator(g: Graph, seeds: Iterable[int]) -> np.ndarray:
    s = np.unique(np.fromiter((int(v) for v in seeds), dtype=np.int64))
    if s.size == 0:
        raise ValueError("seed set is empty")
    if s[0] < 0 or s[-1] >= g.node_count:
        raise IndexError("seed id out of range")
    ind = np.zeros(g.node_count)
    ind[s] = 1.0
    return ind


def _check_p(p: float) -> None:
    if not 0.0 < p <= 1.0:
        raise ValueError(f"activation probability must lie in (0, 1], got {p}")


def edv(g: Graph, seeds: Iterable[int], p: float) -> float:
    """Expected diffusion value: k + sum over one-hop frontier of 1 - (1-p)^r(v)."""
    _check_p(p)
    s = _seed_indicator(g, seeds)
    r = g.matrix @ s
    frontier = (r > 0) & (s == 0)
    return float(s.sum() + np.sum(1.0 - (1.0 - p) ** r[frontier]))


def lie(g: Graph, seeds: Iterable[int], p: float) -> float:
    """Local influence estimate of a seed set over its two-hop area.

    ``N1`` is the set of non-seed neighbours of the seeds and ``N2`` the nodes at
    distance exactly two. The one-hop term sums ``1 - (1-p)^r`` over ``N1``
    (``r`` = seed neighbours); it is scaled by ``1 + p * sum(d*) / |N1|`` where
    ``d*(u)`` counts edges from ``u`` in ``N2`` to ``N1 | N2``. Returns ``k``
    when ``N1`` is empty.
    """
    _check_p(p)
    A = g.matrix
    s = _seed_indicator(g, seeds)
    k = s.sum()
    r = A @ s
    n1 = ((r > 0) & (s == 0)).astype(float)
    size1 = n1.sum()
    if size1 == 0:
        return float(k)
    sigma1 = float(np.sum(1.0 - (1.0 - p) ** r[n1 > 0]))
    n2 = (((A @ n1) > 0) & (s == 0) & (n1 == 0)).astype(float)
    if n2.any():
        dstar = A @ (n1 + n2)
        two_hop = p * float(dstar[n2 > 0].sum())
    else:
        two_hop = 0.0
    return float(k + (1.0 + two_hop / size1) * sigma1)
