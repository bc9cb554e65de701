"""Slow reference implementations, independent of the package code paths."""

from __future__ import annotations

import itertools
from collections import deque
from fractions import Fraction


def bfs_dist(adj: dict, sources) -> dict:
    dist = {s: 0 for s in sources}
    q = deque(sources)
    while q:
        u = q.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def adj_dict(n, edges):
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    return adj


def lie_bruteforce(adj: dict, seeds, p: float) -> float:
    S = set(seeds)
    dist = bfs_dist(adj, list(S))
    n1 = [v for v, d in dist.items() if d == 1]
    n2 = [v for v, d in dist.items() if d == 2]
    k = len(S)
    if not n1:
        return float(k)
    sigma1 = 0.0
    for i in n1:
        prod = 1.0
        for j in adj[i]:
            if j in S:
                prod *= 1.0 - p
        sigma1 += 1.0 - prod
    frontier = set(n1) | set(n2)
    total = 0.0
    for u in n2:
        d_star = sum(1 for w in adj[u] if w in frontier)
        total += p * d_star
    return k + (1.0 + total / len(n1)) * sigma1


def edv_bruteforce(adj: dict, seeds, p: float) -> float:
    S = set(seeds)
    val = float(len(S))
    for v in adj:
        if v in S:
            continue
        r = sum(1 for u in adj[v] if u in S)
        if r:
            val += 1.0 - (1.0 - p) ** r
    return val


def ic_expectation_exact(n, edges, seeds, p) -> Fraction:
    """Expected infected count by enumerating every live-edge outcome."""
    p = Fraction(p)
    edges = list(edges)
    total = Fraction(0)
    for live in itertools.product((0, 1), repeat=len(edges)):
        prob = Fraction(1)
        kept = []
        for e, bit in zip(edges, live):
            prob *= p if bit else 1 - p
            if bit:
                kept.append(e)
        reach = bfs_dist(adj_dict(n, kept), list(seeds))
        total += prob * len(reach)
    return total


def modularity_direct(n, edges, assignment) -> float:
    """Sum over communities of e_c/m - (d_c/2m)^2."""
    m = len(edges)
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    q = 0.0
    for c in set(assignment):
        e_c = sum(1 for u, v in edges if assignment[u] == c and assignment[v] == c)
        d_c = sum(deg[v] for v in range(n) if assignment[v] == c)
        q += e_c / m - (d_c / (2 * m)) ** 2
    return q


def best_pair_lie(adj, p):
    n = len(adj)
    return max(lie_bruteforce(adj, pair, p) for pair in itertools.combinations(range(n), 2))
