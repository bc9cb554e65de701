import io

import numpy as np
import pytest

from conftest import gnp_edges, make
from hawkim.graph import GraphFormatError, khop_neighborhood, load_edge_list, write_edge_list
from oracles import adj_dict, bfs_dist


def test_path_from_text():
    g = load_edge_list(io.StringIO("a b\nb c\n"))
    assert (g.node_count, g.edge_count) == (3, 2)
    b = g.index_of("b")
    assert sorted(g.labels[v] for v in g.neighbors(b)) == ["a", "c"]


def test_dedup_and_self_loops():
    g = load_edge_list(io.StringIO("a b\nb a\na a\n"))
    assert (g.node_count, g.edge_count) == (2, 1)


def test_self_loop_only_node_kept_isolated():
    g = load_edge_list(io.StringIO("a b\nz z\n"))
    assert g.node_count == 3
    assert g.degree(g.index_of("z")) == 0


def test_comments_and_blank_lines():
    text = "# header\n% konect\n\n1 2\n  2 3  \n"
    g = load_edge_list(io.StringIO(text))
    assert g.labels == ("1", "2", "3")


@pytest.mark.parametrize("text,line", [("a b\na b c\n", 2), ("a\n", 1)])
def test_malformed_line(text, line):
    with pytest.raises(GraphFormatError, match=f"line {line}"):
        load_edge_list(io.StringIO(text))


def test_empty_input():
    with pytest.raises(GraphFormatError):
        load_edge_list(io.StringIO("# nothing\n"))


def test_degree(star4):
    assert star4.degree(0) == 4
    assert make(2, []).degree(1) == 0
    with pytest.raises(IndexError):
        star4.degree(5)


def test_max_degree_matches_raw_recount(rng):
    edges = gnp_edges(40, 0.2, rng)
    text = "".join(f"n{u} n{v}\n" for u, v in edges)
    g = load_edge_list(io.StringIO(text))
    raw = {}
    for line in text.splitlines():
        a, b = line.split()
        raw.setdefault(a, set()).add(b)
        raw.setdefault(b, set()).add(a)
    assert max(g.degree(v) for v in range(g.node_count)) == max(len(s) for s in raw.values())


def test_invariants(rng):
    g = make(30, gnp_edges(30, 0.2, rng))
    assert g.degrees.sum() == 2 * g.edge_count
    for u in range(g.node_count):
        nb = g.neighbors(u)
        assert u not in nb
        assert np.all(np.diff(nb) > 0)
        for v in nb:
            assert u in g.neighbors(v)


def test_round_trip(rng):
    g = make(25, gnp_edges(25, 0.25, rng))
    buf = io.StringIO()
    write_edge_list(g, buf)
    h = load_edge_list(io.StringIO(buf.getvalue()))
    adj_g = {g.labels[u]: {g.labels[v] for v in g.neighbors(u)} for u in range(g.node_count) if g.degree(u)}
    adj_h = {h.labels[u]: {h.labels[v] for v in h.neighbors(u)} for u in range(h.node_count)}
    assert adj_g == adj_h


def test_khop_path(path3):
    assert khop_neighborhood(path3, {0}, 1) == {0, 1}
    assert khop_neighborhood(path3, {0}, 2) == {0, 1, 2}


def test_khop_matches_bfs(rng):
    for _ in range(20):
        edges = gnp_edges(20, 0.2, rng)
        g = make(20, edges)
        s = set(rng.choice(20, 3, replace=False).tolist())
        dist = bfs_dist(adj_dict(20, edges), list(s))
        one, two = khop_neighborhood(g, s, 1), khop_neighborhood(g, s, 2)
        assert two == {v for v, d in dist.items() if d <= 2}
        assert s <= one <= two
