import itertools
import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from hawkim.graph import from_edges, load_edge_list  # noqa: E402


def make(n, edges):
    return from_edges(n, edges)


@pytest.fixture
def path3():
    return make(3, [(0, 1), (1, 2)])


@pytest.fixture
def star4():
    return make(5, [(0, i) for i in range(1, 5)])


@pytest.fixture
def k4():
    return make(4, itertools.combinations(range(4), 2))


@pytest.fixture
def two_k5_bridge():
    e = list(itertools.combinations(range(5), 2))
    e += [(a + 5, b + 5) for a, b in itertools.combinations(range(5), 2)]
    e.append((4, 5))
    return make(10, e), e


def gnp_edges(n, prob, rng):
    return [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < prob]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
