import random

import pytest
from hypothesis import strategies as st

from allmincuts.graph import build_static
from allmincuts.generate import random_connected_graph

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def path(n, w=1):
    return build_static([(i, i + 1, w) for i in range(n - 1)], n)


def cycle(n, w=1):
    return build_static([(i, (i + 1) % n, w) for i in range(n)], n)


def complete(n, w=1):
    return build_static([(u, v, w) for u in range(n) for v in range(u + 1, n)], n)


def star(leaves, w=1):
    return build_static([(0, i, w) for i in range(1, leaves + 1)], leaves + 1)


def two_triangles():
    return build_static([(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1),
                         (2, 3, 1)], 6)


def canon(side, n):
    side = frozenset(side)
    return side if 0 in side else frozenset(range(n)) - side


@st.composite
def connected_graphs(draw, min_n=2, max_n=10, max_weight=10):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    weight = draw(st.sampled_from([1, max_weight]))
    return random_connected_graph(n, random.Random(seed), max_weight=weight)


@pytest.fixture
def rng():
    return random.Random(12345)
