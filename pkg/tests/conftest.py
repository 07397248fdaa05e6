import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from kclique.graph import from_edges

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, max_n=14, min_n=0):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    p = draw(st.sampled_from([0.1, 0.3, 0.5, 0.8, 1.0]))
    bits = draw(st.lists(st.floats(0, 1, exclude_max=True), min_size=len(pairs), max_size=len(pairs)))
    edges = [e for e, b in zip(pairs, bits) if b < p]
    return from_edges(n, np.array(edges, dtype=np.int64).reshape(-1, 2))


@st.composite
def sorted_sets(draw, max_size=40, universe=120):
    xs = draw(st.sets(st.integers(0, universe), max_size=max_size))
    return np.array(sorted(xs), dtype=np.int32)


def triangle():
    return from_edges(3, [(0, 1), (1, 2), (0, 2)])


def cycle(n):
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edges(10, outer + spokes + inner)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
