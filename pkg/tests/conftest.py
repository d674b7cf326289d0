import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from ordersheaf.orders import TotalOrder
from ordersheaf.sheaf import DiscreteOrderSheaf, InteractionGraph, PreferenceProfile

LABELS = "ABCDEFGHIJKL"

# Lines collected by tests/test_acceptance.py, echoed in the terminal summary.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def brute_force_inversions(p, q):
    """Independent Kendall tau: compare every pair's relative order directly."""
    return sum(
        1
        for a, b in itertools.combinations(p, 2)
        if (list(p).index(a) < list(p).index(b)) != (list(q).index(a) < list(q).index(b))
    )


def random_sheaf(rng: np.random.Generator, max_alts: int, max_vertices: int, edge_p: float = 0.6):
    n_alts = int(rng.integers(1, max_alts + 1))
    n_v = int(rng.integers(1, max_vertices + 1))
    vertices = tuple(f"V{i}" for i in range(1, n_v + 1))
    edges = tuple(e for e in itertools.combinations(vertices, 2) if rng.random() < edge_p)
    vis = {}
    orders = {}
    for v in vertices:
        k = int(rng.integers(1, n_alts + 1))
        chosen = rng.choice(n_alts, size=k, replace=False)
        vis[v] = frozenset(int(a) for a in chosen)
        orders[v] = TotalOrder(tuple(int(a) for a in rng.permutation(chosen)))
    sheaf = DiscreteOrderSheaf(InteractionGraph(vertices, edges), vis, tuple(LABELS[:n_alts]))
    return sheaf, PreferenceProfile(orders)


@st.composite
def sheaves(draw, max_alts=4, max_vertices=5):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_sheaf(np.random.default_rng(seed), max_alts, max_vertices)


@st.composite
def orders(draw, min_size=1, max_size=6):
    n = draw(st.integers(min_size, max_size))
    return TotalOrder(tuple(draw(st.permutations(range(n)))))


@pytest.fixture
def rng():
    return np.random.default_rng(20240101)
