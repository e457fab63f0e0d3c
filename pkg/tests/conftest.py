from __future__ import annotations

import itertools
import random
from pathlib import Path

import numpy as np
import pytest

from dbgraph.graph_core import Graph, from_edge_list

DATA = Path(__file__).parent / "data"


def random_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    p = rng.uniform(0.1, 0.7) if p is None else p
    return from_edge_list(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def random_connected_graph(rng: random.Random, n: int, extra: float = 0.2) -> Graph:
    # random spanning tree plus extra edges
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    edges |= {e for e in itertools.combinations(range(n), 2) if rng.random() < extra}
    return from_edge_list(n, edges)


def oracle_distances(g: Graph) -> np.ndarray:
    """Distances from successive boolean powers of (A + I)."""
    n = g.order
    step = g.adjacency_matrix().astype(bool) | np.eye(n, dtype=bool)
    reach = np.eye(n, dtype=bool)
    dist = np.full((n, n), -1, dtype=np.int64)
    dist[reach] = 0
    for k in range(1, n):
        reach = (reach.astype(np.int64) @ step.astype(np.int64)) > 0
        dist[reach & (dist < 0)] = k
    return dist


def _components_without(g: Graph, removed: set[int]) -> int:
    seen = set(removed)
    count = 0
    for s in range(g.order):
        if s in seen:
            continue
        count += 1
        stack = [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return count


def oracle_connectivity(g: Graph) -> int:
    n = g.order
    if _components_without(g, set()) != 1:
        return 0
    for k in range(n - 1):
        for cut in itertools.combinations(range(n), k):
            if _components_without(g, set(cut)) > 1:
                return k
    return n - 1


def oracle_2cuts(g: Graph) -> dict[tuple[int, int], int]:
    return {
        (a, b): c
        for a, b in itertools.combinations(range(g.order), 2)
        if (c := _components_without(g, {a, b})) > 1
    }


@pytest.fixture
def rng():
    return random.Random(20241015)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
