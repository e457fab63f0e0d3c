"""Exact unweighted shortest-path metric, distance spheres and half-sets."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import IndexOutOfRange, NotConnected, SameVertex
from .graph_core import Graph

UNREACHABLE = int(np.iinfo(np.uint16).max)


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """All-pairs hop counts; ``UNREACHABLE`` marks disconnected pairs."""

    dist: np.ndarray

    @property
    def order(self) -> int:
        return self.dist.shape[0]

    def __call__(self, u: int, v: int) -> int:
        return int(self.dist[u, v])

    @cached_property
    def connected(self) -> bool:
        return not bool((self.dist == UNREACHABLE).any())

    @cached_property
    def eccentricity(self) -> np.ndarray:
        """Largest finite distance from each vertex."""
        finite = np.where(self.dist == UNREACHABLE, 0, self.dist)
        return finite.max(axis=1) if self.order else finite.sum(axis=1)

    @cached_property
    def diameter(self) -> int:
        return int(self.eccentricity.max()) if self.order else 0

    def require_connected(self) -> None:
        if not self.connected:
            raise NotConnected("graph is not connected")

    def _check(self, *vertices: int) -> None:
        for v in vertices:
            if not 0 <= v < self.order:
                raise IndexOutOfRange(f"vertex {v} outside 0..{self.order - 1}")


def bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [UNREACHABLE] * g.order
    dist[source] = 0
    frontier = [source]
    adj = g.adjacency
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if dist[w] == UNREACHABLE:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    return dist


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """One breadth-first search per source vertex."""
    rows = [bfs_distances(g, s) for s in range(g.order)]
    return DistanceMatrix(np.array(rows, dtype=np.uint16).reshape(g.order, g.order))


def sphere(dm: DistanceMatrix, u: int, i: int) -> frozenset[int]:
    """Vertices at distance exactly ``i`` from ``u``."""
    dm._check(u)
    if i < 0:
        raise IndexOutOfRange(f"radius must be non-negative, got {i}")
    return frozenset(np.flatnonzero(dm.dist[u] == i).tolist())


def half_set(dm: DistanceMatrix, u: int, v: int) -> frozenset[int]:
    """Vertices strictly closer to ``u`` than to ``v``.

    ``u`` and ``v`` need not be adjacent.
    """
    dm._check(u, v)
    if u == v:
        raise SameVertex("half-set needs two distinct vertices")
    return frozenset(np.flatnonzero(half_set_mask(dm, u, v)).tolist())


def half_set_mask(dm: DistanceMatrix, u: int, v: int) -> np.ndarray:
    return dm.dist[u] < dm.dist[v]


def lies_on_shortest_path(dm: DistanceMatrix, a: int, b: int, c: int) -> bool:
    dm._check(a, b, c)
    dab = int(dm.dist[a, b])
    if dab == UNREACHABLE:
        return False
    return int(dm.dist[a, c]) + int(dm.dist[c, b]) == dab
