"""Graph families used as fixtures: W(m, l), cycles, hypercubes, K_{p,q}.

Index layout of W(m, l)
-----------------------
Ring position ``i`` (``0 <= i < 4l``) holds ``f(i)`` vertices, where
``f(i) = 1`` when ``i % 4`` is 0 or 3 and ``f(i) = m`` otherwise.  Vertex
``(i, j)`` with ``1 <= j <= f(i)`` gets the dense index obtained by listing
the pairs in row-major ``(i, j)`` order, so position 0 is index 0, position
1 is indices ``1..m``, and so on.  Every vertex at position ``i`` is joined to
every vertex at position ``i + 1 (mod 4l)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SpecOutOfRange
from .graph_core import Graph, from_edge_list


@dataclass(frozen=True)
class WGraphSpec:
    m: int
    ell: int

    def __post_init__(self):
        if self.m < 2 or self.ell < 3:
            raise SpecOutOfRange(f"W(m, l) needs m >= 2 and l >= 3, got m={self.m}, l={self.ell}")

    @property
    def ring_length(self) -> int:
        return 4 * self.ell

    @property
    def order(self) -> int:
        return 2 * self.ell * (self.m + 1)

    def block_size(self, i: int) -> int:
        return 1 if i % 4 in (0, 3) else self.m

    def positions(self) -> list[list[int]]:
        """Dense indices grouped by ring position."""
        groups = []
        nxt = 0
        for i in range(self.ring_length):
            size = self.block_size(i)
            groups.append(list(range(nxt, nxt + size)))
            nxt += size
        return groups

    def labels(self) -> list[tuple[int, int]]:
        """``labels[idx] == (i, j)`` for every dense index."""
        return [(i, j + 1) for i, grp in enumerate(self.positions()) for j in range(len(grp))]


def build_w_graph(spec: WGraphSpec | None = None, *, m: int | None = None, ell: int | None = None) -> Graph:
    if spec is None:
        spec = WGraphSpec(m, ell)
    groups = spec.positions()
    ring = spec.ring_length
    edges = []
    for i in range(ring):
        for x in groups[i]:
            for y in groups[(i + 1) % ring]:
                edges.append((x, y))
    return from_edge_list(spec.order, edges)


def build_cycle(n: int) -> Graph:
    if n < 3:
        raise SpecOutOfRange(f"a cycle needs at least 3 vertices, got {n}")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def build_hypercube(d: int) -> Graph:
    if not 1 <= d <= 16:
        raise SpecOutOfRange(f"hypercube dimension must be in 1..16, got {d}")
    n = 1 << d
    return from_edge_list(n, [(v, v ^ (1 << k)) for v in range(n) for k in range(d) if v < v ^ (1 << k)])


def build_complete_bipartite(p: int, q: int) -> Graph:
    """K_{p,q} with sides ``0..p-1`` and ``p..p+q-1``."""
    if p < 1 or q < 1:
        raise SpecOutOfRange(f"both sides need at least one vertex, got {p}, {q}")
    return from_edge_list(p + q, [(i, p + j) for i in range(p) for j in range(q)])


def build_path(n: int) -> Graph:
    if n < 1:
        raise SpecOutOfRange(f"a path needs at least 1 vertex, got {n}")
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])
