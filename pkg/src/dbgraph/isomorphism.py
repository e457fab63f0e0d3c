"""Backtracking isomorphism test for small graphs."""

from __future__ import annotations

from collections import deque

import numpy as np

from .errors import OrderTooLarge
from .graph_core import Graph
from .metric import all_pairs_distances

DEFAULT_ISO_CAP = 64


def _profiles(dist: np.ndarray) -> list[tuple[int, ...]]:
    # distance-distribution of each row; UNREACHABLE folds into the last bin
    width = int(dist[dist < np.iinfo(dist.dtype).max].max(initial=0)) + 2
    clipped = np.minimum(dist, width - 1).astype(np.intp)
    return [tuple(np.bincount(row, minlength=width)) for row in clipped]


def _search_order(g: Graph, start: int) -> list[int]:
    """BFS order from ``start``, restarted per component, so most vertices
    have an already-placed neighbour when they are reached."""
    seen = [False] * g.order
    order = []
    for s in [start] + list(range(g.order)):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


def are_isomorphic(g1: Graph, g2: Graph, cap: int = DEFAULT_ISO_CAP) -> bool:
    if g1.order > cap or g2.order > cap:
        raise OrderTooLarge(f"isomorphism test limited to order {cap}")
    if g1.order != g2.order or g1.size != g2.size:
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    d1 = all_pairs_distances(g1).dist
    d2 = all_pairs_distances(g2).dist
    p1, p2 = _profiles(d1), _profiles(d2)
    if sorted(p1) != sorted(p2):
        return False

    by_profile: dict[tuple, list[int]] = {}
    for w, p in enumerate(p2):
        by_profile.setdefault(p, []).append(w)
    # start from the vertex whose profile class is smallest
    start = min(range(g1.order), key=lambda v: (len(by_profile[p1[v]]), v))
    order = _search_order(g1, start)
    n = g1.order
    d1, d2 = d1.tolist(), d2.tolist()
    image = [-1] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        placed = order[:k]
        for w in by_profile[p1[v]]:
            if used[w]:
                continue
            row_v, row_w = d1[v], d2[w]
            if all(row_v[u] == row_w[image[u]] for u in placed):
                image[v] = w
                used[w] = True
                if extend(k + 1):
                    return True
                used[w] = False
                image[v] = -1
        return False

    return extend(0)
