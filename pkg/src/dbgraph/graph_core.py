"""Immutable simple undirected graphs and bit-exact graph6 interchange.

Vertices are the dense indices ``0..n-1``.  A :class:`Graph` never changes
after construction, so it can be shared freely between workers.
"""

from __future__ import annotations

from collections import deque
from math import isqrt
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    IndexOutOfRange,
    MalformedRecord,
    NotConnected,
    SelfLoop,
    UnsupportedOrder,
)

GRAPH6_HEADER = ">>graph6<<"
DEFAULT_ORDER_CAP = 100_000
# Orders above this switch graph6 coding from Python ints to numpy bit arrays.
_SMALL = 64
# Largest order the graph6 length prefix can express at all.
_GRAPH6_MAX_ORDER = 68_719_476_735


class Graph:
    """Simple undirected graph on vertices ``0..order-1``.

    ``adjacency[v]`` is the sorted tuple of neighbours of ``v``.  Use
    :func:`from_edge_list` or :func:`decode_graph6` rather than calling the
    constructor with unchecked data.
    """

    __slots__ = ("order", "adjacency", "size", "_edges")

    def __init__(self, order: int, adjacency: Sequence[Sequence[int]]):
        adj = tuple(tuple(nbrs) for nbrs in adjacency)
        if len(adj) != order:
            raise ValueError("adjacency length does not match order")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "adjacency", adj)
        object.__setattr__(self, "size", sum(len(a) for a in adj) // 2)
        object.__setattr__(self, "_edges", None)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.order == other.order and self.adjacency == other.adjacency

    def __hash__(self):
        return hash((self.order, self.adjacency))

    def __repr__(self):
        return f"Graph(order={self.order}, size={self.size})"

    def __reduce__(self):
        return (Graph, (self.order, self.adjacency))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def min_degree(self) -> int:
        return min((len(a) for a in self.adjacency), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.adjacency[u]
        if len(nbrs) < 16:
            return v in nbrs
        i = np.searchsorted(nbrs, v)
        return i < len(nbrs) and nbrs[i] == v

    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        if self._edges is None:
            es = tuple((u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v)
            object.__setattr__(self, "_edges", es)
        return self._edges

    def edge_array(self) -> np.ndarray:
        """Edges as an ``(m, 2)`` integer array, same order as :meth:`edges`."""
        es = self.edges()
        if not es:
            return np.zeros((0, 2), dtype=np.intp)
        return np.array(es, dtype=np.intp)

    def adjacency_matrix(self) -> np.ndarray:
        mat = np.zeros((self.order, self.order), dtype=bool)
        for u, nbrs in enumerate(self.adjacency):
            mat[u, list(nbrs)] = True
        return mat

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Return ``(subgraph, labels)`` where ``labels[k]`` is the original index of vertex ``k``."""
        labels = sorted(set(vertices))
        index = {v: k for k, v in enumerate(labels)}
        adj = [
            [index[w] for w in self.adjacency[v] if w in index]
            for v in labels
        ]
        return Graph(len(labels), adj), labels


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph on ``n`` vertices; repeated edges collapse to one."""
    if n < 1:
        raise UnsupportedOrder(f"order must be at least 1, got {n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, [sorted(s) for s in nbrs])


# -- graph6 -----------------------------------------------------------------


def _encode_order(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    if n <= 258_047:
        return "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    return "~~" + "".join(chr(63 + ((n >> s) & 63)) for s in (30, 24, 18, 12, 6, 0))


def _decode_order(data: bytes) -> tuple[int, int]:
    """Return ``(n, header_length)`` for the length prefix of ``data``."""
    if not data:
        raise MalformedRecord("empty record")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise MalformedRecord("truncated 8-byte order prefix")
        width, start = 6, 2
    else:
        if len(data) < 4:
            raise MalformedRecord("truncated 4-byte order prefix")
        width, start = 3, 1
    n = 0
    for c in data[start:start + width]:
        n = (n << 6) | (c - 63)
    return n, start + width


def encode_graph6(g: Graph, order_cap: int = DEFAULT_ORDER_CAP) -> str:
    """Encode ``g`` as a graph6 record (no header, no trailing newline)."""
    n = g.order
    if n > order_cap or n > _GRAPH6_MAX_ORDER:
        raise UnsupportedOrder(f"order {n} exceeds cap {order_cap}")
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    total_bits = 6 * nbytes
    if n > _SMALL:
        bits = np.zeros(total_bits, dtype=np.uint8)
        es = g.edge_array()
        if len(es):
            bits[es[:, 1] * (es[:, 1] - 1) // 2 + es[:, 0]] = 1
        groups = bits.reshape(-1, 6) @ np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8)
        return _encode_order(n) + (groups + 63).astype(np.uint8).tobytes().decode("ascii")
    value = 0
    for u, v in g.edges():
        # bit index of (u, v), u < v, in column-major upper-triangle order
        k = v * (v - 1) // 2 + u
        value |= 1 << (total_bits - 1 - k)
    chars = []
    for idx in range(nbytes):
        shift = total_bits - 6 * (idx + 1)
        chars.append(chr(63 + ((value >> shift) & 63)))
    return _encode_order(n) + "".join(chars)


def decode_graph6(text: str | bytes, order_cap: int = DEFAULT_ORDER_CAP) -> Graph:
    """Decode one graph6 record.

    An optional ``>>graph6<<`` header and surrounding whitespace (including
    a trailing newline) are ignored.
    """
    data = text.encode("ascii", "replace") if isinstance(text, str) else bytes(text)
    data = data.strip()
    if data.startswith(GRAPH6_HEADER.encode()):
        data = data[len(GRAPH6_HEADER):]
    for c in data:
        if c < 63 or c > 126:
            raise MalformedRecord(f"byte {c!r} outside the graph6 range 63..126")
    n, head = _decode_order(data)
    if n < 1:
        raise MalformedRecord("graph6 record encodes an empty graph")
    if n > order_cap:
        raise UnsupportedOrder(f"order {n} exceeds cap {order_cap}")
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    body = data[head:]
    if len(body) != nbytes:
        raise MalformedRecord(f"expected {nbytes} data bytes for order {n}, got {len(body)}")
    if n > _SMALL:
        return _decode_large(n, nbits, body)
    total_bits = 6 * nbytes
    value = 0
    for c in body:
        value = (value << 6) | (c - 63)
    pad = total_bits - nbits
    if pad and value & ((1 << pad) - 1):
        raise MalformedRecord("nonzero padding bits")
    nbrs: list[list[int]] = [[] for _ in range(n)]
    while value:
        low = value & -value
        k = total_bits - low.bit_length()
        value ^= low
        v = (1 + isqrt(1 + 8 * k)) // 2
        u = k - v * (v - 1) // 2
        nbrs[u].append(v)
        nbrs[v].append(u)
    return Graph(n, [sorted(a) for a in nbrs])


def _decode_large(n: int, nbits: int, body: bytes) -> Graph:
    groups = np.frombuffer(body, dtype=np.uint8) - 63
    bits = np.unpackbits(groups[:, None], axis=1)[:, 2:].ravel()
    if bits[nbits:].any():
        raise MalformedRecord("nonzero padding bits")
    ks = np.flatnonzero(bits[:nbits]).astype(np.int64)
    cols = ((1 + np.sqrt(1 + 8 * ks.astype(np.float64))) // 2).astype(np.int64)
    # float sqrt can be off by one near perfect squares
    cols -= cols * (cols - 1) // 2 > ks
    cols += (cols + 1) * cols // 2 <= ks
    rows = ks - cols * (cols - 1) // 2
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in zip(rows.tolist(), cols.tolist()):
        nbrs[u].append(v)
        nbrs[v].append(u)
    return Graph(n, [sorted(a) for a in nbrs])


def read_graph6_lines(lines: Iterable[str | bytes]) -> Iterable[str]:
    """Yield non-blank records from an iterable of lines, header stripped."""
    for line in lines:
        if isinstance(line, bytes):
            line = line.decode("ascii", "replace")
        rec = line.strip()
        if rec.startswith(GRAPH6_HEADER):
            rec = rec[len(GRAPH6_HEADER):]
        if rec:
            yield rec


# -- traversal --------------------------------------------------------------


def _components(g: Graph) -> list[list[int]]:
    seen = [False] * g.order
    comps = []
    for s in range(g.order):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    seen = [False] * g.order
    seen[0] = True
    stack = [0]
    count = 1
    adj = g.adjacency
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == g.order


def two_coloring(g: Graph) -> list[int] | None:
    """Proper 2-colouring of every component (colour 0 at each component's
    smallest vertex), or ``None`` if some component has an odd cycle."""
    color = [-1] * g.order
    adj = g.adjacency
    for s in range(g.order):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            cu = color[u]
            for w in adj[u]:
                if color[w] < 0:
                    color[w] = 1 - cu
                    stack.append(w)
                elif color[w] == cu:
                    return None
    return color


def bipartition(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """The unique bipartition of a connected graph, side of vertex 0 first."""
    if not is_connected(g):
        raise NotConnected("bipartition requires a connected graph")
    color = two_coloring(g)
    if color is None:
        return None
    side0 = frozenset(v for v, c in enumerate(color) if c == 0)
    side1 = frozenset(v for v, c in enumerate(color) if c == 1)
    return side0, side1


def is_cycle(g: Graph) -> bool:
    return g.order >= 3 and all(len(a) == 2 for a in g.adjacency) and is_connected(g)
