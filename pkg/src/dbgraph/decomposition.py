"""Minimal 2-cut decomposition of bipartite graphs that are not 3-connected.

For a chosen 2-cut {a, b} of minimal distance, the vertices lying on some
shortest a-b path are *good*, the rest *bad*.  For bipartite distance-balanced
non-cycles, one component of G - {a, b} is entirely bad and the other entirely
good.  The good component is sliced into layers ``B_1..B_m`` by distance from
``a``; the bad component, together with ``a`` and ``b``, induces a subgraph
G~ whose own metric slices it into layers ``D_1..D_t``.

On inputs outside those hypotheses the functions stay descriptive: they
report what they find through flags and verdicts, and raise
:class:`StructureViolation` only when a layer structure cannot be defined.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .constructions import WGraphSpec, build_w_graph
from .errors import Is3Connected, NotBipartite, StructureViolation
from .graph_core import Graph, two_coloring
from .isomorphism import DEFAULT_ISO_CAP, are_isomorphic
from .metric import UNREACHABLE, DistanceMatrix, all_pairs_distances, bfs_distances
from .properties import PredicateVerdict, HOLDS, minimal_2cut


@dataclass(frozen=True)
class TwoCutAnalysis:
    a: int
    b: int
    cut_distance: int
    components: tuple[frozenset[int], ...]
    good_vertices: frozenset[int]
    bad_component_index: int | None
    good_component_index: int | None

    @property
    def m(self) -> int:
        return self.cut_distance - 1

    @property
    def exactly_two_components(self) -> bool:
        return len(self.components) == 2

    @property
    def pure_split(self) -> bool:
        """One component is all bad and the other all good."""
        return self.bad_component_index is not None

    @property
    def bad_component(self) -> frozenset[int]:
        if self.bad_component_index is None:
            raise StructureViolation("no all-bad / all-good component split")
        return self.components[self.bad_component_index]

    @property
    def good_component(self) -> frozenset[int]:
        if self.good_component_index is None:
            raise StructureViolation("no all-bad / all-good component split")
        return self.components[self.good_component_index]


@dataclass(frozen=True, eq=False)
class LayerStructure:
    a: int
    b: int
    m: int
    B: tuple[frozenset[int], ...]
    D: tuple[frozenset[int], ...]
    t: int
    tilde_ab: int
    on_geodesics: bool
    tilde_from_a: np.ndarray
    tilde_from_b: np.ndarray

    def b_layer(self, j: int) -> frozenset[int]:
        """``B_j`` with ``B_0 = {a}``, ``B_{m+1} = {b}`` and empty beyond."""
        if j == 0:
            return frozenset((self.a,))
        if j == self.m + 1:
            return frozenset((self.b,))
        if 1 <= j <= self.m:
            return self.B[j - 1]
        return frozenset()

    def d_layer(self, i: int) -> frozenset[int]:
        """``D_i`` with ``D_0 = {a}``, ``D_{t+1} = {b}`` and empty beyond."""
        if i == 0:
            return frozenset((self.a,))
        if i == self.t + 1 and self.on_geodesics:
            return frozenset((self.b,))
        if 1 <= i <= self.t:
            return self.D[i - 1]
        return frozenset()


@dataclass(frozen=True)
class EdgeClass:
    """An edge of G~ with its roles.

    For a horizontal edge ``x`` is the left vertex and ``y`` the right one
    (closer to both a and b).  For a vertical edge ``x`` is the upper vertex
    (closer to a) and ``y`` the lower one.
    """

    edge: tuple[int, int]
    kind: Literal["horizontal", "vertical"]
    x: int
    y: int

    @property
    def left(self) -> int:
        self._need("horizontal")
        return self.x

    @property
    def right(self) -> int:
        self._need("horizontal")
        return self.y

    @property
    def upper(self) -> int:
        self._need("vertical")
        return self.x

    @property
    def lower(self) -> int:
        self._need("vertical")
        return self.y

    def _need(self, kind):
        if self.kind != kind:
            raise AttributeError(f"{self.kind} edge has no {kind} roles")


def good_vertices(dm: DistanceMatrix, a: int, b: int) -> frozenset[int]:
    """Vertices on some shortest a-b path."""
    dm._check(a, b)
    d = dm.dist.astype(np.int64)
    return frozenset(np.flatnonzero(d[a] + d[b] == d[a, b]).tolist())


def _components_without(g: Graph, removed: set[int]) -> list[frozenset[int]]:
    seen = set(removed)
    comps = []
    for s in range(g.order):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(frozenset(comp))
    return comps


def analyze_minimal_2cut(g: Graph, dm: DistanceMatrix) -> TwoCutAnalysis:
    """Pick the 2-cut minimising (d(a,b), a, b) and split its components into good and bad."""
    dm.require_connected()
    if two_coloring(g) is None:
        raise NotBipartite("the decomposition is defined for bipartite graphs")
    cut = minimal_2cut(g, dm)
    if cut is None:
        raise Is3Connected("graph has no 2-cut")
    a, b = cut.a, cut.b
    comps = tuple(sorted(_components_without(g, {a, b}), key=min))
    good = good_vertices(dm, a, b)
    bad_idx = good_idx = None
    if len(comps) == 2:
        all_good = [c <= good for c in comps]
        all_bad = [not (c & good) for c in comps]
        for i in (0, 1):
            if all_bad[i] and all_good[1 - i]:
                bad_idx, good_idx = i, 1 - i
                break
    return TwoCutAnalysis(a, b, cut.distance, comps, good, bad_idx, good_idx)


def _tilde_distances(g: Graph, analysis: TwoCutAnalysis) -> tuple[np.ndarray, np.ndarray]:
    """Distances from a and from b inside G~ = <bad component + {a, b}>, indexed
    by original vertex (UNREACHABLE outside G~)."""
    keep = analysis.bad_component | {analysis.a, analysis.b}
    sub, labels = g.induced_subgraph(keep)
    idx = {v: k for k, v in enumerate(labels)}
    out = []
    for s in (analysis.a, analysis.b):
        local = bfs_distances(sub, idx[s])
        row = np.full(g.order, UNREACHABLE, dtype=np.int64)
        row[labels] = local
        out.append(row)
    return out[0], out[1]


def build_layers(g: Graph, analysis: TwoCutAnalysis, dm: DistanceMatrix | None = None) -> LayerStructure:
    """Layers ``B_i`` of the good component and ``D_i`` of the bad component."""
    if not analysis.pure_split:
        raise StructureViolation("layers need exactly two components, one all bad and one all good")
    if dm is None:
        dm = all_pairs_distances(g)
    a, b, m = analysis.a, analysis.b, analysis.m
    d = dm.dist.astype(np.int64)
    good_comp = np.array(sorted(analysis.good_component))
    B = []
    for i in range(1, m + 1):
        from_a = frozenset(good_comp[d[a, good_comp] == i].tolist())
        from_b = frozenset(good_comp[d[b, good_comp] == m + 1 - i].tolist())
        if from_a != from_b:
            raise StructureViolation(f"B_{i} differs when measured from a and from b")
        B.append(from_a)
    if frozenset().union(*B) != analysis.good_component:
        raise StructureViolation("B layers do not cover the good component")
    layer_of = {a: 0, b: m + 1}
    for i, layer in enumerate(B, start=1):
        layer_of.update(dict.fromkeys(layer, i))
    for i, layer in enumerate(B, start=1):
        for x in layer:
            for w in g.adjacency[x]:
                if abs(layer_of[w] - i) != 1:
                    raise StructureViolation(f"vertex {x} of B_{i} has neighbour {w} outside B_{i-1} and B_{i+1}")

    ta, tb = _tilde_distances(g, analysis)
    tilde_ab = int(ta[b])
    if tilde_ab == UNREACHABLE:
        raise StructureViolation("a and b are not connected through the bad component")
    bad = np.array(sorted(analysis.bad_component))
    on_geodesics = bool(np.all(ta[bad] + tb[bad] == tilde_ab))
    depth = int(ta[bad].max())
    D = tuple(frozenset(bad[ta[bad] == i].tolist()) for i in range(1, depth + 1))
    t = max((i for i, layer in enumerate(D, start=1) if layer), default=0)
    D = D[:t]
    if on_geodesics:
        if t + 1 != tilde_ab:
            raise StructureViolation("D layers do not reach b")
        for i, layer in enumerate(D, start=1):
            if layer != frozenset(bad[tb[bad] == t + 1 - i].tolist()):
                raise StructureViolation(f"D_{i} differs when measured from a and from b")
    return LayerStructure(a, b, m, tuple(B), D, t, tilde_ab, on_geodesics, ta, tb)


def classify_edges(g: Graph, analysis: TwoCutAnalysis, layers: LayerStructure | None = None) -> list[EdgeClass]:
    """Classify every edge of G~ as horizontal or vertical, using the metric of G~."""
    if layers is None:
        layers = build_layers(g, analysis)
    ta, tb = layers.tilde_from_a, layers.tilde_from_b
    keep = analysis.bad_component | {analysis.a, analysis.b}
    out = []
    for u, v in g.edges():
        if u not in keep or v not in keep:
            continue
        da, db = ta[u] - ta[v], tb[u] - tb[v]
        if da == db and abs(da) == 1:
            left, right = (u, v) if da == 1 else (v, u)
            out.append(EdgeClass((u, v), "horizontal", left, right))
        elif da == -db and abs(da) == 1:
            upper, lower = (u, v) if da == -1 else (v, u)
            out.append(EdgeClass((u, v), "vertical", upper, lower))
        else:
            raise StructureViolation(f"edge ({u}, {v}) is neither horizontal nor vertical")
    return out


def _half(n: int, x: int) -> int:
    if x % 2:
        raise StructureViolation("odd numerator in a layer-index formula")
    return x // 2


def check_edge_class_counts(
    g: Graph,
    dm: DistanceMatrix,
    analysis: TwoCutAnalysis,
    layers: LayerStructure,
    classes: list[EdgeClass],
) -> PredicateVerdict:
    """Half-set counts across the edges of G~.

    Horizontal edge, x left, y right: W_xy lies inside the bad component.
    Vertical edge, x upper, y lower: with
    ``k = (d~(a,b) + d~(x,a) - d~(y,b) + 1) / 2`` and
    ``J = (d~(a,b) + m + 1) / 2 - k``,
    ``|W_xy ∩ bad| = n/2 - sum_{j=0..J} |B_j|``.
    """
    n = g.order
    d = dm.dist
    bad_mask = np.zeros(n, dtype=bool)
    bad_mask[list(analysis.bad_component)] = True
    ta, tb = layers.tilde_from_a, layers.tilde_from_b
    m, tab = layers.m, layers.tilde_ab
    prefix = np.cumsum([len(layers.b_layer(j)) for j in range(m + 2)])
    for ec in classes:
        x, y = ec.x, ec.y
        w_xy = d[x] < d[y]
        if ec.kind == "horizontal":
            outside = np.flatnonzero(w_xy & ~bad_mask)
            if outside.size:
                return PredicateVerdict(False, {
                    "edge": [x, y], "kind": "horizontal", "vertex": int(outside[0]),
                })
            continue
        k = _half(n, tab + int(ta[x]) - int(tb[y]) + 1)
        top = _half(n, tab + m + 1) - k
        layer_sum = 0 if top < 0 else int(prefix[min(top, m + 1)])
        count = int((w_xy & bad_mask).sum())
        if 2 * count != n - 2 * layer_sum:
            return PredicateVerdict(False, {
                "edge": [x, y], "kind": "vertical", "index": k, "top": top,
                "count": count, "expected": n / 2 - layer_sum,
            })
    return HOLDS


def check_end_layer_distance(dm: DistanceMatrix, layers: LayerStructure, analysis: TwoCutAnalysis) -> PredicateVerdict:
    """d(x, y) = d(a, b) - 2 for all x in B_1 and y in B_m."""
    expected = analysis.cut_distance - 2
    for x in sorted(layers.B[0]):
        for y in sorted(layers.B[-1]):
            if dm(x, y) != expected:
                return PredicateVerdict(False, {"x": x, "y": y, "distance": dm(x, y), "expected": expected})
    return HOLDS


def _complete_between(g: Graph, left: frozenset[int], right: frozenset[int]) -> tuple[int, int] | None:
    for x in sorted(left):
        nbrs = set(g.adjacency[x])
        for y in sorted(right):
            if y not in nbrs:
                return x, y
    return None


def check_end_layers_complete(g: Graph, layers: LayerStructure) -> PredicateVerdict:
    """When m = 2, <B_1 ∪ B_2> is the complete bipartite graph K_{|B_1|,|B_2|}."""
    if layers.m != 2:
        return PredicateVerdict(False, {"m": layers.m, "reason": "only defined for m = 2"})
    missing = _complete_between(g, layers.B[0], layers.B[1])
    if missing:
        return PredicateVerdict(False, {"missing_edge": list(missing)})
    return HOLDS


def check_distance3_layers(g: Graph, analysis: TwoCutAnalysis, layers: LayerStructure) -> PredicateVerdict:
    """Layer sizes and complete joins forced when d(a, b) = 3."""
    if analysis.cut_distance != 3 or not layers.on_geodesics:
        return PredicateVerdict(False, {"clause": "hypothesis", "cut_distance": analysis.cut_distance,
                                        "on_geodesics": layers.on_geodesics})
    t = layers.t
    if t % 2:
        return PredicateVerdict(False, {"clause": "t even", "t": t})
    h = t // 2
    size = lambda i: len(layers.d_layer(i))
    b1, b2 = len(layers.B[0]), len(layers.B[1])
    checks = [
        ("middle layers are singletons", size(h) == 1 and size(h + 1) == 1),
        ("|B_1| = |B_2|", b1 == b2),
        ("layers beside the middle have |B_1| vertices", size(h - 1) == b1 and size(h + 2) == b1),
        ("end layers are singletons", size(1) == 1 and size(t) == 1),
        ("t >= 8", t >= 8),
        ("next-but-two layers are singletons", size(h + 4) == 1 and size(h - 3) == 1),
    ]
    for clause, ok in checks:
        if not ok:
            return PredicateVerdict(False, {"clause": clause, "t": t,
                                            "sizes": [size(i) for i in range(1, t + 1)], "B1": b1, "B2": b2})
    for i, j in ((h + 2, h + 3), (h - 1, h - 2)):
        missing = _complete_between(g, layers.d_layer(i), layers.d_layer(j))
        if missing:
            return PredicateVerdict(False, {"clause": f"D_{i} fully joined to D_{j}", "missing_edge": list(missing)})
    return HOLDS


def check_paths_through_cut(dm: DistanceMatrix, analysis: TwoCutAnalysis) -> PredicateVerdict:
    """Across the cut, d(x, y) = min(d(x,a) + d(a,y), d(x,b) + d(b,y))."""
    d = dm.dist.astype(np.int64)
    a, b = analysis.a, analysis.b
    first, second = (sorted(c) for c in analysis.components[:2])
    xs, ys = np.array(first), np.array(second)
    via = np.minimum(d[xs, a][:, None] + d[a, ys][None, :], d[xs, b][:, None] + d[b, ys][None, :])
    bad = np.argwhere(d[np.ix_(xs, ys)] != via)
    if bad.size:
        i, j = bad[0]
        return PredicateVerdict(False, {"x": int(xs[i]), "y": int(ys[j])})
    return HOLDS


def check_bad_component_size(analysis: TwoCutAnalysis, n: int) -> PredicateVerdict:
    """Any component containing a bad vertex has at least n/2 vertices."""
    for idx, comp in enumerate(analysis.components):
        if comp - analysis.good_vertices and 2 * len(comp) < n:
            return PredicateVerdict(False, {"component": idx, "size": len(comp), "order": n})
    return HOLDS


def match_w_graph(g: Graph, analysis: TwoCutAnalysis, layers: LayerStructure,
                  iso_cap: int = DEFAULT_ISO_CAP) -> WGraphSpec | None:
    """The W(m, l) that ``g`` is isomorphic to, read off from its layers, if any."""
    if analysis.cut_distance != 3 or not layers.on_geodesics or layers.t % 4:
        return None
    m, ell = len(layers.B[0]), layers.t // 4 + 1
    if m < 2 or ell < 3:
        return None
    spec = WGraphSpec(m, ell)
    if spec.order != g.order or g.order > iso_cap:
        return None
    return spec if are_isomorphic(g, build_w_graph(spec), cap=iso_cap) else None
