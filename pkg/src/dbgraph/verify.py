"""Structural consequences of distance balance, checked on a fixture corpus.

Each check prints one line: its name, PASS/FAIL, how many fixtures it
applied to, and the first few violations.  A fixture may override the
computed distance-balance flag (``assume_db``); that is how negative
controls feed a mislabelled graph through the checks that assume balance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from .constructions import (
    WGraphSpec,
    build_complete_bipartite,
    build_cycle,
    build_hypercube,
    build_w_graph,
)
from .decomposition import (
    analyze_minimal_2cut,
    build_layers,
    check_bad_component_size,
    check_distance3_layers,
    check_end_layers_complete,
    check_end_layer_distance,
    check_paths_through_cut,
    check_edge_class_counts,
    classify_edges,
    match_w_graph,
)
from .errors import StructureViolation
from .graph_core import Graph, is_cycle, two_coloring
from .isomorphism import are_isomorphic
from .metric import all_pairs_distances
from .properties import (
    enumerate_2cuts,
    is_distance_balanced,
    is_partial_cube,
    is_strongly_distance_balanced,
    vertex_connectivity,
)

MAX_REPORTED = 3


@dataclass(frozen=True)
class Fixture:
    name: str
    graph: Graph
    assume_db: bool | None = None
    w_spec: WGraphSpec | None = None


class Facts:
    """Lazily computed invariants of one fixture."""

    def __init__(self, fx: Fixture):
        self.fx = fx
        self.g = fx.graph
        self.dm = all_pairs_distances(fx.graph)

    @cached_property
    def bipartite(self) -> bool:
        return two_coloring(self.g) is not None

    @cached_property
    def db(self) -> bool:
        if self.fx.assume_db is not None:
            return self.fx.assume_db
        return is_distance_balanced(self.g, self.dm).holds

    @cached_property
    def db_computed(self) -> bool:
        return is_distance_balanced(self.g, self.dm).holds

    @cached_property
    def sdb(self) -> bool:
        return is_strongly_distance_balanced(self.g, self.dm).holds

    @cached_property
    def pcube(self) -> bool:
        return is_partial_cube(self.g, self.dm).holds

    @cached_property
    def kappa(self) -> int:
        return vertex_connectivity(self.g)

    @cached_property
    def cycle(self) -> bool:
        return is_cycle(self.g)

    @cached_property
    def cuts(self):
        return enumerate_2cuts(self.g, self.dm)

    @property
    def nontrivial(self) -> bool:
        return self.g.size >= 2

    @property
    def bip_db(self) -> bool:
        return self.bipartite and self.db and self.nontrivial

    @property
    def hypothesis(self) -> bool:
        """Bipartite, balanced, not a cycle, has a 2-cut."""
        return self.bip_db and not self.cycle and bool(self.cuts)

    @cached_property
    def analysis(self):
        return analyze_minimal_2cut(self.g, self.dm)

    @cached_property
    def layers(self):
        return build_layers(self.g, self.analysis, self.dm)


@dataclass
class CheckResult:
    name: str
    description: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status}  {self.name}: {self.description} [{self.checked} fixtures]"
        if self.failures:
            shown = self.failures[:MAX_REPORTED]
            more = len(self.failures) - len(shown)
            text += " -- " + "; ".join(shown) + (f"; +{more} more" if more else "")
        elif self.notes:
            text += " -- " + "; ".join(self.notes)
        return text


def default_corpus() -> list[Fixture]:
    fixtures = [Fixture(f"C_{n}", build_cycle(n)) for n in range(4, 13)]
    fixtures += [Fixture(f"Q_{d}", build_hypercube(d)) for d in range(1, 5)]
    fixtures += [
        Fixture(f"K_{{{p},{q}}}", build_complete_bipartite(p, q))
        for p in range(2, 5) for q in range(p, 5)
    ]
    for m in range(2, 5):
        for ell in range(3, 8):
            spec = WGraphSpec(m, ell)
            fixtures.append(Fixture(f"W({m},{ell})", build_w_graph(spec), w_spec=spec))
    return fixtures


# -- individual checks -------------------------------------------------------

Check = Callable[[list[Facts], CheckResult], None]
CHECKS: list[tuple[str, str, Check]] = []


def check(name: str, description: str):
    def register(fn: Check) -> Check:
        CHECKS.append((name, description, fn))
        return fn
    return register


@check("db-2-connected", "balanced graphs with two or more edges are 2-connected")
def _db_2_connected(facts, res):
    for f in facts:
        if f.db and f.nontrivial:
            res.checked += 1
            if f.kappa < 2:
                res.failures.append(f"{f.fx.name}: connectivity {f.kappa}")


@check("db-cut-pairs-nonadjacent", "in bipartite balanced graphs every 2-cut pair is at distance >= 2")
def _cut_pairs(facts, res):
    for f in facts:
        if f.bip_db:
            res.checked += 1
            close = [c for c in f.cuts if c.distance < 2]
            if close:
                res.failures.append(f"{f.fx.name}: 2-cut {{{close[0].a},{close[0].b}}} at distance {close[0].distance}")


@check("db-min-degree-3", "bipartite balanced non-cycles have minimum degree >= 3")
def _min_degree(facts, res):
    for f in facts:
        if f.bip_db and not f.cycle:
            res.checked += 1
            if f.g.min_degree() < 3:
                res.failures.append(f"{f.fx.name}: minimum degree {f.g.min_degree()}")


@check("minimal-cut-two-components", "the minimal-distance 2-cut leaves exactly two components")
def _two_components(facts, res):
    for f in facts:
        if f.bip_db and f.cuts:
            res.checked += 1
            if f.cuts[0].components != 2:
                res.failures.append(f"{f.fx.name}: {f.cuts[0].components} components")


@check("cross-edge-distances", "for edge xy and adjacent u in W_xy, v in W_yx: d(x,u) = d(y,v)")
def _cross_edges(facts, res):
    for f in facts:
        if not f.bip_db:
            continue
        res.checked += 1
        d = f.dm.dist.astype(np.int64)
        es = f.g.edge_array()
        both = np.concatenate([es, es[:, ::-1]])
        for x, y in f.g.edges():
            for x_, y_ in ((x, y), (y, x)):
                in_x = d[x_] < d[y_]
                in_y = d[y_] < d[x_]
                sel = in_x[both[:, 0]] & in_y[both[:, 1]]
                us, vs = both[sel, 0], both[sel, 1]
                bad = np.flatnonzero(d[x_, us] != d[y_, vs])
                if bad.size:
                    k = bad[0]
                    res.failures.append(f"{f.fx.name}: edge ({x_},{y_}) pair ({us[k]},{vs[k]})")
                    break
            else:
                continue
            break


def _hyp(facts, res, fn):
    for f in facts:
        if not f.hypothesis:
            continue
        res.checked += 1
        try:
            problem = fn(f)
        except StructureViolation as exc:
            problem = f"structure violation: {exc}"
        if problem:
            res.failures.append(f"{f.fx.name}: {problem}")


@check("paths-through-cut", "shortest paths between the two components pass through a or b")
def _through_cut(facts, res):
    def run(f):
        if not f.analysis.exactly_two_components:
            return f"{len(f.analysis.components)} components"
        v = check_paths_through_cut(f.dm, f.analysis)
        return None if v else str(v.witness)
    _hyp(facts, res, run)


@check("bad-component-half", "a component containing a bad vertex has at least n/2 vertices")
def _bad_half(facts, res):
    _hyp(facts, res, lambda f: None if check_bad_component_size(f.analysis, f.g.order)
         else str(check_bad_component_size(f.analysis, f.g.order).witness))


@check("good-bad-split", "one component is entirely bad and the other entirely good")
def _split(facts, res):
    _hyp(facts, res, lambda f: None if f.analysis.pure_split else "mixed components")


@check("cut-distance-at-least-3", "the minimal 2-cut has d(a,b) >= 3")
def _cut3(facts, res):
    _hyp(facts, res, lambda f: None if f.analysis.cut_distance >= 3 else f"d(a,b) = {f.analysis.cut_distance}")


@check("end-layers-distance", "d(x,y) = d(a,b) - 2 for x in B_1, y in B_m")
def _end_layers(facts, res):
    def run(f):
        v = check_end_layer_distance(f.dm, f.layers, f.analysis)
        return None if v else str(v.witness)
    _hyp(facts, res, run)


@check("end-layers-complete", "when d(a,b) = 3, B_1 and B_2 induce a complete bipartite graph")
def _end_complete(facts, res):
    def run(f):
        if f.analysis.cut_distance != 3:
            return None
        v = check_end_layers_complete(f.g, f.layers)
        return None if v else str(v.witness)
    _hyp(facts, res, run)


@check("distance-3-layers", "when d(a,b) = 3 the bad-component layers have the forced sizes and joins")
def _d3_layers(facts, res):
    def run(f):
        if f.analysis.cut_distance != 3:
            return None
        v = check_distance3_layers(f.g, f.analysis, f.layers)
        return None if v else str(v.witness)
    _hyp(facts, res, run)


@check("edge-class-counts", "horizontal half-sets stay in the bad component; vertical ones match the layer count")
def _edge_classes(facts, res):
    def run(f):
        classes = classify_edges(f.g, f.analysis, f.layers)
        v = check_edge_class_counts(f.g, f.dm, f.analysis, f.layers, classes)
        return None if v else str(v.witness)
    _hyp(facts, res, run)


@check("w-graph-dichotomy", "W(m,l) is bipartite, not 3-connected, and balanced exactly when l is odd")
def _w_dichotomy(facts, res):
    for f in facts:
        spec = f.fx.w_spec
        if spec is None:
            continue
        res.checked += 1
        odd = spec.ell % 2 == 1
        if not f.bipartite or f.kappa >= 3:
            res.failures.append(f"{f.fx.name}: bipartite={f.bipartite} connectivity={f.kappa}")
        elif f.db_computed != odd:
            res.failures.append(f"{f.fx.name}: balanced={f.db_computed} but l={spec.ell}")
        elif not odd:
            res.notes.append(f"{f.fx.name} correctly non-DB")
    res.notes = res.notes[:2]


@check("distance-3-classification", "balanced bipartite graphs with a 2-cut at distance 3 are cycles or W(m,l), l odd")
def _classify(facts, res):
    for f in facts:
        if not f.bip_db or not any(c.distance == 3 for c in f.cuts):
            continue
        res.checked += 1
        if f.cycle:
            continue
        try:
            spec = match_w_graph(f.g, f.analysis, f.layers, iso_cap=max(64, f.g.order))
        except StructureViolation as exc:
            res.failures.append(f"{f.fx.name}: {exc}")
            continue
        if spec is None or spec.ell % 2 == 0:
            res.failures.append(f"{f.fx.name}: not recognised as W(m,l) with l odd")


@check("smallest-order-18", "no non-cycle balanced bipartite 2-cut graph below order 18; W(2,3) at 18")
def _smallest(facts, res):
    w23 = build_w_graph(WGraphSpec(2, 3))
    for f in facts:
        if not (f.hypothesis and f.kappa < 3):
            continue
        res.checked += 1
        if f.g.order < 18:
            res.failures.append(f"{f.fx.name}: order {f.g.order}")
        elif f.g.order == 18 and not are_isomorphic(f.g, w23):
            res.failures.append(f"{f.fx.name}: order 18 but not W(2,3)")


@check("sdb-3-connected", "bipartite strongly balanced non-cycles are 3-connected")
def _sdb3(facts, res):
    for f in facts:
        if f.bipartite and f.nontrivial and not f.cycle and f.sdb:
            res.checked += 1
            if f.kappa < 3:
                res.failures.append(f"{f.fx.name}: connectivity {f.kappa}")


@check("db-partial-cube-3-connected", "balanced partial cubes that are not cycles are 3-connected")
def _pc3(facts, res):
    for f in facts:
        if f.db_computed and f.nontrivial and not f.cycle and f.pcube:
            res.checked += 1
            if f.kappa < 3:
                res.failures.append(f"{f.fx.name}: connectivity {f.kappa}")


@check("w-graphs-not-sdb", "W(m,l) with l odd is neither strongly balanced nor a partial cube")
def _w_not_sdb(facts, res):
    for f in facts:
        spec = f.fx.w_spec
        if spec is None or spec.ell % 2 == 0:
            continue
        res.checked += 1
        if f.sdb or f.pcube:
            res.failures.append(f"{f.fx.name}: sdb={f.sdb} partial_cube={f.pcube}")


@check("implications", "strongly balanced implies balanced; partial cube implies bipartite")
def _implications(facts, res):
    for f in facts:
        res.checked += 1
        if f.sdb and not f.db_computed:
            res.failures.append(f"{f.fx.name}: SDB but not DB")
        if f.pcube and not f.bipartite:
            res.failures.append(f"{f.fx.name}: partial cube but not bipartite")


def verify_suite(corpus: list[Fixture] | None = None) -> list[CheckResult]:
    facts = [Facts(fx) for fx in (corpus if corpus is not None else default_corpus())]
    results = []
    for name, description, fn in CHECKS:
        res = CheckResult(name, description)
        fn(facts, res)
        results.append(res)
    return results
