from __future__ import annotations

import random

import numpy as np
import pytest

from dbgraph.constructions import (
    WGraphSpec,
    build_complete_bipartite,
    build_cycle,
    build_hypercube,
    build_w_graph,
)
from dbgraph.decomposition import (
    EdgeClass,
    analyze_minimal_2cut,
    build_layers,
    check_bad_component_size,
    check_distance3_layers,
    check_end_layers_complete,
    check_end_layer_distance,
    check_paths_through_cut,
    check_edge_class_counts,
    classify_edges,
    good_vertices,
    match_w_graph,
)
from dbgraph.errors import Is3Connected, NotBipartite, NotConnected, OrderTooLarge, StructureViolation
from dbgraph.graph_core import Graph, from_edge_list
from dbgraph.isomorphism import are_isomorphic
from dbgraph.metric import all_pairs_distances

ODD_W = [(m, ell) for m in (2, 3, 4, 5) for ell in (3, 5, 7)]


def decompose(g):
    dm = all_pairs_distances(g)
    an = analyze_minimal_2cut(g, dm)
    layers = build_layers(g, an, dm)
    return dm, an, layers


def relabel(g: Graph, perm: list[int]) -> Graph:
    return from_edge_list(g.order, [(perm[u], perm[v]) for u, v in g.edges()])


def test_w23_decomposition():
    g = build_w_graph(m=2, ell=3)
    dm, an, layers = decompose(g)
    assert (an.a, an.b, an.cut_distance) == (0, 5, 3)
    assert [len(c) for c in an.components] == [4, 12]
    assert len(an.good_vertices) == 6 and an.good_vertices == an.good_component | {0, 5}
    assert an.pure_split and len(an.bad_component) == 12
    assert layers.m == 2 and [len(x) for x in layers.B] == [2, 2]
    assert layers.t == 8 and layers.tilde_ab == 9
    assert [len(x) for x in layers.D] == [1, 2, 2, 1, 1, 2, 2, 1]
    assert layers.on_geodesics
    assert layers.b_layer(0) == {0} and layers.b_layer(3) == {5} and layers.b_layer(4) == set()
    assert layers.d_layer(0) == {0} and layers.d_layer(9) == {5} and layers.d_layer(-1) == set()


def test_w35_layer_pattern():
    _, an, layers = decompose(build_w_graph(m=3, ell=5))
    assert layers.m == 2 and [len(x) for x in layers.B] == [3, 3]
    assert layers.t == 16
    assert [len(x) for x in layers.D] == [1, 3, 3, 1] * 4


@pytest.mark.parametrize("m, ell", ODD_W)
def test_odd_w_checks(m, ell):
    g = build_w_graph(m=m, ell=ell)
    dm, an, layers = decompose(g)
    assert an.cut_distance == 3
    classes = classify_edges(g, an, layers)
    assert check_end_layer_distance(dm, layers, an)
    assert check_end_layers_complete(g, layers)
    assert check_edge_class_counts(g, dm, an, layers, classes)
    assert check_distance3_layers(g, an, layers)
    assert check_paths_through_cut(dm, an)
    assert check_bad_component_size(an, g.order)
    assert match_w_graph(g, an, layers, iso_cap=max(64, g.order)) == WGraphSpec(m, ell)


def test_edge_classes_w23():
    g = build_w_graph(m=2, ell=3)
    dm, an, layers = decompose(g)
    classes = classify_edges(g, an, layers)
    keep = an.bad_component | {an.a, an.b}
    tilde_edges = [e for e in g.edges() if e[0] in keep and e[1] in keep]
    assert len(classes) == len(tilde_edges) == 19
    assert classify_edges(g, an) == classes


@pytest.mark.parametrize("m, ell", ODD_W)
def test_edge_class_roles(m, ell):
    g = build_w_graph(m=m, ell=ell)
    _, an, layers = decompose(g)
    ta, tb = layers.tilde_from_a, layers.tilde_from_b
    for ec in classify_edges(g, an, layers):
        assert isinstance(ec, EdgeClass)
        if ec.kind == "vertical":
            x, y = ec.upper, ec.lower
            assert ta[x] + 1 == ta[y] and tb[x] == tb[y] + 1
            with pytest.raises(AttributeError):
                ec.left
        else:
            x, y = ec.left, ec.right
            assert ta[x] == ta[y] + 1 and tb[x] == tb[y] + 1
            with pytest.raises(AttributeError):
                ec.upper


def test_horizontal_edges_off_geodesics():
    # bipartite, not balanced; its bad component has vertices off every a-b geodesic of G~
    g = from_edge_list(9, [(0, 4), (0, 6), (1, 5), (1, 6), (1, 8), (2, 4), (2, 5), (2, 7),
                           (2, 8), (3, 4), (3, 5), (3, 7)])
    dm = all_pairs_distances(g)
    an = analyze_minimal_2cut(g, dm)
    assert an.pure_split
    layers = build_layers(g, an, dm)
    assert not layers.on_geodesics
    classes = classify_edges(g, an, layers)
    ta, tb = layers.tilde_from_a, layers.tilde_from_b
    horizontal = [ec for ec in classes if ec.kind == "horizontal"]
    assert horizontal
    for ec in horizontal:
        assert ta[ec.right] + 1 == ta[ec.left] and tb[ec.right] + 1 == tb[ec.left]


def test_good_vertices_on_c6():
    dm = all_pairs_distances(build_cycle(6))
    assert good_vertices(dm, 0, 3) == set(range(6))
    assert good_vertices(dm, 0, 2) == {0, 1, 2}


def test_c8_decomposition_is_consistent():
    g = build_cycle(8)
    dm = all_pairs_distances(g)
    an = analyze_minimal_2cut(g, dm)
    assert an.cut_distance == 2 and len(an.components) == 2
    for comp in an.components:
        inside = comp & an.good_vertices
        assert inside == comp or not inside


def test_analysis_errors():
    with pytest.raises(NotBipartite):
        g = build_cycle(5)
        analyze_minimal_2cut(g, all_pairs_distances(g))
    with pytest.raises(Is3Connected):
        g = build_complete_bipartite(3, 3)
        analyze_minimal_2cut(g, all_pairs_distances(g))
    with pytest.raises(NotConnected):
        g = from_edge_list(4, [(0, 1), (2, 3)])
        analyze_minimal_2cut(g, all_pairs_distances(g))


def test_non_balanced_input_is_descriptive():
    # W(2,4) is not balanced; the analysis still runs, and the counting check reports a failure
    g = build_w_graph(m=2, ell=4)
    dm = all_pairs_distances(g)
    an = analyze_minimal_2cut(g, dm)
    assert an.cut_distance == 3
    layers = build_layers(g, an, dm)
    verdict = check_edge_class_counts(g, dm, an, layers, classify_edges(g, an, layers))
    assert not verdict and verdict.witness["kind"] == "vertical"
    assert not check_distance3_layers(g, an, layers)
    assert match_w_graph(g, an, layers) is None or match_w_graph(g, an, layers).ell % 2 == 0


def test_three_components_have_no_layers():
    g = build_complete_bipartite(2, 3)
    dm = all_pairs_distances(g)
    an = analyze_minimal_2cut(g, dm)
    assert len(an.components) == 3 and not an.pure_split
    with pytest.raises(StructureViolation):
        build_layers(g, an, dm)
    with pytest.raises(StructureViolation):
        an.bad_component


def test_end_layer_distance_failure_witness():
    g = build_w_graph(m=2, ell=3)
    dm, an, layers = decompose(g)
    shifted = type(an)(an.a, an.b, an.cut_distance + 1, an.components, an.good_vertices,
                       an.bad_component_index, an.good_component_index)
    verdict = check_end_layer_distance(dm, layers, shifted)
    assert not verdict and verdict.witness["expected"] == 2


@pytest.mark.parametrize("m, ell", [(2, 3), (3, 3), (2, 5), (4, 5)])
def test_cross_cut_distances_and_half_rule(m, ell):
    g = build_w_graph(m=m, ell=ell)
    dm, an, _ = decompose(g)
    d = dm.dist.astype(np.int64)
    for x in an.components[0]:
        for y in an.components[1]:
            assert d[x, y] == min(d[x, an.a] + d[an.a, y], d[x, an.b] + d[an.b, y])
    assert 2 * len(an.bad_component) >= g.order


def test_isomorphism_under_relabelling():
    rng = random.Random(7)
    for spec in (WGraphSpec(2, 3), WGraphSpec(3, 5), WGraphSpec(2, 7)):
        g = build_w_graph(spec)
        perm = list(range(g.order))
        rng.shuffle(perm)
        assert are_isomorphic(g, relabel(g, perm))
    assert not are_isomorphic(build_w_graph(m=2, ell=3), build_w_graph(m=2, ell=4))
    assert not are_isomorphic(build_cycle(6), build_complete_bipartite(3, 3))
    assert not are_isomorphic(build_cycle(8), build_hypercube(3))
    # same degree sequence, different structure
    assert not are_isomorphic(build_hypercube(3), from_edge_list(8, [(i, (i + 1) % 8) for i in range(8)]
                                                              + [(i, i + 4) for i in range(4)]))
    with pytest.raises(OrderTooLarge):
        are_isomorphic(build_w_graph(m=4, ell=7), build_w_graph(m=4, ell=7))
    big = build_w_graph(m=4, ell=7)
    assert are_isomorphic(big, relabel(big, perm=list(reversed(range(big.order)))), cap=70)
