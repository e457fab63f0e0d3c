"""Distance-balanced bipartite graphs: predicates, minimal 2-cut decomposition,
the W(m, l) family, and a graph6 stream scanner."""

__version__ = "0.1.0"

from .constructions import (
    WGraphSpec,
    build_complete_bipartite,
    build_cycle,
    build_hypercube,
    build_path,
    build_w_graph,
)
from .decomposition import (
    EdgeClass,
    LayerStructure,
    TwoCutAnalysis,
    analyze_minimal_2cut,
    build_layers,
    check_end_layer_distance,
    check_edge_class_counts,
    classify_edges,
    good_vertices,
)
from .errors import *  # noqa: F401,F403
from .graph_core import (
    Graph,
    bipartition,
    decode_graph6,
    encode_graph6,
    from_edge_list,
    is_connected,
    is_cycle,
)
from .isomorphism import are_isomorphic
from .metric import (
    UNREACHABLE,
    DistanceMatrix,
    all_pairs_distances,
    half_set,
    lies_on_shortest_path,
    sphere,
)
from .properties import (
    PredicateVerdict,
    TwoCut,
    enumerate_2cuts,
    is_distance_balanced,
    is_partial_cube,
    is_strongly_distance_balanced,
    vertex_connectivity,
)
from .scanner import ScanReport, parse_filter, scan_stream
