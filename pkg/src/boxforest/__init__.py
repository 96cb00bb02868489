"""Constructive coloring machinery for axis-aligned box intersection graphs.

The package decomposes a box family's intersections into directional
patterns, gradings and tree embeddings, and either properly colors the
intersection graph within an explicit bound or returns an induced copy of
a complete rooted tree. Exact brute-force oracles back every step at
small scale, and the ``boxforest`` command exposes the whole pipeline.
"""

from .embedding import (
    CalmEmbedding,
    CalmSearchError,
    Grading,
    HostGraphError,
    InternalInvariantError,
    LayeredColoring,
    TournamentOracle,
    calm_precondition_error,
    embed_calm_tree,
    find_path_induced_tree,
    grading_error,
    peel_grading,
    tournament_size,
    verify_calm,
)
from .generators import (
    burling_like,
    burling_size,
    grid_disjoint_boxes,
    nested_chain_boxes,
    random_boxes,
)
from .geometry import (
    Box,
    Interval,
    OverlapType,
    Pattern,
    all_patterns,
    box,
    boxes_from_rows,
    boxes_to_text,
    classify_overlap,
    intersection_pattern,
    intersects,
    load_boxes,
    mirror,
    normalize,
    save_boxes,
)
from .graphs import (
    Coloring,
    Digraph,
    Graph,
    RootedTree,
    complete_kary_tree,
    degeneracy_coloring,
    find_induced_copy,
    intersection_graph,
    is_path_induced,
)
from .oracles import (
    DEFAULT_LIMITS,
    OracleLimitError,
    OracleLimits,
    alpha,
    chi,
    maximum_clique,
    maximum_independent_set,
    omega,
)
from .patterns import BasicReport, PatternDigraph, decompose, product_coloring, verify_basic
from .pipeline import (
    BoundReport,
    Extraction,
    InducedTree,
    ProperColoring,
    certificate_to_json,
    chi_bound,
    color_or_find_forest,
    extract_independent,
    parse_certificate,
    prune_children,
    tree_vertex_count,
    verify_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "BasicReport",
    "BoundReport",
    "Box",
    "CalmEmbedding",
    "CalmSearchError",
    "Coloring",
    "DEFAULT_LIMITS",
    "Digraph",
    "Extraction",
    "Grading",
    "Graph",
    "HostGraphError",
    "InducedTree",
    "InternalInvariantError",
    "Interval",
    "LayeredColoring",
    "OracleLimitError",
    "OracleLimits",
    "OverlapType",
    "Pattern",
    "PatternDigraph",
    "ProperColoring",
    "RootedTree",
    "TournamentOracle",
    "all_patterns",
    "alpha",
    "box",
    "boxes_from_rows",
    "boxes_to_text",
    "burling_like",
    "burling_size",
    "calm_precondition_error",
    "certificate_to_json",
    "chi",
    "chi_bound",
    "classify_overlap",
    "color_or_find_forest",
    "complete_kary_tree",
    "decompose",
    "degeneracy_coloring",
    "embed_calm_tree",
    "extract_independent",
    "find_induced_copy",
    "find_path_induced_tree",
    "grading_error",
    "grid_disjoint_boxes",
    "intersection_graph",
    "intersection_pattern",
    "intersects",
    "is_path_induced",
    "load_boxes",
    "maximum_clique",
    "maximum_independent_set",
    "mirror",
    "nested_chain_boxes",
    "normalize",
    "omega",
    "parse_certificate",
    "peel_grading",
    "product_coloring",
    "prune_children",
    "random_boxes",
    "save_boxes",
    "tournament_size",
    "tree_vertex_count",
    "verify_basic",
    "verify_calm",
    "verify_certificate",
]
