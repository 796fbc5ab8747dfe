"""Edge-disjoint spanning-tree realizations of tree degree matrices."""

from .construct import (
    Realization,
    Reduction,
    apply_reduction,
    base_case_lookup,
    build_paths,
    extend_realization,
    find_rainbow_matching_k4,
    find_reduction,
    greedy_rainbow_matching,
    order_by_internal_nodes,
    realize,
    realize_never_leaves,
    realize_quartet,
    realize_quintet,
    tree_max_matching,
)
from .degseq import (
    DegreeMatrix,
    count_never_leaves,
    eg_tail_bound_holds,
    erdos_gallai_graphical,
    find_common_leaves,
    is_path_degree_sequence,
    is_tree_degree_sequence,
    parse_degree_matrix,
    sum_sequence,
)
from .egraph import (
    ColoredGraph,
    RainbowMatching,
    VerifyReport,
    color_subgraph,
    is_spanning_tree,
    parse_adjacency_color_matrix,
    parse_edge_list,
    verify_realization,
)
from .enumeration import canonical_form, count_tuples, enumerate_tuples
from .oracle import exhaustive_realize, oracle_sweep

__version__ = "0.1.0"

__all__ = [
    "ColoredGraph",
    "DegreeMatrix",
    "RainbowMatching",
    "Realization",
    "Reduction",
    "VerifyReport",
    "apply_reduction",
    "base_case_lookup",
    "build_paths",
    "canonical_form",
    "color_subgraph",
    "count_never_leaves",
    "count_tuples",
    "eg_tail_bound_holds",
    "enumerate_tuples",
    "erdos_gallai_graphical",
    "exhaustive_realize",
    "extend_realization",
    "find_common_leaves",
    "find_rainbow_matching_k4",
    "find_reduction",
    "greedy_rainbow_matching",
    "is_path_degree_sequence",
    "is_spanning_tree",
    "is_tree_degree_sequence",
    "oracle_sweep",
    "order_by_internal_nodes",
    "parse_adjacency_color_matrix",
    "parse_degree_matrix",
    "parse_edge_list",
    "realize",
    "realize_never_leaves",
    "realize_quartet",
    "realize_quintet",
    "sum_sequence",
    "tree_max_matching",
    "verify_realization",
]
