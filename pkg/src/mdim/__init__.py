"""Exact metric dimension for connected graphs.

The solver splits a graph at its cut vertices into extended biconnected
components, bridges and dangling paths, then combines per-component landmark
counts bottom-up over the resulting component tree.  A brute-force oracle, a
per-component landmark cap, and a 3-SAT hardness-instance generator round out
the toolbox.
"""

from .decompose import (
    Component,
    DebcTree,
    Decomposition,
    EbcTree,
    Leg,
    biconnected_components,
    build_ebc_tree,
    classify_legs,
    decompose,
    root_tree,
    subtree_graph,
)
from .gadgets import Formula, GadgetGraph, parse_dimacs_cnf, reduce_to_graph
from .graph import (
    DistanceMatrix,
    Graph,
    GraphError,
    all_pairs_distances,
    bfs_distances,
    build_graph,
    is_connected,
)
from .resolving import (
    GateWitness,
    OracleSizeError,
    ResolveConstraints,
    brute_force_min_resolving,
    is_gate,
    is_resolving_set,
)
from .solver import (
    HPair,
    InfeasibleBoundError,
    Solution,
    brute_force_min_bounded,
    compute_a_node,
    compute_c_node,
    smallest_bound,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "Component",
    "DebcTree",
    "Decomposition",
    "DistanceMatrix",
    "EbcTree",
    "Formula",
    "GadgetGraph",
    "GateWitness",
    "Graph",
    "GraphError",
    "HPair",
    "InfeasibleBoundError",
    "Leg",
    "OracleSizeError",
    "ResolveConstraints",
    "Solution",
    "all_pairs_distances",
    "bfs_distances",
    "biconnected_components",
    "brute_force_min_bounded",
    "brute_force_min_resolving",
    "build_ebc_tree",
    "build_graph",
    "classify_legs",
    "compute_a_node",
    "compute_c_node",
    "decompose",
    "is_connected",
    "is_gate",
    "is_resolving_set",
    "parse_dimacs_cnf",
    "reduce_to_graph",
    "root_tree",
    "smallest_bound",
    "solve",
    "subtree_graph",
]
