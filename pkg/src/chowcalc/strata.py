"""Boundary-strata calculus: graphs plus the catalog-backed class operations.

Pure graph combinatorics lives in `chowcalc.graphs`; the operations that
need presentations (psi classes, excess pullbacks, gluing pushforwards,
forgetful pullbacks) are implemented against the catalog in
`chowcalc.catalog.taut`.  This module is the single import surface for both
halves.
"""

from .graphs import (
    GraphAutomorphisms,
    StableGraph,
    automorphism_group,
    enumerate_stable_graphs,
    forgetful_preimages,
    generic_intersection_graphs,
    graph_literal,
    intersect_strata,
    parse_graph,
)
from .catalog.taut import (
    class_in_module,
    class_in_ring,
    divisor_class_ring,
    divisor_pullback_table,
    forgetful_pullback_module,
    forgetful_pullback_ring,
    gluing_pushforward,
    product_in_ring,
    psi_ring,
    pullback_ring_class,
    push_factor_class_to_module,
)

# spec-facing operation names
psi_class = psi_ring
forgetful_pullback = forgetful_pullback_module


def excess_pullback(n: int, S, class_poly):
    """Pullback of a ring class along the inclusion of the divisor whose
    genus-one side carries S (excess terms included automatically)."""
    return pullback_ring_class(n, frozenset(S), class_poly)

__all__ = [
    "GraphAutomorphisms",
    "StableGraph",
    "automorphism_group",
    "enumerate_stable_graphs",
    "forgetful_preimages",
    "generic_intersection_graphs",
    "graph_literal",
    "intersect_strata",
    "parse_graph",
    "class_in_module",
    "class_in_ring",
    "divisor_class_ring",
    "divisor_pullback_table",
    "forgetful_pullback_module",
    "forgetful_pullback_ring",
    "gluing_pushforward",
    "product_in_ring",
    "psi_ring",
    "pullback_ring_class",
    "push_factor_class_to_module",
    "psi_class",
    "forgetful_pullback",
    "excess_pullback",
]
