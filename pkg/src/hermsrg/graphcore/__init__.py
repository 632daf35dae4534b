"""Graphs as bitset rows and the checks run on them."""
from .census import (ALL, AllAdjacentTriples, BudgetExceeded, ExplicitTriples, SampledTriples,
                     TripleCensus, common_neighbor_set, common_neighbors, find_triangle_with_value,
                     joint_triangle_profiles, triple_census,
                     vertex_triangle_profile)
from .cliques import CliqueCensus, is_maximal_clique, maximal_cliques
from .graph import Graph, GraphError, build_graph, complete_graph, cycle_graph, from_edges
from .graph6 import Graph6Error, export_graph6, import_graph6
from .iso import IsoResult, IsoTimeout, is_isomorphic, verify_bijection
from .srg import (DisconnectedGraph, NotStronglyRegular, SpectrumReport, SRGParams, check_srg,
                  gamma_u_params, nu_params, srg_spectrum)

__all__ = [
    "ALL", "AllAdjacentTriples", "BudgetExceeded", "CliqueCensus", "DisconnectedGraph",
    "ExplicitTriples", "Graph", "Graph6Error", "GraphError", "IsoResult", "IsoTimeout",
    "NotStronglyRegular", "SRGParams", "SampledTriples", "SpectrumReport", "TripleCensus",
    "build_graph", "check_srg", "common_neighbor_set", "common_neighbors", "complete_graph",
    "cycle_graph", "export_graph6", "find_triangle_with_value", "from_edges", "gamma_u_params", "import_graph6",
    "is_isomorphic", "is_maximal_clique", "joint_triangle_profiles", "maximal_cliques", "nu_params", "srg_spectrum",
    "triple_census", "verify_bijection", "vertex_triangle_profile",
]
