"""
Graph core: weighted graphs, exact distances and shortest-path trees
"""

from .model import (
    WeightedGraph, Vertex, EdgePoint, GeneralNode, DistanceTable, SpanningTree,
    edge_key, edge_point, canonical,
)
from .paths import (
    all_pairs_distances, general_distance, separation, diameter_radius, hop_diameter,
    shortest_path_tree, tree_diameter, tree_diameter_pair,
)
from .io import read_graph, write_graph, parse_graph, format_graph

__all__ = [
    "WeightedGraph", "Vertex", "EdgePoint", "GeneralNode", "DistanceTable", "SpanningTree",
    "edge_key", "edge_point", "canonical",
    "all_pairs_distances", "general_distance", "separation", "diameter_radius", "hop_diameter",
    "shortest_path_tree", "tree_diameter", "tree_diameter_pair",
    "read_graph", "write_graph", "parse_graph", "format_graph",
]
