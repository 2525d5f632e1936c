"""
Brute-force oracles used to judge the solver
"""
import math

from networkx.algorithms.tree.mst import SpanningTreeIterator

from core.config import TOLERANCE
from core.errors import EnumerationLimitError
from graph.model import DistanceTable, EdgePoint, Vertex, WeightedGraph, SpanningTree, canonical, edge_key
from graph.paths import separation, tree_diameter
from .solver import CenterResult

MAX_VERTICES = 9
MAX_EDGES = 12


def brute_force_center(g: WeightedGraph, dt: DistanceTable, grid_step: float) -> CenterResult:
    """Minimum separation over all vertices and a uniform alpha grid on every edge"""
    if not grid_step > 0:
        raise ValueError(f"grid_step must be positive, got {grid_step}")
    best = CenterResult(Vertex(0), separation(g, dt, Vertex(0)))
    for v in g.vertices():
        s = separation(g, dt, Vertex(v))
        if s < best.separation - TOLERANCE:
            best = CenterResult(Vertex(v), s)
    for u, v in g.edges():
        omega = g.weight(u, v)
        steps = int(math.floor(omega / grid_step))
        alphas = [k * grid_step for k in range(steps + 1)] + [omega]
        for alpha in alphas:
            point = canonical(g, EdgePoint(u, v, min(alpha, omega)))
            s = separation(g, dt, point)
            if s < best.separation - TOLERANCE:
                best = CenterResult(point, s)
    return best


def brute_force_mdst(g: WeightedGraph) -> float:
    """Exact minimum tree diameter over every spanning tree (small instances only)"""
    if g.n > MAX_VERTICES or g.m > MAX_EDGES:
        raise EnumerationLimitError(
            f"enumeration guard is n <= {MAX_VERTICES} and m <= {MAX_EDGES}, got n={g.n} m={g.m}"
        )
    if g.n == 1:
        return 0.0
    best = math.inf
    for tree in SpanningTreeIterator(g.to_networkx()):
        edges = frozenset(edge_key(u, v) for u, v in tree.edges())
        best = min(best, tree_diameter(g, SpanningTree(edges=edges, root=Vertex(0))))
    return best
