"""
Graph model: weighted graphs, general nodes, distance tables and spanning trees
"""
import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Tuple, Union

import networkx as nx

from core.errors import GraphError

Edge = Tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    """Unordered edge as (lower index, higher index)"""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class WeightedGraph:
    """Connected undirected graph with positive real weights on vertices 0..n-1"""
    n: int
    weights: Dict[Edge, float] = field(default_factory=dict)

    def __post_init__(self):
        adjacency: Dict[int, List[Tuple[int, float]]] = {v: [] for v in range(self.n)}
        for (u, v), w in self.weights.items():
            adjacency[u].append((v, w))
            adjacency[v].append((u, w))
        for v in adjacency:
            adjacency[v].sort()
        object.__setattr__(self, "_adjacency", adjacency)

    @classmethod
    def build(cls, n: int, edges: Iterable[Tuple[int, int, float]]) -> "WeightedGraph":
        """Validate and build; raises GraphError on any invariant violation"""
        if n < 1:
            raise GraphError(f"graph needs at least one vertex, got n={n}")
        weights: Dict[Edge, float] = {}
        for u, v, w in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) references a vertex outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop on vertex {u}")
            key = edge_key(u, v)
            if key in weights:
                raise GraphError(f"parallel edge {key}")
            w = float(w)
            if not (math.isfinite(w) and w > 0):
                raise GraphError(f"edge {key} needs a finite positive weight, got {w}")
            weights[key] = w
        graph = cls(n, weights)
        if not graph.is_connected():
            raise GraphError("graph is not connected")
        return graph

    @property
    def m(self) -> int:
        return len(self.weights)

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> List[Edge]:
        return sorted(self.weights)

    def neighbors(self, u: int) -> List[Tuple[int, float]]:
        return self._adjacency[u]

    def neighbors_map(self, u: int) -> Dict[int, float]:
        """Port table of u: neighbor -> weight"""
        return dict(self._adjacency[u])

    def degree(self, u: int) -> int:
        return len(self._adjacency[u])

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.weights

    def weight(self, u: int, v: int) -> float:
        try:
            return self.weights[edge_key(u, v)]
        except KeyError:
            raise GraphError(f"({u},{v}) is not an edge")

    def max_weight(self) -> float:
        return max(self.weights.values(), default=0.0)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        for (u, v), w in self.weights.items():
            graph.add_edge(u, v, weight=w)
        return graph

    def is_connected(self) -> bool:
        return self.n == 1 or nx.is_connected(self.to_networkx())

    # Topology updates return new graphs; the simulator swaps them in.
    def with_weight(self, u: int, v: int, w: float) -> "WeightedGraph":
        self.weight(u, v)
        weights = dict(self.weights)
        weights[edge_key(u, v)] = float(w)
        return WeightedGraph.build(self.n, [(a, b, x) for (a, b), x in weights.items()])

    def without_edge(self, u: int, v: int) -> "WeightedGraph":
        self.weight(u, v)
        weights = dict(self.weights)
        del weights[edge_key(u, v)]
        return WeightedGraph.build(self.n, [(a, b, x) for (a, b), x in weights.items()])

    def with_edge(self, u: int, v: int, w: float) -> "WeightedGraph":
        edges = [(a, b, x) for (a, b), x in self.weights.items()]
        edges.append((u, v, w))
        return WeightedGraph.build(self.n, edges)


@dataclass(frozen=True, order=True)
class Vertex:
    v: int

    def label(self) -> str:
        return f"v{self.v}"


@dataclass(frozen=True, order=True)
class EdgePoint:
    """Point on edge (u, v), u < v, at distance alpha from u"""
    u: int
    v: int
    alpha: float

    def __post_init__(self):
        if self.u > self.v:
            raise GraphError(f"EdgePoint endpoints must be ordered, got ({self.u},{self.v})")

    def label(self) -> str:
        return f"{self.u}-{self.v}@{self.alpha:g}"


GeneralNode = Union[Vertex, EdgePoint]


def edge_point(g: WeightedGraph, u: int, v: int, alpha: float) -> EdgePoint:
    """EdgePoint on (u, v) with alpha measured from u, reoriented to the lower endpoint"""
    w = g.weight(u, v)
    if not (0.0 <= alpha <= w):
        raise GraphError(f"alpha {alpha} outside [0, {w}] on edge ({u},{v})")
    if u < v:
        return EdgePoint(u, v, alpha)
    return EdgePoint(v, u, w - alpha)


def canonical(g: WeightedGraph, node: GeneralNode) -> GeneralNode:
    """Collapse edge endpoints to the vertex they coincide with"""
    if isinstance(node, Vertex):
        return node
    w = g.weight(node.u, node.v)
    if node.alpha <= 0.0:
        return Vertex(node.u)
    if node.alpha >= w:
        return Vertex(node.v)
    return node


@dataclass(frozen=True)
class DistanceTable:
    d: List[List[float]]
    hops: List[List[int]]

    @property
    def n(self) -> int:
        return len(self.d)


@dataclass(frozen=True)
class SpanningTree:
    edges: FrozenSet[Edge]
    root: GeneralNode

    def edge_list(self) -> List[Edge]:
        return sorted(self.edges)
