"""
Exact shortest paths, separations and shortest-path trees.

These are the ground truth for the protocols and the oracle for the checker.
"""
import heapq
import math
from typing import List, Optional, Tuple

from core.config import TOLERANCE
from .model import (
    DistanceTable, EdgePoint, GeneralNode, SpanningTree, Vertex, WeightedGraph, canonical, edge_key,
)


def _dijkstra(g: WeightedGraph, source: int) -> Tuple[List[float], List[int]]:
    """Distances from source, keeping the fewest hops among weight-shortest paths"""
    dist = [math.inf] * g.n
    hops = [g.n] * g.n
    dist[source], hops[source] = 0.0, 0
    heap = [(0.0, 0, source)]
    while heap:
        d, h, u = heapq.heappop(heap)
        if d > dist[u] + TOLERANCE or h > hops[u]:
            continue
        for v, w in g.neighbors(u):
            nd, nh = d + w, h + 1
            if nd < dist[v] - TOLERANCE:
                dist[v], hops[v] = nd, nh
                heapq.heappush(heap, (nd, nh, v))
            elif abs(nd - dist[v]) <= TOLERANCE and nh < hops[v]:
                hops[v] = nh
                heapq.heappush(heap, (dist[v], nh, v))
    return dist, hops


def all_pairs_distances(g: WeightedGraph) -> DistanceTable:
    rows = [_dijkstra(g, s) for s in g.vertices()]
    return DistanceTable(d=[r[0] for r in rows], hops=[r[1] for r in rows])


def general_distance(g: WeightedGraph, dt: DistanceTable, node: GeneralNode, z: int) -> float:
    """d(node, z); for an edge point min(alpha + d(u,z), w - alpha + d(v,z))"""
    if isinstance(node, Vertex):
        return dt.d[node.v][z]
    w = g.weight(node.u, node.v)
    return min(node.alpha + dt.d[node.u][z], w - node.alpha + dt.d[node.v][z])


def separation(g: WeightedGraph, dt: DistanceTable, node: GeneralNode) -> float:
    return max(general_distance(g, dt, node, z) for z in g.vertices())


def diameter_radius(g: WeightedGraph, dt: DistanceTable) -> Tuple[float, float, int]:
    """(D, R, hop diameter) over vertex separations"""
    seps = [max(row) for row in dt.d]
    return max(seps), min(seps), hop_diameter(dt)


def hop_diameter(dt: DistanceTable) -> int:
    return max(max(row) for row in dt.hops)


def _next_hop(g: WeightedGraph, dt: DistanceTable, w: int, target: int) -> int:
    """Smallest-index neighbor lying on a weight-shortest path from w to target"""
    for p, weight in g.neighbors(w):
        if abs(dt.d[w][target] - (weight + dt.d[p][target])) <= TOLERANCE:
            return p
    raise AssertionError(f"no shortest-path neighbor from {w} toward {target}")


def _own_side(dt: DistanceTable, point: EdgePoint, weight: float, endpoint: int) -> bool:
    """Whether an endpoint of the center edge reaches the point directly along the edge"""
    u, v, alpha = point.u, point.v, point.alpha
    via_u = dt.d[endpoint][u] + alpha
    via_v = dt.d[endpoint][v] + weight - alpha
    prefers_u = via_u <= via_v + TOLERANCE
    return prefers_u if endpoint == u else not prefers_u


def shortest_path_tree(g: WeightedGraph, dt: DistanceTable, root: GeneralNode) -> SpanningTree:
    """SPT rooted at a general node; equal-weight parents resolve to the smaller index"""
    root = canonical(g, root)
    parents: List[Optional[int]] = [None] * g.n
    if isinstance(root, Vertex):
        for w in g.vertices():
            if w != root.v:
                parents[w] = _next_hop(g, dt, w, root.v)
    else:
        weight = g.weight(root.u, root.v)
        for w in g.vertices():
            via_u = dt.d[w][root.u] + root.alpha
            via_v = dt.d[w][root.v] + weight - root.alpha
            target = root.u if via_u <= via_v + TOLERANCE else root.v
            if w == target:
                other = root.v if w == root.u else root.u
                if _own_side(dt, root, weight, other):
                    parents[w] = other
            else:
                parents[w] = _next_hop(g, dt, w, target)
    edges = frozenset(edge_key(w, p) for w, p in enumerate(parents) if p is not None)
    if len(edges) != g.n - 1:
        raise AssertionError(f"shortest-path tree has {len(edges)} edges for n={g.n}")
    return SpanningTree(edges=edges, root=root)


def _farthest(adjacency, weights, start: int) -> Tuple[int, float]:
    best, best_dist = start, 0.0
    stack = [(start, -1, 0.0)]
    while stack:
        node, parent, dist = stack.pop()
        if dist > best_dist + TOLERANCE or (abs(dist - best_dist) <= TOLERANCE and node < best):
            best, best_dist = node, dist
        for nxt in adjacency[node]:
            if nxt != parent:
                stack.append((nxt, node, dist + weights[edge_key(node, nxt)]))
    return best, best_dist


def tree_diameter_pair(g: WeightedGraph, t: SpanningTree) -> Tuple[float, Tuple[int, int]]:
    """Weighted diameter of a spanning tree and one diametral vertex pair"""
    adjacency = {v: [] for v in g.vertices()}
    weights = {}
    for u, v in t.edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
        weights[(u, v)] = g.weight(u, v)
    a, _ = _farthest(adjacency, weights, 0)
    b, dist = _farthest(adjacency, weights, a)
    return dist, (min(a, b), max(a, b))


def tree_diameter(g: WeightedGraph, t: SpanningTree) -> float:
    return tree_diameter_pair(g, t)[0]
