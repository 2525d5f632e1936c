"""
Sequential absolute center and minimum diameter spanning tree.

For an edge e = (u, v) every vertex z contributes a tent
min(alpha + d(u, z), w - alpha + d(v, z)); the separation of the point at
alpha is the upper boundary of all tents. Dominated tents never reach the
boundary, so only an antichain sorted by descending d(u, z) is scanned.
"""
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple, Union

from core.config import TOLERANCE
from core.logging import get_logger
from graph.model import (
    DistanceTable, Edge, EdgePoint, GeneralNode, SpanningTree, Vertex, WeightedGraph, canonical,
)
from graph.paths import all_pairs_distances, diameter_radius, shortest_path_tree, tree_diameter

logger = get_logger("center")


@dataclass(frozen=True)
class CandidatePair:
    a: float
    b: float
    z: int


@dataclass(frozen=True)
class BoundaryList:
    pairs: Tuple[Tuple[float, float], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


@dataclass(frozen=True)
class CenterResult:
    location: GeneralNode
    separation: float
    edges_skipped: int = field(default=0, compare=False)


PairLike = Union[CandidatePair, Tuple[float, float]]


def _as_tuple(pair: PairLike) -> Tuple[float, float]:
    if isinstance(pair, CandidatePair):
        return pair.a, pair.b
    return float(pair[0]), float(pair[1])


def candidate_pairs(g: WeightedGraph, dt: DistanceTable, e: Edge) -> List[CandidatePair]:
    u, v = e
    return [CandidatePair(dt.d[u][z], dt.d[v][z], z) for z in g.vertices()]


def prune_and_sort(pairs: Iterable[PairLike]) -> BoundaryList:
    """Drop dominated and duplicate pairs; result descends in a and ascends in b"""
    ordered = sorted((_as_tuple(p) for p in pairs), key=lambda ab: (-ab[0], -ab[1]))
    kept: List[Tuple[float, float]] = []
    best_b = -math.inf
    for a, b in ordered:
        if b > best_b:
            kept.append((a, b))
            best_b = b
    return BoundaryList(tuple(kept))


def boundary_eval(pairs: Iterable[PairLike], omega: float, alpha: float) -> float:
    """Upper boundary B_e(alpha), the separation of the point at alpha"""
    return max(min(alpha + a, omega - alpha + b) for a, b in map(_as_tuple, pairs))


def upper_boundary_breakpoints(boundary: BoundaryList, omega: float) -> List[Tuple[float, float]]:
    """Endpoints and tent crossings of the upper boundary, in increasing alpha"""
    pairs = boundary.pairs
    points = [(0.0, boundary_eval(pairs, omega, 0.0))]
    for (_, b_i), (a_next, _) in zip(pairs, pairs[1:]):
        # descending side of tent i meets ascending side of tent i+1
        x = min(max(0.5 * (omega + b_i - a_next), 0.0), omega)
        y = 0.5 * (omega + b_i + a_next)
        actual = boundary_eval(pairs, omega, x)
        if abs(actual - y) > TOLERANCE:
            logger.debug(f"crossing at {x} predicted {y}, boundary is {actual}")
            y = actual
        points.append((x, y))
    points.append((omega, boundary_eval(pairs, omega, omega)))
    return points


def gamma_star(boundary: BoundaryList, omega: float) -> Tuple[float, float]:
    """Global minimum (alpha, localmin) of the upper boundary over [0, omega]"""
    candidates = upper_boundary_breakpoints(boundary, omega)
    best_alpha, best = candidates[0]
    for x, y in candidates[1:]:
        if y < best - TOLERANCE:
            best_alpha, best = x, y
    return best_alpha, best


def pairs_lower_bound(pairs: Iterable[PairLike]) -> float:
    """max_z min(a_z, b_z): no point of the edge has a smaller separation"""
    return max((min(_as_tuple(p)) for p in pairs), default=0.0)


def skip_lower_bound(dt: DistanceTable, e: Edge) -> float:
    u, v = e
    return pairs_lower_bound(zip(dt.d[u], dt.d[v]))


def edge_skip_bound(dt: DistanceTable, e: Edge, best_so_far: float) -> bool:
    return skip_lower_bound(dt, e) >= best_so_far


def edge_center(g: WeightedGraph, dt: DistanceTable, e: Edge) -> CenterResult:
    omega = g.weight(*e)
    alpha, localmin = gamma_star(prune_and_sort(candidate_pairs(g, dt, e)), omega)
    return CenterResult(canonical(g, EdgePoint(e[0], e[1], alpha)), localmin)


def absolute_center(g: WeightedGraph, dt: Optional[DistanceTable] = None,
                    use_skip_bound: bool = False) -> CenterResult:
    """Point of minimum separation; ties go to the earlier edge, then the smaller alpha

    With `use_skip_bound`, an edge is skipped when its lower bound already
    reaches the running best, and the scan stops once the best separation is
    D/2, below which no point of the graph can go.
    """
    if dt is None:
        dt = all_pairs_distances(g)
    if g.m == 0:
        return CenterResult(Vertex(0), 0.0)
    floor = diameter_radius(g, dt)[0] / 2
    best: Optional[CenterResult] = None
    skipped = 0
    edges = g.edges()
    for index, e in enumerate(edges):
        if use_skip_bound and best is not None and best.separation <= floor + TOLERANCE:
            skipped += len(edges) - index
            break
        if use_skip_bound and best is not None and edge_skip_bound(dt, e, best.separation):
            skipped += 1
            continue
        result = edge_center(g, dt, e)
        if best is None or result.separation < best.separation - TOLERANCE:
            best = result
    logger.debug(f"absolute center {best.location} sep {best.separation} ({skipped} edges skipped)")
    return CenterResult(best.location, best.separation, skipped)


def mdst(g: WeightedGraph, use_skip_bound: bool = True) -> Tuple[SpanningTree, float]:
    """Shortest-path tree rooted at the absolute center, with its diameter"""
    dt = all_pairs_distances(g)
    center = absolute_center(g, dt, use_skip_bound=use_skip_bound)
    tree = shortest_path_tree(g, dt, center.location)
    return tree, tree_diameter(g, tree)

