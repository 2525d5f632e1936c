"""
Graph families for tests, campaigns and the `gen` command
"""
import itertools
import random
from typing import Iterator, Optional, Sequence

import networkx as nx

from core.errors import GraphError
from .model import WeightedGraph


def path_graph(n: int, weights: Optional[Sequence[float]] = None) -> WeightedGraph:
    weights = list(weights) if weights is not None else [1.0] * (n - 1)
    if len(weights) != n - 1:
        raise GraphError(f"path on {n} vertices needs {n - 1} weights, got {len(weights)}")
    return WeightedGraph.build(n, [(i, i + 1, w) for i, w in enumerate(weights)])


def cycle_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    if n < 3:
        raise GraphError(f"cycle needs at least 3 vertices, got {n}")
    return WeightedGraph.build(n, [(i, (i + 1) % n, weight) for i in range(n)])


def star_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    return WeightedGraph.build(n, [(0, i, weight) for i in range(1, n)])


def complete_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    return WeightedGraph.build(n, [(u, v, weight) for u, v in itertools.combinations(range(n), 2)])


def random_connected(n: int, m: int, wmax: int, seed: int) -> WeightedGraph:
    """Random spanning tree first, then distinct extra edges; integer weights in [1, wmax]"""
    if n < 1 or not (n - 1 <= m <= n * (n - 1) // 2) or wmax < 1:
        raise GraphError(f"infeasible random graph parameters n={n} m={m} wmax={wmax}")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    chosen = set()
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        chosen.add((min(u, v), max(u, v)))
    remaining = [e for e in itertools.combinations(range(n), 2) if e not in chosen]
    rng.shuffle(remaining)
    chosen.update(remaining[:m - len(chosen)])
    return WeightedGraph.build(n, [(u, v, rng.randint(1, wmax)) for u, v in sorted(chosen)])


def all_connected_graphs(n: int, weight_set: Sequence[float] = (1.0,)) -> Iterator[WeightedGraph]:
    """Every connected labelled graph on n vertices with weights drawn from weight_set"""
    pairs = list(itertools.combinations(range(n), 2))
    if n == 1:
        yield WeightedGraph.build(1, [])
        return
    for size in range(n - 1, len(pairs) + 1):
        for subset in itertools.combinations(pairs, size):
            shape = nx.Graph(subset)
            if shape.number_of_nodes() != n or not nx.is_connected(shape):
                continue
            for weights in itertools.product(weight_set, repeat=size):
                yield WeightedGraph.build(n, [(u, v, w) for (u, v), w in zip(subset, weights)])


FAMILIES = ("path", "cycle", "star", "complete", "random-connected")


def generate(family: str, n: int, m: Optional[int] = None, wmax: int = 1,
             weights: Optional[Sequence[float]] = None, seed: int = 0) -> WeightedGraph:
    if family == "path":
        return path_graph(n, weights)
    if family == "cycle":
        return cycle_graph(n, float(wmax))
    if family == "star":
        return star_graph(n, float(wmax))
    if family == "complete":
        return complete_graph(n, float(wmax))
    if family == "random-connected":
        if m is None:
            raise GraphError("random-connected needs m")
        return random_connected(n, m, wmax, seed)
    raise GraphError(f"unknown graph family '{family}'. Available: {', '.join(FAMILIES)}")
