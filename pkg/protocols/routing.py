"""
Self-stabilizing all-pairs shortest paths.

Each node keeps the last distance vector heard on every port and, once per
tick, recomputes its own vector from scratch (synchronous Bellman-Ford). Ties
between equally short routes go to the neighbor with the smallest identifier.
A distance that is absent from a vector counts as INF.
"""
import random
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Optional, Tuple

from core.config import TOLERANCE
from core.logging import get_logger
from .base import INF, NodeContext, ProtocolLayer

logger = get_logger("routing")

ROOT = -1


@dataclass(frozen=True)
class VectorMessage:
    sender: int
    entries: Tuple[Tuple[int, float, int], ...]
    sep: float

    def distances(self) -> Dict[int, float]:
        return {dest: dist for dest, dist, _ in self.entries}


@dataclass
class RouteState:
    active: bool = False
    dist: Dict[int, float] = field(default_factory=dict)
    hops: Dict[int, int] = field(default_factory=dict)
    next_hop: Dict[int, int] = field(default_factory=dict)
    nbr_vectors: Dict[int, VectorMessage] = field(default_factory=dict)
    sep: float = INF
    d_est: float = INF
    r_est: float = INF

    def lookup(self, dest: int) -> float:
        return self.dist.get(dest, INF)

    def neighbor_id(self, port: int) -> Optional[int]:
        vector = self.nbr_vectors.get(port)
        return vector.sender if vector else None

    def port_of(self, ident: int) -> Optional[int]:
        for port in sorted(self.nbr_vectors):
            if self.nbr_vectors[port].sender == ident:
                return port
        return None


def clean_state() -> RouteState:
    return RouteState()


def arbitrary_state(rng: random.Random, ports: Dict[int, float]) -> RouteState:
    """Random vectors, stale neighbor caches and bogus estimates"""
    ids = list(range(1, 17))

    def vector() -> Dict[int, float]:
        return {i: float(rng.randint(0, 40)) for i in rng.sample(ids, rng.randint(0, 6))}

    port_list = sorted(ports)
    dist = vector()
    state = RouteState(
        active=rng.random() < 0.7,
        dist=dist,
        hops={i: rng.randint(0, 20) for i in dist},
        next_hop={i: rng.choice(port_list) for i in dist if port_list},
        sep=float(rng.randint(0, 40)),
        d_est=float(rng.randint(0, 40)),
        r_est=float(rng.randint(0, 40)),
    )
    for port in port_list:
        if rng.random() < 0.7:
            entries = tuple((i, d, rng.randint(0, 20)) for i, d in sorted(vector().items()))
            state.nbr_vectors[port] = VectorMessage(rng.choice(ids), entries, float(rng.randint(0, 40)))
    return state


def activate(state: RouteState, own_id: int) -> None:
    state.active = True
    state.dist = {own_id: 0.0}
    state.hops = {own_id: 0}
    state.next_hop = {}
    state.sep = 0.0


def deactivate(state: RouteState) -> None:
    """Dormant: no distances, nothing to offer the layer above"""
    state.active = False
    state.dist = {}
    state.hops = {}
    state.next_hop = {}
    state.sep = INF


def own_vector(state: RouteState, own_id: int) -> VectorMessage:
    entries = tuple((dest, state.dist[dest], state.hops.get(dest, 0)) for dest in sorted(state.dist))
    return VectorMessage(own_id, entries, state.sep)


def receive_vector(state: RouteState, port: int, vector: VectorMessage) -> None:
    state.nbr_vectors[port] = vector


def update_round(state: RouteState, own_id: int, ctx: NodeContext,
                 allowed: Optional[Iterable[int]] = None) -> Optional[VectorMessage]:
    """
    Recompute dist, hops and next_hop from the cached neighbor vectors.

    Entries whose hop count exceeds the number of known destinations cannot lie
    on a simple path and are dropped; with `allowed` given, destinations outside
    that identifier set are dropped too. Returns the vector to broadcast, or
    None while the layer is dormant.
    """
    if not state.active:
        return None
    allowed_ids = set(allowed) if allowed is not None else None
    for port in [p for p in state.nbr_vectors if p not in ctx.ports]:
        del state.nbr_vectors[port]

    dist: Dict[int, float] = {own_id: 0.0}
    hops: Dict[int, int] = {own_id: 0}
    next_hop: Dict[int, int] = {}
    neighbors = sorted(state.nbr_vectors.items(), key=lambda item: (item[1].sender, item[0]))
    for port, vector in neighbors:
        weight = ctx.ports[port]
        for dest, d, h in vector.entries:
            if dest == own_id or (allowed_ids is not None and dest not in allowed_ids):
                continue
            candidate = weight + d
            if candidate < dist.get(dest, INF) - TOLERANCE:
                dist[dest] = candidate
                hops[dest] = h + 1
                next_hop[dest] = port

    limit = len(dist)
    for dest in [d for d, h in hops.items() if h >= limit]:
        del dist[dest], hops[dest], next_hop[dest]

    state.dist, state.hops, state.next_hop = dist, hops, next_hop
    state.sep = max(dist.values())
    return own_vector(state, own_id)


def locally_ready(state: RouteState, ctx: NodeContext, own_id: int) -> bool:
    """Every port has a cached vector, and each side has a finite distance to the other"""
    if not state.active:
        return False
    for port in ctx.ports:
        vector = state.nbr_vectors.get(port)
        if vector is None or vector.sender not in state.dist:
            return False
        if all(dest != own_id for dest, _, _ in vector.entries):
            return False
    return True


def separation_and_bounds(state: RouteState, ctx: NodeContext, own_id: int) -> Optional[Tuple[float, float, float]]:
    """(s_u, D estimate, R estimate), or None while some needed distance is unknown"""
    if not locally_ready(state, ctx, own_id):
        return None
    return state.sep, state.d_est, state.r_est


def route_tree(state: RouteState, root_id: int, own_id: int) -> Optional[int]:
    """Parent port toward `root_id`, ROOT at the root itself, None if unroutable"""
    if root_id == own_id:
        return ROOT
    return state.next_hop.get(root_id)


class RoutingLayer(ProtocolLayer):
    name = "apsp"

    def clean_state(self, rng: random.Random) -> RouteState:
        return clean_state()

    def arbitrary_state(self, rng: random.Random, ports: Dict[int, float]) -> RouteState:
        return arbitrary_state(rng, ports)

    def snapshot(self, state: RouteState) -> Dict[str, Any]:
        return {
            "active": state.active,
            "dist": dict(sorted(state.dist.items())),
            "sep": state.sep,
            "nbr_ids": {port: vector.sender for port, vector in sorted(state.nbr_vectors.items())},
        }
