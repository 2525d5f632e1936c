"""
Distributed minimum diameter spanning tree.

One cycle: every node computes the best local center over the edges it owns,
the candidates travel up the shortest path tree of the smallest identifier r
together with the largest and smallest separations, r keeps the minimum as
phi* and broadcasts it back down with the fresh D and R estimates. Cycles repeat
forever; each node then hangs itself under the absolute center named by phi*.
"""
import random
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from center.solver import gamma_star, pairs_lower_bound, prune_and_sort
from core.config import TOLERANCE
from core.logging import get_logger
from .base import INF, NO_ID, SEQ_MODULUS, Effects, NodeContext, ProtocolLayer, finite
from .routing import ROOT, RouteState, route_tree

logger = get_logger("mdst")

MAX_PATIENCE = 1 << 16


@dataclass(frozen=True)
class Elt:
    """A center candidate: the point at alpha_best on edge (id_1, id_2) of weight omega"""
    alpha_best: float
    upbound: float
    id_1: int = NO_ID
    id_2: int = NO_ID
    omega: float = 0.0

    @property
    def sort_key(self) -> Tuple[float, int, int, float]:
        return (self.upbound, self.id_1, self.id_2, self.alpha_best)

    @property
    def is_sentinel(self) -> bool:
        return self.id_1 == NO_ID

    def to_dict(self) -> Dict[str, Any]:
        return {"alpha": self.alpha_best, "upbound": self.upbound, "ids": [self.id_1, self.id_2]}


NONE_ELT = Elt(0.0, INF)


def better(first: Elt, second: Elt) -> Elt:
    return first if first.sort_key <= second.sort_key else second


@dataclass(frozen=True)
class Aggregate:
    """What a subtree reports: its best edge candidate and the extreme separations"""
    best: Elt
    max_sep: float
    min_sep: float
    min_sep_id: int

    def merge(self, other: "Aggregate") -> "Aggregate":
        if (other.min_sep, other.min_sep_id) < (self.min_sep, self.min_sep_id):
            low, low_id = other.min_sep, other.min_sep_id
        else:
            low, low_id = self.min_sep, self.min_sep_id
        return Aggregate(better(self.best, other.best), max(self.max_sep, other.max_sep), low, low_id)


@dataclass(frozen=True)
class MdstPayload:
    root_id: int
    parent_id: int
    done_cycle: Optional[int]
    report: Optional[Aggregate]
    cycle: int
    phi_star: Elt
    d_est: float
    r_est: float
    r_vertex: int

    def broadcast(self) -> Tuple[int, Elt, float, float, int]:
        return (self.cycle, self.phi_star, self.d_est, self.r_est, self.r_vertex)


@dataclass
class MdstState:
    lam: List[Elt] = field(default_factory=list)
    phi: Elt = NONE_ELT
    phi_star: Elt = NONE_ELT
    cycle: int = 0
    root_id: int = NO_ID
    parent: Optional[int] = None
    done_cycle: Optional[int] = None
    report: Optional[Aggregate] = None
    r_vertex: int = NO_ID
    wait: int = 0
    patience: int = 16
    nbr_payloads: Dict[int, MdstPayload] = field(default_factory=dict)


def clean_state(patience: int = 16) -> MdstState:
    return MdstState(patience=patience)


def _random_elt(rng: random.Random) -> Elt:
    if rng.random() < 0.2:
        return NONE_ELT
    omega = float(rng.randint(1, 10))
    return Elt(rng.uniform(0, omega), float(rng.randint(0, 30)), rng.randint(0, 16), rng.randint(0, 16), omega)


def arbitrary_state(rng: random.Random, ports: Dict[int, float]) -> MdstState:
    state = MdstState(
        lam=[_random_elt(rng) for _ in range(rng.randint(0, 3))],
        phi=_random_elt(rng),
        phi_star=_random_elt(rng),
        cycle=rng.randrange(SEQ_MODULUS),
        root_id=rng.randint(0, 16),
        parent=rng.choice(sorted(ports) + [None, ROOT]),
        r_vertex=rng.randint(0, 16),
        wait=rng.randint(0, 32),
        patience=rng.randint(1, 64),
    )
    for port in sorted(ports):
        if rng.random() < 0.6:
            state.nbr_payloads[port] = random_payload(rng)
    return state


def random_payload(rng: random.Random) -> MdstPayload:
    report = None
    if rng.random() < 0.5:
        report = Aggregate(_random_elt(rng), float(rng.randint(0, 30)), float(rng.randint(0, 30)), rng.randint(1, 16))
    return MdstPayload(
        root_id=rng.randint(0, 16),
        parent_id=rng.randint(0, 16),
        done_cycle=rng.choice([None, rng.randrange(SEQ_MODULUS)]),
        report=report,
        cycle=rng.randrange(SEQ_MODULUS),
        phi_star=_random_elt(rng),
        d_est=float(rng.randint(0, 30)),
        r_est=float(rng.randint(0, 30)),
        r_vertex=rng.randint(0, 16),
    )


def local_candidates(route: RouteState, own_id: int, ctx: NodeContext) -> Optional[Elt]:
    """
    Best center candidate over the edges toward larger identifiers.

    Starts from the sentinel at the current R estimate and stops once the
    candidate is within D/2, the lowest separation any point can have. Returns
    None if a neighbor vector does not cover the same destinations.
    """
    phi = Elt(0.0, route.r_est)
    threshold = route.d_est / 2 if finite(route.d_est) else 0.0
    owned = sorted(
        (vector.sender, port) for port, vector in route.nbr_vectors.items()
        if port in ctx.ports and vector.sender > own_id
    )
    for other_id, port in owned:
        if phi.upbound <= threshold + TOLERANCE:
            break
        theirs = route.nbr_vectors[port].distances()
        if theirs.keys() != route.dist.keys():
            return None
        pairs = [(route.dist[z], theirs[z]) for z in sorted(route.dist)]
        if pairs_lower_bound(pairs) >= phi.upbound:
            continue
        omega = ctx.ports[port]
        alpha, localmin = gamma_star(prune_and_sort(pairs), omega)
        if localmin < phi.upbound - TOLERANCE:
            phi = Elt(alpha, localmin, own_id, other_id, omega)
    return phi


def sons(state: MdstState, own_id: int, ctx: NodeContext) -> List[int]:
    return [
        port for port, payload in sorted(state.nbr_payloads.items())
        if port in ctx.ports and payload.parent_id == own_id and payload.root_id == state.root_id
    ]


def convergecast(state: MdstState, phi: Elt, route: RouteState, own_id: int,
                 ctx: NodeContext) -> Optional[Aggregate]:
    """Fold own candidate with the reports of all sons, once every son has reported this cycle"""
    reports = []
    for port in sons(state, own_id, ctx):
        payload = state.nbr_payloads[port]
        if payload.done_cycle != state.cycle or payload.report is None:
            return None
        reports.append(payload.report)
    own_best = NONE_ELT if phi.is_sentinel else phi
    aggregate = Aggregate(own_best, route.sep, route.sep, own_id)
    for report in reports:
        aggregate = aggregate.merge(report)
    state.lam = [phi] + [report.best for report in reports]
    return aggregate


def root_broadcast(state: MdstState, aggregate: Aggregate, route: RouteState, fx: Effects) -> None:
    """Close the cycle at r: keep the winner as phi* and open the next cycle"""
    vertex_center = Elt(0.0, aggregate.min_sep)
    state.phi_star = better(vertex_center, aggregate.best)
    state.r_vertex = aggregate.min_sep_id
    route.d_est = aggregate.max_sep
    route.r_est = aggregate.min_sep
    fx.note("mdst.cycle", cycle=state.cycle, upbound=state.phi_star.upbound)
    state.cycle = (state.cycle + 1) % SEQ_MODULUS
    state.wait = 0


def clear(state: MdstState) -> None:
    state.phi = NONE_ELT
    state.phi_star = NONE_ELT
    state.root_id = NO_ID
    state.parent = None
    state.done_cycle = None
    state.report = None


def tick(state: MdstState, route: RouteState, own_id: int, ctx: NodeContext,
         ready: bool, fx: Effects) -> MdstPayload:
    """One step of the repeated candidates/convergecast/broadcast cycle"""
    for port in [p for p in state.nbr_payloads if p not in ctx.ports]:
        del state.nbr_payloads[port]
    if not ready:
        clear(state)
        return payload_of(state, route, own_id)

    state.root_id = min(route.dist)
    state.parent = route_tree(route, state.root_id, own_id)
    if state.parent is None:
        clear(state)
        return payload_of(state, route, own_id)

    if state.parent != ROOT:
        upstream = state.nbr_payloads.get(state.parent)
        if upstream is not None and upstream.root_id == state.root_id:
            if upstream.broadcast() != payload_of(state, route, own_id).broadcast():
                if upstream.cycle != state.cycle:
                    fx.note("mdst.adopt", cycle=upstream.cycle, upbound=upstream.phi_star.upbound)
                state.cycle = upstream.cycle
                state.phi_star = upstream.phi_star
                state.r_vertex = upstream.r_vertex
                route.d_est, route.r_est = upstream.d_est, upstream.r_est

    phi = local_candidates(route, own_id, ctx)
    aggregate = convergecast(state, phi, route, own_id, ctx) if phi is not None else None
    state.phi = phi if phi is not None else NONE_ELT
    state.report = aggregate
    state.done_cycle = state.cycle if aggregate is not None else None

    if state.parent == ROOT:
        if aggregate is not None:
            root_broadcast(state, aggregate, route, fx)
        else:
            state.wait += 1
            if state.wait > state.patience:
                state.patience = min(2 * state.patience, MAX_PATIENCE)
                logger.debug(f"root {own_id} restarts cycle {state.cycle} after {state.wait} ticks")
                fx.note("mdst.cycle_timeout", cycle=state.cycle, patience=state.patience)
                state.cycle = (state.cycle + 1) % SEQ_MODULUS
                state.wait = 0
    return payload_of(state, route, own_id)


def payload_of(state: MdstState, route: RouteState, own_id: int) -> MdstPayload:
    parent_id = NO_ID
    if state.parent is not None and state.parent != ROOT:
        parent_id = route.neighbor_id(state.parent) or NO_ID
    return MdstPayload(
        root_id=state.root_id,
        parent_id=parent_id,
        done_cycle=state.done_cycle,
        report=state.report,
        cycle=state.cycle,
        phi_star=state.phi_star,
        d_est=route.d_est,
        r_est=route.r_est,
        r_vertex=state.r_vertex,
    )


def receive_payload(state: MdstState, port: int, payload: MdstPayload) -> None:
    state.nbr_payloads[port] = payload


def extract_tree(state: MdstState, route: RouteState, own_id: int) -> Optional[int]:
    """
    Parent port in the shortest path tree of the point named by phi*.

    Returns ROOT for the node the tree hangs from and None while phi* or the
    distances it needs are unknown.
    """
    phi = state.phi_star
    if not finite(phi.upbound):
        return None
    if phi.is_sentinel:
        if state.r_vertex == own_id:
            return ROOT
        return route.next_hop.get(state.r_vertex)

    u, v, alpha, omega = phi.id_1, phi.id_2, phi.alpha_best, phi.omega
    if u not in route.dist or v not in route.dist:
        return None
    via_u = route.dist[u] + alpha
    via_v = route.dist[v] + omega - alpha
    target = u if via_u <= via_v + TOLERANCE else v
    if own_id != target:
        return route.next_hop.get(target)

    other = v if target == u else u
    d_other = route.dist[other]
    if other == v:
        other_side_is_own = d_other + alpha > omega - alpha + TOLERANCE
    else:
        other_side_is_own = alpha <= d_other + omega - alpha + TOLERANCE
    if not other_side_is_own or own_id == u:
        # the center edge joins the tree once, hanging v under u
        return ROOT
    return route.port_of(u)


class MdstLayer(ProtocolLayer):
    name = "mdst"

    def __init__(self, patience: int = 16):
        self.patience = patience

    def clean_state(self, rng: random.Random) -> MdstState:
        return clean_state(self.patience)

    def arbitrary_state(self, rng: random.Random, ports: Dict[int, float]) -> MdstState:
        return arbitrary_state(rng, ports)

    def snapshot(self, state: MdstState) -> Dict[str, Any]:
        return {
            "phi_star": state.phi_star.upbound,
            "center": state.phi_star.to_dict(),
            "cycle": state.cycle,
            "root_id": state.root_id,
        }


__all__ = [
    "Elt", "NONE_ELT", "Aggregate", "MdstPayload", "MdstState", "MdstLayer",
    "local_candidates", "convergecast", "root_broadcast", "extract_tree",
]
