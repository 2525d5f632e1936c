"""
Per-node composition of the naming, routing and MDST layers.

A layer above stays dormant until the layer below is locally legitimate: routing
runs only in phase 3 and only over the identifiers of the last verification
wave, and the MDST layer clears phi* whenever a distance it needs is missing.
"""
import random
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from core.config import SimulationConfig
from core.registry import Registry, protocol_stack
from . import mdst as mdst_layer
from . import naming
from . import routing
from .base import Effects, NodeContext
from .mdst import MdstLayer, MdstPayload, MdstState
from .naming import NamingLayer, UNMessage, UNState
from .routing import ROOT, RouteState, RoutingLayer, VectorMessage


@dataclass(frozen=True)
class StackSpec:
    name: str
    naming: bool
    routing: bool
    mdst: bool

    def layer_names(self) -> List[str]:
        names = []
        if self.naming:
            names.append("un")
        if self.routing:
            names.append("apsp")
        if self.mdst:
            names.append("mdst")
        return names


@protocol_stack("un")
def naming_stack() -> StackSpec:
    return StackSpec("un", naming=True, routing=False, mdst=False)


@protocol_stack("apsp")
def routing_stack() -> StackSpec:
    """Routing alone, over fixed identifiers v + 1"""
    return StackSpec("apsp", naming=False, routing=True, mdst=False)


@protocol_stack("mdst")
def mdst_stack() -> StackSpec:
    return StackSpec("mdst", naming=False, routing=True, mdst=True)


@protocol_stack("composed")
def composed_stack() -> StackSpec:
    return StackSpec("composed", naming=True, routing=True, mdst=True)


def get_stack(name: str) -> StackSpec:
    return Registry("stack").get(name)()


def stack_names() -> List[str]:
    return Registry("stack").names()


@dataclass(frozen=True)
class Frame:
    """Everything one node sends one neighbor in one tick"""
    un: Tuple[UNMessage, ...] = ()
    vector: Optional[VectorMessage] = None
    mdst: Optional[MdstPayload] = None

    def merge(self, newer: "Frame") -> "Frame":
        return Frame(
            self.un + newer.un,
            newer.vector if newer.vector is not None else self.vector,
            newer.mdst if newer.mdst is not None else self.mdst,
        )

    def summary(self) -> Dict[str, Any]:
        return {
            "un": [message.summary() for message in self.un],
            "vector": len(self.vector.entries) if self.vector else None,
            "mdst_cycle": self.mdst.cycle if self.mdst else None,
        }


def random_frame(rng: random.Random, spec: StackSpec, ports: Dict[int, float]) -> Frame:
    """A garbled frame: type-correct, contents arbitrary"""
    un: Tuple[UNMessage, ...] = ()
    if spec.naming:
        scratch = naming.arbitrary_state(rng, ports)
        kinds = ["forward", "feedback", "reset"]
        un = tuple(
            UNMessage(rng.choice(kinds), scratch.token, scratch.n_range,
                      (rng.randint(1, 16), rng.randrange(naming.NONCE_RANGE)),
                      rng.randrange(naming.SEQ_MODULUS),
                      tuple(rng.randint(1, 16) for _ in range(rng.randint(0, 4))))
            for _ in range(rng.randint(0, 2))
        )
    vector = None
    if spec.routing:
        scratch_route = routing.arbitrary_state(rng, ports)
        vector = routing.own_vector(scratch_route, rng.randint(1, 16)) if scratch_route.dist else None
    payload = mdst_layer.random_payload(rng) if spec.mdst else None
    return Frame(un, vector, payload)


class ProtocolNode:
    """The layers of one vertex plus the UN messages waiting for the next tick"""

    def __init__(self, spec: StackSpec, vertex: int, ctx: NodeContext, config: SimulationConfig):
        self.spec = spec
        self.vertex = vertex
        self.ctx = ctx
        self.config = config
        self.fixed_id = vertex + 1
        self.naming_layer = NamingLayer(config.initial_range, config.wave_patience) if spec.naming else None
        self.routing_layer = RoutingLayer() if spec.routing else None
        self.mdst_layer = MdstLayer(config.cycle_patience) if spec.mdst else None
        self.un: Optional[UNState] = None
        self.route: Optional[RouteState] = None
        self.mdst: Optional[MdstState] = None
        self.outbox: Dict[int, List[UNMessage]] = {}
        self.initialize(None)

    @property
    def own_id(self) -> int:
        return self.un.id if self.un is not None else self.fixed_id

    def initialize(self, rng: Optional[random.Random]) -> None:
        """Clean states when rng is None, arbitrary states drawn from rng otherwise"""
        self.outbox = {}
        if self.naming_layer:
            self.un = (self.naming_layer.clean_state(self.ctx.rng) if rng is None
                       else self.naming_layer.arbitrary_state(rng, self.ctx.ports))
        if self.routing_layer:
            self.route = (self.routing_layer.clean_state(self.ctx.rng) if rng is None
                          else self.routing_layer.arbitrary_state(rng, self.ctx.ports))
            if rng is None and self.un is None:
                routing.activate(self.route, self.own_id)
        if self.mdst_layer:
            self.mdst = (self.mdst_layer.clean_state(self.ctx.rng) if rng is None
                         else self.mdst_layer.arbitrary_state(rng, self.ctx.ports))

    def _drain(self, fx: Effects) -> None:
        for port, message in fx.outgoing:
            if port in self.ctx.ports:
                self.outbox.setdefault(port, []).append(message)
        fx.outgoing.clear()

    def ready(self) -> bool:
        if self.route is None or not routing.locally_ready(self.route, self.ctx, self.own_id):
            return False
        return self.un is None or self.un.phase == naming.PHASE_STABLE

    def _sync(self, fx: Effects) -> None:
        if self.un is not None and self.route is not None:
            stable = self.un.phase == naming.PHASE_STABLE
            if not stable and self.route.active:
                routing.deactivate(self.route)
                self.route.nbr_vectors.clear()
                fx.write("un", "apsp", "dist")
            elif stable and self.route.dist.get(self.un.id) != 0.0:
                routing.activate(self.route, self.un.id)
                fx.write("un", "apsp", "dist")
                if self.mdst is not None:
                    mdst_layer.clear(self.mdst)
        elif self.route is not None and self.route.dist.get(self.own_id) != 0.0:
            routing.activate(self.route, self.own_id)
        if self.route is not None and not self.route.active and self.route.dist:
            routing.deactivate(self.route)
        if self.mdst is not None and not self.ready() and self.mdst.phi_star != mdst_layer.NONE_ELT:
            mdst_layer.clear(self.mdst)
            fx.write("apsp", "mdst", "phi_star")

    def on_receive(self, port: int, frame: Frame, fx: Effects) -> None:
        if port not in self.ctx.ports:
            return
        if self.un is not None:
            for message in frame.un:
                naming.pif_round(self.un, port, message, self.ctx, fx)
            self._drain(fx)
        if self.route is not None and frame.vector is not None:
            routing.receive_vector(self.route, port, frame.vector)
        if self.mdst is not None and frame.mdst is not None:
            mdst_layer.receive_payload(self.mdst, port, frame.mdst)
        self._sync(fx)

    def on_tick(self, fx: Effects) -> Dict[int, Frame]:
        if self.un is not None:
            naming.tick(self.un, self.ctx, fx)
            self._drain(fx)
            fx.step("un", enabled=True, acted=True)
        self._sync(fx)

        vector = None
        if self.route is not None:
            enabled = self.route.active
            allowed = self.un.id_list if self.un is not None else None
            vector = routing.update_round(self.route, self.own_id, self.ctx, allowed)
            fx.step("apsp", enabled, acted=vector is not None)
        payload = None
        if self.mdst is not None and self.route is not None:
            ready = self.ready()
            payload = mdst_layer.tick(self.mdst, self.route, self.own_id, self.ctx, ready, fx)
            # a ready node that found no route to the root only cleared its state
            fx.step("mdst", ready, acted=ready and self.mdst.parent is not None)
        self._sync(fx)

        frames = {}
        for port in self.ctx.port_list():
            frames[port] = Frame(tuple(self.outbox.pop(port, [])), vector, payload)
        return frames

    def on_topology(self, ports: Dict[int, float], fx: Effects) -> None:
        self.ctx.ports = dict(ports)
        for port in [p for p in self.outbox if p not in ports]:
            del self.outbox[port]
        if self.un is not None:
            naming.on_topology(self.un, self.ctx, fx)
            self._drain(fx)
        if self.route is not None:
            for port in [p for p in self.route.nbr_vectors if p not in ports]:
                del self.route.nbr_vectors[port]
        self._sync(fx)

    def tree_parent(self) -> Optional[int]:
        """Parent vertex in the extracted tree, ROOT for its root, None if not known yet"""
        if self.mdst is None or self.route is None:
            return None
        return mdst_layer.extract_tree(self.mdst, self.route, self.own_id)

    def snapshot(self) -> Dict[str, Any]:
        view: Dict[str, Any] = {"id": self.own_id}
        if self.un is not None:
            view.update(self.naming_layer.snapshot(self.un))
        if self.route is not None:
            view.update(self.routing_layer.snapshot(self.route))
        if self.mdst is not None:
            view.update(self.mdst_layer.snapshot(self.mdst))
            parent = self.tree_parent()
            view["tree_parent"] = "root" if parent == ROOT else parent
        return view
