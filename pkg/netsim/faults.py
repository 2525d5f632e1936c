"""
Injected faults: state corruption, crashes and topology or weight changes.
"""
import math
import random
from dataclasses import asdict, dataclass
from typing import TYPE_CHECKING, Any, Dict, Optional

from core.errors import GraphError, ScenarioError
from core.logging import get_logger
from core.registry import fault_kind
from protocols.stack import random_frame

if TYPE_CHECKING:
    from .simulator import Simulator

logger = get_logger("faults")

NODE_KINDS = {"corrupt-node", "crash-recover"}
EDGE_KINDS = {"corrupt-link", "weight-change", "remove-edge", "add-edge"}


@dataclass(frozen=True)
class FaultEvent:
    at: int
    kind: str
    v: Optional[int] = None
    u: Optional[int] = None
    seed: int = 0
    weight: Optional[float] = None

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FaultEvent":
        if not isinstance(data, dict):
            raise ScenarioError(f"Fault entry must be an object, got {data!r}")
        kind = data.get("kind")
        if kind not in NODE_KINDS | EDGE_KINDS:
            raise ScenarioError(f"Unknown fault kind {kind!r}")
        try:
            at = int(data["at"])
            event = cls(
                at=at,
                kind=kind,
                v=int(data["v"]) if "v" in data else None,
                u=int(data["u"]) if "u" in data else None,
                seed=int(data.get("seed", 0)),
                weight=float(data["weight"]) if "weight" in data else None,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(f"Bad fault entry {data!r}: {exc}") from exc
        if event.at < 0:
            raise ScenarioError(f"Fault time must be non-negative, got {event.at}")
        if event.v is None or (kind in EDGE_KINDS and event.u is None):
            raise ScenarioError(f"Fault {kind} needs {'u and v' if kind in EDGE_KINDS else 'v'}")
        needs_weight = kind in {"weight-change", "add-edge"}
        if needs_weight and (event.weight is None or not (math.isfinite(event.weight) and event.weight > 0)):
            raise ScenarioError(f"Fault {kind} needs a finite positive weight")
        return event

    def to_dict(self) -> Dict[str, Any]:
        return {key: value for key, value in asdict(self).items() if value is not None}

    def describe(self) -> str:
        where = f"{self.u}-{self.v}" if self.u is not None else f"{self.v}"
        return f"{self.kind} {where} at {self.at}"


def _check_vertex(sim: "Simulator", v: int) -> None:
    if not 0 <= v < sim.graph.n:
        raise ScenarioError(f"Fault names vertex {v} outside 0..{sim.graph.n - 1}")


@fault_kind("corrupt-node")
def corrupt_node(sim: "Simulator", event: FaultEvent) -> None:
    _check_vertex(sim, event.v)
    sim.hosts[event.v].node.initialize(random.Random(f"corrupt:{event.seed}:{event.v}"))


@fault_kind("crash-recover")
def crash_recover(sim: "Simulator", event: FaultEvent) -> None:
    """Lose everything in flight around v, then come back in a random state"""
    _check_vertex(sim, event.v)
    sim.links.clear_around(event.v)
    host = sim.hosts[event.v]
    host.pending.clear()
    for other in sim.hosts.values():
        other.pending.pop(event.v, None)
    host.node.initialize(random.Random(f"crash:{event.seed}:{event.v}"))


@fault_kind("corrupt-link")
def corrupt_link(sim: "Simulator", event: FaultEvent) -> None:
    link = sim.links.get(event.u, event.v)
    if not link.occupied:
        return
    rng = random.Random(f"garble:{event.seed}:{event.u}:{event.v}")
    if rng.random() < 0.5:
        link.take()
        sim.hosts[event.u].pending.pop(event.v, None)
    else:
        link.message = random_frame(rng, sim.stack, sim.graph.neighbors_map(event.v))


@fault_kind("weight-change")
def weight_change(sim: "Simulator", event: FaultEvent) -> None:
    try:
        sim.set_graph(sim.graph.with_weight(event.u, event.v, event.weight))
    except GraphError as exc:
        raise ScenarioError(str(exc)) from exc


@fault_kind("remove-edge")
def remove_edge(sim: "Simulator", event: FaultEvent) -> None:
    try:
        graph = sim.graph.without_edge(event.u, event.v)
    except GraphError as exc:
        raise ScenarioError(str(exc)) from exc
    sim.links.remove(event.u, event.v)
    sim.hosts[event.u].pending.pop(event.v, None)
    sim.hosts[event.v].pending.pop(event.u, None)
    sim.set_graph(graph)


@fault_kind("add-edge")
def add_edge(sim: "Simulator", event: FaultEvent) -> None:
    try:
        graph = sim.graph.with_edge(event.u, event.v, event.weight)
    except GraphError as exc:
        raise ScenarioError(str(exc)) from exc
    sim.links.add(event.u, event.v)
    sim.set_graph(graph)
