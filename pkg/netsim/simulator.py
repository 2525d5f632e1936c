"""
Seeded discrete-event simulator for message passing over unit-capacity links.

Time advances in units. Within a unit the scheduler policy orders the delivery
of every message stored when the unit began and one tick of every node; a send
onto an occupied queue is kept by the host and retried when the queue frees.
"""
import random
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Protocol

from core.config import SimulationConfig
from core.errors import ScenarioError
from core.logging import get_logger
from core.registry import Registry
from graph.model import Edge, WeightedGraph, edge_key
from protocols.base import Effects, NodeContext
from protocols.routing import ROOT
from protocols.stack import Frame, ProtocolNode, get_stack, random_frame
from . import faults  # noqa: F401  registers the fault handlers
from .faults import FaultEvent
from .links import LinkTable
from .scenario import Scenario
from .scheduler import get_scheduler
from .trace import CrossWrite, Trace, canonical_json

logger = get_logger("netsim")


class ActionObserver(Protocol):
    def action_started(self, sim: "Simulator", v: int) -> None: ...

    def action_finished(self, sim: "Simulator", v: int, label: str) -> None: ...


@dataclass
class NodeHost:
    """A node automaton plus the frames it could not send yet"""
    vertex: int
    node: ProtocolNode
    pending: Dict[int, Frame] = field(default_factory=dict)
    rounds: int = 0


@dataclass
class SimCounters:
    units: int = 0
    messages: int = 0
    blocked: int = 0
    deliveries: int = 0
    peak_state_bits: int = 0


class Simulator:
    def __init__(self, graph: WeightedGraph, protocol: str = "composed", init_seed: Optional[int] = None,
                 scheduler: str = "fair", seed: int = 0, config: Optional[SimulationConfig] = None,
                 record_actions: bool = True, dump_tables: bool = False,
                 observer: Optional[ActionObserver] = None):
        self.config = config or SimulationConfig.from_env()
        self.graph = graph
        self.stack = get_stack(protocol)
        self.policy = get_scheduler(scheduler)
        self.seed = seed
        self.rng = random.Random(f"schedule:{seed}")
        self.record_actions = record_actions
        self.dump_tables = dump_tables
        self.observer = observer
        self.faults = Registry("fault")
        self.links = LinkTable(graph.edges())
        self.hosts: Dict[int, NodeHost] = {}
        for v in graph.vertices():
            ctx = NodeContext(graph.neighbors_map(v), random.Random(f"{seed}:{v}"))
            node = ProtocolNode(self.stack, v, ctx, self.config)
            if init_seed is not None:
                node.initialize(random.Random(f"arbitrary:{init_seed}:{v}"))
            self.hosts[v] = NodeHost(v, node)
        if init_seed is not None:
            self._fill_links(random.Random(f"arbitrary-links:{init_seed}"))
        self.time = 0
        self.trace = Trace()
        self.counters = SimCounters()
        self._end_unit()

    def _fill_links(self, rng: random.Random) -> None:
        for (u, v), link in self.links:
            if rng.random() < 0.5:
                link.store(random_frame(rng, self.stack, self.graph.neighbors_map(v)), 0)

    def snapshot(self) -> Dict[str, Any]:
        return {
            "edges": [[u, v, w] for (u, v), w in sorted(self.graph.weights.items())],
            "nodes": [self.hosts[v].node.snapshot() for v in self.graph.vertices()],
        }

    def send(self, frm: int, to: int, frame: Frame) -> bool:
        """Store on the directed queue if it is empty; otherwise keep the frame for the Free retry"""
        accepted = self.links.send(frm, to, frame, self.time)
        if accepted:
            self.counters.messages += 1
        else:
            self.hosts[frm].pending[to] = frame
            self.counters.blocked += 1
        if self.record_actions:
            self.trace.log(self.time, f"node:{frm}", "send" if accepted else "send-blocked", repr(frame),
                           {"to": to})
        return accepted

    def _absorb(self, v: int, fx: Effects) -> None:
        for label, payload in fx.events:
            self.trace.log(self.time, f"node:{v}", label, payload, payload)
            logger.debug(f"t={self.time} node {v} {label} {payload}")
        for owner, target, variable in fx.writes:
            self.trace.writes.append(CrossWrite(self.time, v, owner, target, variable))

    def _deliver(self, frm: int, to: int) -> None:
        link = self.links.get(frm, to)
        if not link.occupied:
            return
        frame = link.take()
        self.counters.deliveries += 1
        if self.record_actions:
            self.trace.log(self.time, f"link:{frm}->{to}", "deliver", repr(frame), frame.summary())
        fx = Effects()
        if self.observer:
            self.observer.action_started(self, to)
        self.hosts[to].node.on_receive(frm, frame, fx)
        self._absorb(to, fx)
        if self.observer:
            self.observer.action_finished(self, to, "deliver")
        retry = self.hosts[frm].pending.pop(to, None)
        if retry is not None:
            self.send(frm, to, retry)

    def _tick(self, v: int) -> None:
        host = self.hosts[v]
        fx = Effects()
        if self.observer:
            self.observer.action_started(self, v)
        frames = host.node.on_tick(fx)
        host.rounds += 1
        if self.record_actions:
            self.trace.log(self.time, f"node:{v}", "tick", None,
                           {"layers": list(fx.acted), "enabled": list(fx.enabled)})
        self._absorb(v, fx)
        if self.observer:
            self.observer.action_finished(self, v, "tick")
        for port, frame in frames.items():
            waiting = host.pending.pop(port, None)
            if waiting is not None:
                frame = waiting.merge(frame)
            self.send(v, port, frame)

    def _end_unit(self) -> None:
        snapshot = self.snapshot()
        self.trace.record_config(self.time, snapshot)
        bits = max(8 * len(canonical_json(node)) for node in snapshot["nodes"])
        self.counters.peak_state_bits = max(self.counters.peak_state_bits, bits)
        if self.dump_tables:
            self.trace.tables.append({
                "time": self.time,
                "dist": {v: node.get("dist", {}) for v, node in enumerate(snapshot["nodes"])},
            })

    def step(self) -> None:
        """Advance one time unit"""
        self.time += 1
        for kind, target in self.policy.order(self.links.stored(), list(self.hosts), self.rng):
            if kind == "deliver":
                self._deliver(*target)
            else:
                self._tick(target)
        self.counters.units += 1
        self._end_unit()

    def set_graph(self, graph: WeightedGraph) -> None:
        """Swap in a new topology and tell every node whose ports changed"""
        self.graph = graph
        for v, host in self.hosts.items():
            ports = graph.neighbors_map(v)
            if ports == host.node.ctx.ports:
                continue
            for port in [p for p in host.pending if p not in ports]:
                del host.pending[port]
            fx = Effects()
            host.node.on_topology(ports, fx)
            self._absorb(v, fx)

    def inject(self, event: FaultEvent) -> None:
        handler = self.faults.get(event.kind)
        logger.info(f"Injecting {event.describe()}")
        touched = [x for x in (event.u, event.v) if x is not None and x in self.hosts]
        if self.observer:
            for v in touched:
                self.observer.action_started(self, v)
        handler(self, event)
        self.trace.fault_times.append(self.time)
        self.trace.log(self.time, "sim", "fault", event.to_dict(), event.to_dict())
        if self.observer:
            for v in touched:
                self.observer.action_finished(self, v, "fault")

    def run(self, horizon: int, faults: Iterable[FaultEvent] = ()) -> Trace:
        if horizon <= 0:
            raise ScenarioError(f"Horizon must be positive, got {horizon}")
        queue = sorted(faults, key=lambda event: event.at)
        late = [event for event in queue if event.at >= horizon]
        if late:
            logger.warning(f"{len(late)} fault(s) scheduled at or after the horizon are ignored")
        index = 0
        while self.time < horizon:
            while index < len(queue) and queue[index].at <= self.time:
                self.inject(queue[index])
                index += 1
            self.step()
        return self.trace

    def tree_edges(self) -> Optional[FrozenSet[Edge]]:
        """Edges hanging every node under its extracted parent, None until every node has one"""
        edges = set()
        roots = 0
        for v, host in self.hosts.items():
            parent = host.node.tree_parent()
            if parent is None:
                return None
            if parent == ROOT:
                roots += 1
            else:
                edges.add(edge_key(v, parent))
        if roots != 1 or len(edges) != self.graph.n - 1:
            return None
        return frozenset(edges)


@dataclass
class SimulationResult:
    scenario: Scenario
    trace: Trace
    counters: SimCounters
    graph: WeightedGraph
    tree: Optional[FrozenSet[Edge]]
    final_digest: str
    simulator: Simulator = field(repr=False)

    def tree_edge_list(self) -> Optional[List[List[int]]]:
        return [list(edge) for edge in sorted(self.tree)] if self.tree is not None else None


def run(scenario: Scenario, config: Optional[SimulationConfig] = None, record_actions: bool = True,
        dump_tables: bool = False, observer: Optional[ActionObserver] = None) -> SimulationResult:
    """Execute a scenario for its full horizon"""
    sim = Simulator(
        scenario.graph, scenario.protocol, scenario.init_seed, scenario.scheduler, scenario.seed,
        config, record_actions, dump_tables, observer,
    )
    logger.info(f"Running {scenario.protocol} stack on n={scenario.graph.n} m={scenario.graph.m} "
                f"for {scenario.horizon} units ({scenario.scheduler} scheduler, seed {scenario.seed})")
    trace = sim.run(scenario.horizon, scenario.faults)
    logger.info(f"Finished after {sim.time} units: {sim.counters.messages} messages, "
                f"final digest {trace.final_digest[:12]}")
    return SimulationResult(scenario, trace, sim.counters, sim.graph, sim.tree_edges(),
                            trace.final_digest, sim)
