"""
Audits of the two structural claims behind the composed protocol.

The local checkability audit watches every action of fault-free runs and flags
any transition that falsifies a local predicate on one of the actor's edges.
The composition audit checks that, once naming has settled, it never writes a
variable that routing or the MDST layer reads, and that every layer whose
guard held at its turn in a tick also took its step.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

from core.config import SimulationConfig
from core.logging import get_logger
from graph.model import WeightedGraph
from netsim.faults import FaultEvent
from netsim.simulator import Simulator
from netsim.trace import CrossWrite, Trace
from protocols.stack import get_stack
from .predicates import LOCAL_PREDICATES, global_predicate, predicates_for

logger = get_logger("audits")


@dataclass(frozen=True)
class Violation:
    time: int
    vertex: int
    action: str
    edge: Tuple[int, int]
    predicate: str


@dataclass
class LocalCheckReport:
    predicate: str
    transitions: int = 0
    violations: List[Violation] = field(default_factory=list)
    fault_attributed: List[Violation] = field(default_factory=list)
    implication_checked: int = 0
    implication_failures: int = 0
    witness: Optional[str] = None

    @property
    def passed(self) -> bool:
        return not self.violations and self.implication_failures == 0 and self.witness is not None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "predicate": self.predicate,
            "transitions": self.transitions,
            "violations": [v.__dict__ for v in self.violations[:10]],
            "violation_count": len(self.violations),
            "fault_attributed": len(self.fault_attributed),
            "implication_checked": self.implication_checked,
            "implication_failures": self.implication_failures,
            "witness": self.witness,
            "passed": self.passed,
        }


class LocalCheckObserver:
    """Evaluates local predicates on the actor's edges before and after each action"""

    def __init__(self, names: Iterable[str]):
        self.reports = {name: LocalCheckReport(name) for name in names}
        self._before: Dict[int, Dict[str, Dict[Tuple[int, int], bool]]] = {}

    def _local_values(self, sim: Simulator, v: int) -> Dict[str, Dict[Tuple[int, int], bool]]:
        around = [v] + [u for u, _ in sim.graph.neighbors(v)]
        views = {x: sim.hosts[x].node.snapshot() for x in around}
        values: Dict[str, Dict[Tuple[int, int], bool]] = {}
        for name in self.reports:
            local = LOCAL_PREDICATES[name]
            values[name] = {}
            for u, _ in sim.graph.neighbors(v):
                config = {"nodes": {v: views[v], u: views[u]}}
                values[name][(min(u, v), max(u, v))] = local(config, v, u)
        return values

    def action_started(self, sim: Simulator, v: int) -> None:
        self._before[v] = self._local_values(sim, v)

    def action_finished(self, sim: Simulator, v: int, label: str) -> None:
        before = self._before.pop(v, {})
        after = self._local_values(sim, v)
        for name, report in self.reports.items():
            if label != "fault":
                report.transitions += 1
            for edge, held in before.get(name, {}).items():
                if held and not after[name].get(edge, True):
                    violation = Violation(sim.time, v, label, edge, name)
                    if label == "fault":
                        report.fault_attributed.append(violation)
                    else:
                        report.violations.append(violation)
                        logger.warning(f"Local predicate {name} falsified on {edge} by {label} at t={sim.time}")


def local_checkability_audit(protocol: str, samples: Iterable[Tuple[WeightedGraph, int]], horizon: int,
                             scheduler: str = "fair", faults: Iterable[FaultEvent] = (),
                             config: Optional[SimulationConfig] = None) -> Dict[str, LocalCheckReport]:
    """
    Audit local predicates over clean runs, one per (graph, seed) sample.

    Condition (iii) counts every falsifying non-fault transition; faults passed
    in are injected and their effects attributed to them. Condition (i) checks
    each configuration where every local predicate holds against the global
    predicate it should imply, and condition (ii) records the digest of one such
    configuration as a witness.
    """
    names = [name for name in predicates_for(get_stack(protocol).layer_names()) if name in LOCAL_PREDICATES]
    observer = LocalCheckObserver(names)
    for graph, seed in samples:
        sim = Simulator(graph, protocol, None, scheduler, seed, config, record_actions=False, observer=observer)
        trace = sim.run(horizon, faults)
        _check_implication(trace, observer.reports)
    return observer.reports


def _check_implication(trace: Trace, reports: Dict[str, LocalCheckReport]) -> None:
    for name, report in reports.items():
        local = LOCAL_PREDICATES[name]
        implied = global_predicate(name)
        seen = set()
        for _, key in trace.configs:
            if key in seen:
                continue
            seen.add(key)
            config = trace.snapshots[key]
            edges = [(u, v) for u, v, _ in config["edges"]] or [(0, 0)]
            if not all(local(config, u, v) for u, v in edges):
                continue
            report.implication_checked += 1
            if report.witness is None:
                report.witness = key
            if implied is not None and not implied(config):
                report.implication_failures += 1


@dataclass
class CompositionReport:
    psi_suffix_time: Optional[int]
    cross_writes_before: int = 0
    cross_writes_after: List[CrossWrite] = field(default_factory=list)
    units_checked: int = 0
    unfair_ticks: int = 0
    dormant_steps: int = 0

    @property
    def passed(self) -> bool:
        return self.psi_suffix_time is not None and not self.cross_writes_after and self.unfair_ticks == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "psi_suffix_time": self.psi_suffix_time,
            "cross_writes_before": self.cross_writes_before,
            "cross_writes_after": [w.__dict__ for w in self.cross_writes_after[:10]],
            "units_checked": self.units_checked,
            "unfair_ticks": self.unfair_ticks,
            "dormant_steps": self.dormant_steps,
            "passed": self.passed,
        }


def composition_audit(trace: Trace, psi_suffix_time: Optional[int], layers: List[str]) -> CompositionReport:
    """
    Naming writes into other layers after psi settled, plus per-tick fairness.

    A tick is unfair when one of `layers` was enabled but did not act. Tick
    records without an enabled list count every layer as enabled.
    """
    report = CompositionReport(psi_suffix_time)
    for write in trace.writes:
        if write.owner != "un":
            continue
        if psi_suffix_time is not None and write.time > psi_suffix_time:
            report.cross_writes_after.append(write)
        else:
            report.cross_writes_before += 1
    units = set()
    for record in trace.events("tick"):
        units.add(record.time)
        acted = set(record.data.get("layers", []))
        enabled = set(record.data.get("enabled", layers))
        if any(layer in enabled and layer not in acted for layer in layers):
            report.unfair_ticks += 1
        report.dormant_steps += sum(layer not in enabled for layer in layers)
    report.units_checked = len(units)
    return report
