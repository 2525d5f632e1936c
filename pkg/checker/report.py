"""
Run reports: everything the checker concluded about one simulated scenario.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from center.solver import absolute_center, mdst
from core.config import save_json_file
from core.logging import get_logger
from graph.model import SpanningTree, Vertex
from graph.paths import tree_diameter
from netsim.simulator import SimulationResult
from protocols.stack import get_stack
from .audits import CompositionReport, composition_audit
from .predicates import predicates_for
from .stabilization import PredicateReport, evaluate, layered_order_holds, reset_latencies

logger = get_logger("report")

THETA_SCOPE = "node states only; link contents are not part of the evaluated configuration"


@dataclass
class RunReport:
    scenario: Dict[str, Any]
    predicates: Dict[str, PredicateReport]
    layered_order: bool
    final_digest: str
    metrics: Dict[str, Any]
    oracle: Dict[str, Any]
    tree: Optional[List[List[int]]] = None
    tree_diameter: Optional[float] = None
    composition: Optional[CompositionReport] = None
    resets: List[Dict[str, int]] = field(default_factory=list)

    @property
    def stabilized(self) -> bool:
        return all(report.stabilized for report in self.predicates.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "scenario": self.scenario,
            "predicates": {name: report.to_dict() for name, report in self.predicates.items()},
            "layered_order": self.layered_order,
            "stabilized": self.stabilized,
            "theta_scope": THETA_SCOPE,
            "final_digest": self.final_digest,
            "metrics": self.metrics,
            "oracle": self.oracle,
            "tree": self.tree,
            "tree_diameter": self.tree_diameter,
            "composition": self.composition.to_dict() if self.composition else None,
            "resets": self.resets,
        }

    def save(self, path: str) -> None:
        save_json_file(self.to_dict(), path)
        logger.info(f"Saved run report to {path}")


def build_run_report(result: SimulationResult) -> RunReport:
    layers = get_stack(result.scenario.protocol).layer_names()
    reports = evaluate(result.trace, predicates_for(layers))
    graph = result.graph
    center = absolute_center(graph)
    _, best_diameter = mdst(graph)
    oracle = {
        "center": center.location.label(),
        "separation": center.separation,
        "mdst_diameter": best_diameter,
    }

    tree_diam = None
    if result.tree is not None:
        tree_diam = tree_diameter(graph, SpanningTree(result.tree, Vertex(0)))

    composition = None
    if "un" in layers and len(layers) > 1:
        psi_report = reports.get("psi")
        composition = composition_audit(result.trace, psi_report.first_suffix_time if psi_report else None, layers)

    return RunReport(
        scenario=result.scenario.to_dict(),
        predicates=reports,
        layered_order=layered_order_holds(reports),
        final_digest=result.final_digest,
        metrics={
            "units": result.counters.units,
            "messages": result.counters.messages,
            "blocked_sends": result.counters.blocked,
            "peak_state_bits": result.counters.peak_state_bits,
        },
        oracle=oracle,
        tree=result.tree_edge_list(),
        tree_diameter=tree_diam,
        composition=composition,
        resets=reset_latencies(result.trace),
    )
