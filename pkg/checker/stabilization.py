"""
Stabilization times: the earliest point after the last fault from which a
predicate holds on every logged configuration up to the horizon.
"""
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

from core.logging import get_logger
from netsim.trace import Trace
from .predicates import PREDICATES, Config

logger = get_logger("checker")

STABILIZED = "stabilized"
NOT_STABILIZED = "did not stabilize within horizon"


@dataclass
class PredicateReport:
    name: str
    times: List[int] = field(default_factory=list)
    truth: List[bool] = field(default_factory=list)
    first_suffix_time: Optional[int] = None
    after: int = 0

    @property
    def stabilized(self) -> bool:
        return self.first_suffix_time is not None

    @property
    def outcome(self) -> str:
        return STABILIZED if self.stabilized else NOT_STABILIZED

    def to_dict(self) -> Dict[str, Any]:
        held = sum(self.truth)
        return {
            "predicate": self.name,
            "outcome": self.outcome,
            "first_suffix_time": self.first_suffix_time,
            "evaluated_from": self.after,
            "units_evaluated": len(self.truth),
            "units_holding": held,
        }


def suffix_start(times: List[int], truth: List[bool]) -> Optional[int]:
    """Earliest time from which every later value is true; None if the last one is false"""
    first = None
    for time, holds in zip(reversed(times), reversed(truth)):
        if not holds:
            break
        first = time
    return first


def stabilization_time(trace: Trace, predicate: Callable[[Config], bool], name: str = "") -> PredicateReport:
    start = trace.last_fault_time + 1 if trace.fault_times else 0
    report = PredicateReport(name=name, after=start)
    cache: Dict[str, bool] = {}
    for time, key in trace.configs:
        if time < start:
            continue
        if key not in cache:
            cache[key] = predicate(trace.snapshots[key])
        report.times.append(time)
        report.truth.append(cache[key])
    report.first_suffix_time = suffix_start(report.times, report.truth)
    logger.debug(f"{name}: {report.outcome} (suffix from {report.first_suffix_time})")
    return report


def evaluate(trace: Trace, names: List[str]) -> Dict[str, PredicateReport]:
    return {name: stabilization_time(trace, PREDICATES[name], name) for name in names}


def layered_order_holds(reports: Dict[str, PredicateReport]) -> bool:
    """theta settles no earlier than psi', and psi' no earlier than psi"""
    order = [reports[name] for name in ("psi", "psi_prime", "theta") if name in reports]
    for lower, upper in zip(order, order[1:]):
        if upper.stabilized and not lower.stabilized:
            return False
        if upper.stabilized and upper.first_suffix_time < lower.first_suffix_time:
            return False
    return True


def reset_latencies(trace: Trace) -> List[Dict[str, int]]:
    """Per reset generation: first opening to the last node redrawing under it"""
    opened: Dict[int, int] = {}
    finished: Dict[int, int] = {}
    for record in trace.events("un.reset_start"):
        opened.setdefault(record.data["gen"], record.time)
    for record in trace.events("un.redraw"):
        gen = record.data["gen"]
        finished[gen] = max(finished.get(gen, record.time), record.time)
    return [
        {"gen": gen, "start": start, "end": finished.get(gen, start), "latency": finished.get(gen, start) - start}
        for gen, start in sorted(opened.items())
    ]
