"""
Netsim: seeded simulation of message passing over unit-capacity links
"""

from .links import LinkState, LinkTable
from .faults import FaultEvent
from .scheduler import SchedulerPolicy, FairScheduler, AdversarialScheduler, get_scheduler
from .trace import Trace, TraceRecord, CrossWrite, canonical_json, digest
from .scenario import Scenario, load_scenario, scenario_from_dict, default_horizon
from .simulator import NodeHost, Simulator, SimulationResult, SimCounters, run

__all__ = [
    "LinkState", "LinkTable", "FaultEvent",
    "SchedulerPolicy", "FairScheduler", "AdversarialScheduler", "get_scheduler",
    "Trace", "TraceRecord", "CrossWrite", "canonical_json", "digest",
    "Scenario", "load_scenario", "scenario_from_dict", "default_horizon",
    "NodeHost", "Simulator", "SimulationResult", "SimCounters", "run",
]
