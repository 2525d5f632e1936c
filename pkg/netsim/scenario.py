"""
Scenario files: which graph, which stack, how it starts and what goes wrong when.
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from core.config import SimulationConfig, load_json_file
from core.errors import GraphError, ScenarioError
from graph.io import read_graph
from graph.model import WeightedGraph
from graph.paths import all_pairs_distances, hop_diameter
from protocols.stack import stack_names
from .faults import FaultEvent
from .scheduler import SCHEDULERS


@dataclass
class Scenario:
    graph: WeightedGraph
    horizon: int
    protocol: str = "composed"
    init_seed: Optional[int] = None
    scheduler: str = "fair"
    seed: int = 0
    faults: List[FaultEvent] = field(default_factory=list)
    graph_path: Optional[str] = None

    def __post_init__(self):
        if self.horizon <= 0:
            raise ScenarioError(f"Horizon must be positive, got {self.horizon}")
        if self.protocol not in stack_names():
            raise ScenarioError(f"Unknown protocol '{self.protocol}'. Available: {', '.join(stack_names())}")
        if self.scheduler not in SCHEDULERS:
            raise ScenarioError(f"Unknown scheduler '{self.scheduler}'. Available: {', '.join(sorted(SCHEDULERS))}")
        self.faults = sorted(self.faults, key=lambda event: event.at)

    @property
    def init(self) -> Any:
        return "clean" if self.init_seed is None else {"arbitrary": self.init_seed}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "graph": self.graph_path,
            "protocol": self.protocol,
            "init": self.init,
            "scheduler": self.scheduler,
            "seed": self.seed,
            "horizon": self.horizon,
            "faults": [event.to_dict() for event in self.faults],
        }


def default_horizon(graph: WeightedGraph, config: SimulationConfig) -> int:
    return config.horizon_for(graph.n, hop_diameter(all_pairs_distances(graph)))


def parse_init(value: Any) -> Optional[int]:
    if value == "clean" or value is None:
        return None
    if isinstance(value, dict) and set(value) == {"arbitrary"}:
        try:
            return int(value["arbitrary"])
        except (TypeError, ValueError) as exc:
            raise ScenarioError(f"Bad arbitrary seed {value['arbitrary']!r}") from exc
    raise ScenarioError(f"init must be \"clean\" or {{\"arbitrary\": seed}}, got {value!r}")


def scenario_from_dict(data: Dict[str, Any], base_dir: Optional[Path] = None,
                       graph: Optional[WeightedGraph] = None,
                       config: Optional[SimulationConfig] = None) -> Scenario:
    """Build a Scenario; an explicit `graph` wins over the file named in the data"""
    config = config or SimulationConfig.from_env()
    graph_path = data.get("graph")
    if graph is None:
        if not graph_path:
            raise ScenarioError("Scenario names no graph")
        path = Path(graph_path)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        try:
            graph = read_graph(str(path))
        except GraphError as exc:
            raise ScenarioError(f"Scenario graph {path}: {exc}") from exc
        graph_path = str(path)
    faults = data.get("faults", [])
    if not isinstance(faults, list):
        raise ScenarioError("faults must be a list")
    try:
        horizon = int(data["horizon"]) if data.get("horizon") is not None else default_horizon(graph, config)
        seed = int(data.get("seed", config.seed))
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"Bad scenario field: {exc}") from exc
    return Scenario(
        graph=graph,
        horizon=horizon,
        protocol=data.get("protocol", "composed"),
        init_seed=parse_init(data.get("init", "clean")),
        scheduler=data.get("scheduler", config.scheduler),
        seed=seed,
        faults=[FaultEvent.from_dict(entry) for entry in faults],
        graph_path=graph_path,
    )


def load_scenario(path: str, graph: Optional[WeightedGraph] = None,
                  config: Optional[SimulationConfig] = None) -> Scenario:
    data = load_json_file(path)
    return scenario_from_dict(data, Path(path).parent, graph, config)
