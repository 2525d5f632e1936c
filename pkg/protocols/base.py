"""
Shared pieces of the per-node transition functions.

Handlers mutate the state they are given and record what they want done in an
Effects object; the simulator owns delivery, ordering and logging.
"""
import math
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

INF = math.inf
NO_ID = 0
SEQ_MODULUS = 1 << 16


@dataclass
class Effects:
    """Outgoing messages, trace events and cross-layer writes of one transition"""
    outgoing: List[Tuple[int, Any]] = field(default_factory=list)
    events: List[Tuple[str, Dict[str, Any]]] = field(default_factory=list)
    writes: List[Tuple[str, str, str]] = field(default_factory=list)
    enabled: List[str] = field(default_factory=list)
    acted: List[str] = field(default_factory=list)

    def send(self, port: int, message: Any) -> None:
        self.outgoing.append((port, message))

    def note(self, label: str, **payload: Any) -> None:
        self.events.append((label, payload))

    def write(self, owner: str, target: str, variable: str) -> None:
        """A layer overwrote a variable owned by another layer"""
        self.writes.append((owner, target, variable))

    def step(self, layer: str, enabled: bool, acted: bool) -> None:
        """Guard and outcome of one layer's turn in a tick"""
        if enabled:
            self.enabled.append(layer)
        if acted:
            self.acted.append(layer)


def seq_newer(candidate: int, current: int) -> bool:
    """Sequence comparison on the bounded counter ring"""
    delta = (candidate - current) % SEQ_MODULUS
    return 0 < delta < SEQ_MODULUS // 2


def finite(value: float) -> bool:
    return not math.isinf(value)


class ProtocolLayer(ABC):
    """One layer of a node's protocol stack, stepped by the node it lives in"""
    name: str = ""

    @abstractmethod
    def clean_state(self, rng: random.Random) -> Any: pass

    @abstractmethod
    def arbitrary_state(self, rng: random.Random, ports: Dict[int, float]) -> Any: pass

    @abstractmethod
    def snapshot(self, state: Any) -> Dict[str, Any]: pass


@dataclass
class NodeContext:
    """What a node may see of its surroundings: its ports and its own coin"""
    ports: Dict[int, float]
    rng: random.Random

    def port_list(self) -> List[int]:
        return sorted(self.ports)
