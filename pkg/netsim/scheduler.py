import random
from abc import ABC, abstractmethod
from typing import Dict, List, Tuple, Type, Union

from core.errors import ScenarioError
from .links import Direction

Action = Tuple[str, Union[int, Direction]]


class SchedulerPolicy(ABC):
    """Orders the actions of one time unit"""
    name: str = ""

    @abstractmethod
    def order(self, stored: List[Direction], nodes: List[int], rng: random.Random) -> List[Action]: pass


class FairScheduler(SchedulerPolicy):
    """Deliver everything stored at the start of the unit, then tick every node"""
    name = "fair"

    def order(self, stored: List[Direction], nodes: List[int], rng: random.Random) -> List[Action]:
        deliveries = list(stored)
        ticks = list(nodes)
        rng.shuffle(deliveries)
        rng.shuffle(ticks)
        return [("deliver", d) for d in deliveries] + [("tick", v) for v in ticks]


class AdversarialScheduler(SchedulerPolicy):
    """Tick first and deliver last, so nothing sent in a unit is consumed before the next one"""
    name = "adversarial"

    def order(self, stored: List[Direction], nodes: List[int], rng: random.Random) -> List[Action]:
        deliveries = list(stored)
        ticks = list(nodes)
        rng.shuffle(ticks)
        rng.shuffle(deliveries)
        return [("tick", v) for v in ticks] + [("deliver", d) for d in deliveries]


SCHEDULERS: Dict[str, Type[SchedulerPolicy]] = {
    FairScheduler.name: FairScheduler,
    AdversarialScheduler.name: AdversarialScheduler,
}


def get_scheduler(name: str) -> SchedulerPolicy:
    if name not in SCHEDULERS:
        available = ", ".join(sorted(SCHEDULERS))
        raise ScenarioError(f"Unknown scheduler '{name}'. Available: {available}")
    return SCHEDULERS[name]()
