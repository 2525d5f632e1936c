"""
Unit-capacity directed links.
"""
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Optional, Tuple

from core.errors import ScenarioError

Direction = Tuple[int, int]


@dataclass
class LinkState:
    """The queue of one direction u -> v: empty or exactly one message"""
    message: Optional[Any] = None
    enqueued_at: Optional[int] = None

    @property
    def occupied(self) -> bool:
        return self.message is not None

    def store(self, message: Any, now: int) -> bool:
        if self.occupied:
            return False
        self.message = message
        self.enqueued_at = now
        return True

    def take(self) -> Any:
        message = self.message
        self.message = None
        self.enqueued_at = None
        return message


class LinkTable:
    """Both directions of every edge, kept in sync with the topology"""

    def __init__(self, edges: List[Tuple[int, int]]):
        self._links: Dict[Direction, LinkState] = {}
        for u, v in edges:
            self.add(u, v)

    def add(self, u: int, v: int) -> None:
        self._links[(u, v)] = LinkState()
        self._links[(v, u)] = LinkState()

    def remove(self, u: int, v: int) -> None:
        self._links.pop((u, v), None)
        self._links.pop((v, u), None)

    def get(self, frm: int, to: int) -> LinkState:
        link = self._links.get((frm, to))
        if link is None:
            raise ScenarioError(f"No link {frm}->{to}: send on a non-edge")
        return link

    def send(self, frm: int, to: int, message: Any, now: int) -> bool:
        return self.get(frm, to).store(message, now)

    def stored(self) -> List[Direction]:
        return [direction for direction, link in sorted(self._links.items()) if link.occupied]

    def clear_around(self, v: int) -> None:
        for (a, b), link in self._links.items():
            if v in (a, b):
                link.take()

    def __iter__(self) -> Iterator[Tuple[Direction, LinkState]]:
        return iter(sorted(self._links.items()))
