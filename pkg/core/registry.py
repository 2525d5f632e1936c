from typing import Any, Callable, Dict, List, Tuple

from .errors import ScenarioError

_registered: Dict[str, List[Tuple[str, Callable[..., Any]]]] = {}


def _register(kind: str, name: str):
    def decorator(target):
        _registered.setdefault(kind, []).append((name, target))
        return target
    return decorator


def protocol_stack(name: str):
    """Register a factory building the per-node layers of a protocol stack"""
    return _register("stack", name)


def fault_kind(name: str):
    """Register a handler applying one kind of injected fault"""
    return _register("fault", name)


class Registry:
    def __init__(self, kind: str):
        self.kind = kind
        self._entries: Dict[str, Callable[..., Any]] = {}
        self._register_decorated()

    def _register_decorated(self):
        for name, target in _registered.get(self.kind, []):
            self.register(name, target)

    def register(self, name: str, target: Callable[..., Any]): self._entries[name] = target

    def get(self, name: str) -> Callable[..., Any]:
        if name not in self._entries:
            available = ", ".join(sorted(self._entries))
            raise ScenarioError(f"Unknown {self.kind} '{name}'. Available: {available}")
        return self._entries[name]

    def names(self) -> List[str]: return sorted(self._entries)
