"""
Execution trace: every logged action plus one configuration digest per time unit.
"""
import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Tuple

from core.logging import get_logger

logger = get_logger("trace")


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)


def digest(payload: Any) -> str:
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class TraceRecord:
    time: int
    actor: str
    label: str
    digest: str
    data: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class CrossWrite:
    time: int
    vertex: int
    owner: str
    target: str
    variable: str


@dataclass
class Trace:
    records: List[TraceRecord] = field(default_factory=list)
    configs: List[Tuple[int, str]] = field(default_factory=list)
    snapshots: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    fault_times: List[int] = field(default_factory=list)
    writes: List[CrossWrite] = field(default_factory=list)
    tables: List[Dict[str, Any]] = field(default_factory=list)

    def log(self, time: int, actor: str, label: str, payload: Any = None,
            data: Optional[Dict[str, Any]] = None) -> None:
        self.records.append(TraceRecord(time, actor, label, digest(payload)[:16], data or {}))

    def record_config(self, time: int, snapshot: Dict[str, Any]) -> str:
        key = digest(snapshot)
        self.snapshots.setdefault(key, snapshot)
        self.configs.append((time, key))
        return key

    @property
    def last_fault_time(self) -> int:
        return max(self.fault_times, default=0)

    @property
    def final_digest(self) -> Optional[str]:
        return self.configs[-1][1] if self.configs else None

    def configurations(self) -> Iterator[Tuple[int, Dict[str, Any]]]:
        for time, key in self.configs:
            yield time, self.snapshots[key]

    def events(self, label: str) -> List[TraceRecord]:
        return [record for record in self.records if record.label == label]

    def write_jsonl(self, path: str) -> None:
        """One JSON object per logged action, then the per-unit configuration digests"""
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        with target.open("w", encoding="utf-8") as handle:
            for record in self.records:
                handle.write(canonical_json({"type": "action", **asdict(record)}) + "\n")
            for time, key in self.configs:
                handle.write(canonical_json({"type": "config", "time": time, "digest": key}) + "\n")
        logger.info(f"Saved trace with {len(self.records)} records to {path}")
