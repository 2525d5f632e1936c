from dataclasses import dataclass
from typing import Optional


@dataclass
class SolveArgs:
    graph_path: str
    skip_bound: bool = True
    verbose: bool = False


@dataclass
class SimulateArgs:
    scenario_path: Optional[str] = None
    graph_path: Optional[str] = None
    preset: Optional[str] = None
    seed: Optional[int] = None
    horizon: Optional[int] = None
    scheduler: Optional[str] = None
    out_path: Optional[str] = None
    trace_path: Optional[str] = None
    dump_tables: bool = False
    verbose: bool = False


@dataclass
class GenArgs:
    family: str
    n: int
    out_path: str
    m: Optional[int] = None
    wmax: int = 1
    weights: Optional[str] = None
    seed: int = 0


@dataclass
class CheckArgs:
    report_path: str
    verbose: bool = False
