"""
Line-oriented graph files: a header `n m`, then m lines `u v w`; `#` starts a comment.
"""
from pathlib import Path
from typing import List, Tuple

from core.errors import GraphError
from core.logging import get_logger
from .model import WeightedGraph

logger = get_logger("graph.io")


def parse_graph(text: str) -> WeightedGraph:
    rows: List[List[str]] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise GraphError("empty graph file")
    header = rows[0]
    if len(header) != 2:
        raise GraphError(f"header must be 'n m', got {' '.join(header)!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphError(f"header must hold two integers, got {' '.join(header)!r}")
    body = rows[1:]
    if len(body) != m:
        raise GraphError(f"header announces {m} edges, file has {len(body)}")
    edges: List[Tuple[int, int, float]] = []
    for lineno, row in enumerate(body, start=2):
        if len(row) != 3:
            raise GraphError(f"edge line {lineno} must be 'u v w'")
        try:
            edges.append((int(row[0]), int(row[1]), float(row[2])))
        except ValueError:
            raise GraphError(f"edge line {lineno} is not numeric: {' '.join(row)!r}")
    return WeightedGraph.build(n, edges)


def read_graph(path: str) -> WeightedGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise GraphError(f"graph file not found: {path}")
    graph = parse_graph(text)
    logger.debug(f"Loaded graph {path}: n={graph.n} m={graph.m}")
    return graph


def format_weight(w: float) -> str:
    return str(int(w)) if float(w).is_integer() else repr(float(w))


def format_graph(g: WeightedGraph) -> str:
    lines = [f"{g.n} {g.m}"]
    for u, v in g.edges():
        lines.append(f"{u} {v} {format_weight(g.weights[(u, v)])}")
    return "\n".join(lines) + "\n"


def write_graph(g: WeightedGraph, path: str) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(format_graph(g), encoding="utf-8")
    logger.info(f"Saved graph file: {target}")
