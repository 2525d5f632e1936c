"""
Local and global predicates evaluated on logged configurations.

A configuration is the simulator snapshot: the edge list plus one view per node.
Views of stacks without a layer simply lack its keys, and the predicates of a
missing layer hold trivially.
"""
import math
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional, Tuple

from center.solver import absolute_center
from core.config import TOLERANCE
from graph.model import WeightedGraph, edge_key

Config = Dict[str, Any]
EdgeTuple = Tuple[Tuple[int, int, float], ...]

PHASE_STABLE = 3


def config_edges(config: Config) -> List[Tuple[int, int]]:
    return [(u, v) for u, v, _ in config["edges"]]


def config_graph(config: Config) -> WeightedGraph:
    return WeightedGraph(len(config["nodes"]), {edge_key(u, v): float(w) for u, v, w in config["edges"]})


@lru_cache(maxsize=256)
def _oracle(n: int, edges: EdgeTuple) -> float:
    graph = WeightedGraph(n, {edge_key(u, v): w for u, v, w in edges})
    return absolute_center(graph).separation


def oracle_separation(config: Config) -> float:
    """s(gamma*) of the configuration's own graph, from the sequential solver"""
    edges = tuple((u, v, float(w)) for u, v, w in config["edges"])
    return _oracle(len(config["nodes"]), edges)


def _un_local(node: Dict[str, Any]) -> bool:
    if "phase" not in node:
        return True
    ids = node["id_list"]
    return node["phase"] == PHASE_STABLE and len(ids) == len(set(ids))


def eval_lp_un(config: Config, u: int, v: int) -> bool:
    """Both endpoints in phase 3 with duplicate-free identifier lists"""
    nodes = config["nodes"]
    return _un_local(nodes[u]) and _un_local(nodes[v])


def _knows(node: Dict[str, Any], ident: int) -> bool:
    return ident in node["dist"] and not math.isinf(node["dist"][ident])


def eval_lp_apsp(config: Config, u: int, v: int) -> bool:
    """d_u[ID_v] and d_v[ID_u] both finite"""
    nodes = config["nodes"]
    if "dist" not in nodes[u]:
        return True
    return _knows(nodes[u], nodes[v]["id"]) and _knows(nodes[v], nodes[u]["id"])


def eval_theta(config: Config, oracle_sep: float) -> bool:
    """Every node's phi*.upbound equals the true separation of the absolute center"""
    return all(
        "phi_star" not in node or abs(node["phi_star"] - oracle_sep) <= TOLERANCE
        for node in config["nodes"]
    )


def _over_edges(config: Config, local: Callable[[Config, int, int], bool]) -> bool:
    edges = config_edges(config)
    if not edges:
        # a lone node is its own neighborhood
        return local(config, 0, 0)
    return all(local(config, u, v) for u, v in edges)


def psi(config: Config) -> bool:
    return _over_edges(config, eval_lp_un)


def psi_prime(config: Config) -> bool:
    return _over_edges(config, eval_lp_apsp)


def theta(config: Config) -> bool:
    return eval_theta(config, oracle_separation(config))


def ids_unique(config: Config) -> bool:
    ids = [node["id"] for node in config["nodes"]]
    return len(ids) == len(set(ids))


PREDICATES: Dict[str, Callable[[Config], bool]] = {
    "psi": psi,
    "psi_prime": psi_prime,
    "theta": theta,
}

LOCAL_PREDICATES: Dict[str, Callable[[Config, int, int], bool]] = {
    "psi": eval_lp_un,
    "psi_prime": eval_lp_apsp,
}


def predicates_for(layers: List[str]) -> List[str]:
    """Predicate names in layering order for a stack with the given layers"""
    names = []
    if "un" in layers:
        names.append("psi")
    if "apsp" in layers:
        names.append("psi_prime")
    if "mdst" in layers:
        names.append("theta")
    return names


def global_predicate(name: str) -> Optional[Callable[[Config], bool]]:
    """What the conjunction of a local predicate is meant to guarantee network-wide"""
    if name == "psi":
        return lambda config: ids_unique(config) and all(
            "n_seen" not in node or node["n_seen"] == len(config["nodes"]) for node in config["nodes"]
        )
    if name == "psi_prime":
        return lambda config: all(node.get("active", True) for node in config["nodes"])
    return None
