"""
Center solver: per-edge centers, the absolute center and the MDST
"""

from .solver import (
    CandidatePair, BoundaryList, CenterResult,
    candidate_pairs, prune_and_sort, gamma_star, boundary_eval, upper_boundary_breakpoints,
    absolute_center, edge_center, mdst, edge_skip_bound, skip_lower_bound, pairs_lower_bound,
)
from .oracle import brute_force_center, brute_force_mdst

__all__ = [
    "CandidatePair", "BoundaryList", "CenterResult",
    "candidate_pairs", "prune_and_sort", "gamma_star", "boundary_eval", "upper_boundary_breakpoints",
    "absolute_center", "edge_center", "mdst", "edge_skip_bound", "skip_lower_bound", "pairs_lower_bound",
    "brute_force_center", "brute_force_mdst",
]
