"""
Protocols: unique naming, all-pairs shortest paths and the distributed MDST
"""

from .base import INF, NO_ID, Effects, NodeContext
from .stack import Frame, ProtocolNode, StackSpec, get_stack, stack_names

__all__ = ["INF", "NO_ID", "Effects", "NodeContext", "Frame", "ProtocolNode", "StackSpec", "get_stack", "stack_names"]
