"""
Error types shared by the solver, the simulator and the CLI
"""


class GraphError(ValueError):
    """Malformed, disconnected or otherwise invalid graph input"""


class ScenarioError(ValueError):
    """Invalid scenario description or fault event"""


class EnumerationLimitError(ValueError):
    """Brute-force oracle called on an instance above its enumeration guard"""
