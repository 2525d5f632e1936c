import pytest

from graph.generators import complete_graph, cycle_graph, path_graph
from graph.io import write_graph
from graph.model import WeightedGraph


@pytest.fixture
def path3():
    """a - u (1), u - v (2)"""
    return path_graph(3, [1, 2])


@pytest.fixture
def single_edge():
    return WeightedGraph.build(2, [(0, 1, 4)])


@pytest.fixture
def triangle():
    return cycle_graph(3)


@pytest.fixture
def square():
    return cycle_graph(4)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def graph_file(tmp_path):
    def write(graph, name="graph.txt"):
        target = tmp_path / name
        write_graph(graph, str(target))
        return str(target)
    return write
