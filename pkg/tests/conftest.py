import pytest

from hrgraph.boundary import BoundaryAlgebra
from hrgraph.kgraph import validate_kgraph
from hrgraph.library import (
    bouquet,
    cube_graph,
    edge_graph,
    grid,
    one_vertex_skeleton,
    square_graph,
    twisted_graph,
)
from hrgraph.product import ProductSystem


@pytest.fixture(scope="session")
def square():
    return square_graph()


@pytest.fixture(scope="session")
def twisted():
    return twisted_graph()


@pytest.fixture(scope="session")
def edge():
    return edge_graph()


@pytest.fixture(scope="session")
def cube():
    return cube_graph()


@pytest.fixture(scope="session")
def grid11():
    return grid((1, 1))


@pytest.fixture(scope="session")
def grid22():
    return grid((2, 2))


@pytest.fixture(scope="session")
def two_loops():
    """One vertex, two color-1 loops a and b."""
    return bouquet("a", "b")


@pytest.fixture(scope="session")
def fg_graph():
    """A 2-graph on one vertex with no color-1 edges and color-2 loops f, g."""
    return validate_kgraph(one_vertex_skeleton([[], ["f", "g"]]))


def algebra(g):
    return BoundaryAlgebra(g)


def product(g):
    return ProductSystem(BoundaryAlgebra(g))


# one line per acceptance criterion, echoed after the run
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
