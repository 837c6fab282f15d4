import pytest

from knotlattice.family import family_from_graph, family_from_line, family_from_points
from knotlattice.plumbing import PlumbingGraph, parse_graph
from knotlattice.reduction import ar_line, brieskorn_core_graph

TREFOIL_TEXT = """
# trefoil = regular fiber of Sigma(2,3), marked on the S^3 star
vertex c -1
vertex a -2
vertex b -3
vertex v0 unweighted
edge c a
edge c b
edge v0 c
"""


@pytest.fixture(scope="session")
def trefoil_graph():
    return parse_graph(TREFOIL_TEXT)


@pytest.fixture(scope="session")
def s3_star(trefoil_graph):
    return trefoil_graph.core()


@pytest.fixture(scope="session")
def single_vertex():
    def make(weight, vid="a"):
        return PlumbingGraph((vid,), {vid: weight}, frozenset())
    return make


@pytest.fixture(scope="session")
def e8_graph():
    verts = tuple(str(i) for i in range(1, 9))
    edges = {frozenset((str(i), str(i + 1))) for i in range(1, 7)}
    edges.add(frozenset(("5", "8")))
    return PlumbingGraph(verts, {v: -2 for v in verts}, frozenset(edges))


@pytest.fixture(scope="session")
def trefoil_line():
    return ar_line([2, 3])


@pytest.fixture(scope="session")
def fiber_line():
    return ar_line([2, 3, 7])


@pytest.fixture(scope="session")
def trefoil_line_family(trefoil_line):
    return family_from_line(trefoil_line)


@pytest.fixture(scope="session")
def trefoil_graph_family(trefoil_graph):
    return family_from_graph(trefoil_graph, involutions=True)


@pytest.fixture(scope="session")
def lens_sum_23_points():
    return family_from_points(brieskorn_core_graph([2, 3])[0])


@pytest.fixture(scope="session")
def lens_sum_237_points():
    return family_from_points(brieskorn_core_graph([2, 3, 7])[0])
