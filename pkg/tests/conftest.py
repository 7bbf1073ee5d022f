import os
import sys

import networkx as nx
import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def to_graph(G: nx.Graph, name: str = ""):
    from digitopo import Graph

    return Graph([str(v) for v in G.nodes], [(str(a), str(b)) for a, b in G.edges], name=name)


def to_nx(g) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(g.vertices)
    G.add_edges_from(g.edges)
    return G


@pytest.fixture
def octahedron():
    from digitopo import minimal_sphere

    return minimal_sphere(2)


@pytest.fixture
def t16():
    from digitopo.generators import torus16

    return torus16()


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
