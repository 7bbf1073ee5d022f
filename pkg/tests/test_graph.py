import json

import networkx as nx
import pytest
from conftest import to_nx
from hypothesis import given
from strategies import graphs

from digitopo import Graph, GraphError, ball, connected_sum, join, joint_rim, minimal_sphere, rim
from digitopo.generators import complete, cycle, path
from digitopo.graph import cone, disjoint_union, intersection_graph


def test_construction_and_accessors():
    g = Graph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("b", "a")], name="P3")
    assert g.n_vertices == 3
    assert g.n_edges == 2
    assert g.degree("b") == 2
    assert g.has_edge("b", "a") and not g.has_edge("a", "c")
    assert g.neighbors("b") == ("a", "c")
    assert "a" in g and "z" not in g


@pytest.mark.parametrize(
    "vertices, edges",
    [(["a", "a"], []), (["a"], [("a", "a")]), (["a"], [("a", "b")]), ([1, 2], [])],
)
def test_invalid_graphs_rejected(vertices, edges):
    with pytest.raises(GraphError):
        Graph(vertices, edges)


def test_equality_ignores_vertex_order():
    g = Graph(["a", "b"], [("a", "b")])
    h = Graph(["b", "a"], [("b", "a")])
    assert g == h and hash(g) == hash(h)
    assert g.digest() == h.digest()
    assert g != Graph(["a", "c"], [("a", "c")])


@given(graphs())
def test_json_round_trip(g):
    assert Graph.from_json(g.to_json()) == g
    assert Graph.from_dict(json.loads(json.dumps(g.to_dict()))) == g


@given(graphs())
def test_edgelist_round_trip(g):
    assert Graph.from_edgelist(g.to_edgelist()) == g


def test_from_dict_is_strict():
    with pytest.raises(GraphError):
        Graph.from_dict({"vertices": ["a"], "edges": [["a", "b"]]})
    with pytest.raises(GraphError):
        Graph.from_dict({"edges": []})


@given(graphs(max_vertices=10))
def test_components_match_networkx(g):
    ours = sorted(sorted(c) for c in g.components())
    ref = sorted(sorted(c) for c in nx.connected_components(to_nx(g)))
    assert ours == ref
    assert g.is_connected() == (g.n_vertices > 0 and nx.is_connected(to_nx(g)))


def test_rim_ball_joint_rim():
    s = minimal_sphere(2)
    assert rim(s, "s0+").n_vertices == 4
    assert ball(s, "s0+").n_vertices == 5
    assert set(joint_rim(s, ["s0+", "s1+"]).vertices) == {"s2+", "s2-"}
    with pytest.raises(GraphError):
        joint_rim(s, [])


def test_join_and_cone_counts():
    a, b = cycle(4), path(3)
    j = join(a, b)
    assert j.n_vertices == 7
    assert j.n_edges == a.n_edges + b.n_edges + 12
    c = cone(cycle(5), apex="top")
    assert c.degree("top") == 5


def test_disjoint_union_renames_collisions():
    u, ren = disjoint_union(cycle(4), cycle(4))
    assert u.n_vertices == 8 and u.n_edges == 8
    assert len(set(ren.values()) & set(cycle(4).vertices)) == 0
    assert len(u.components()) == 2


def test_connected_sum_glues_along_iso():
    g, h = cycle(4, "a"), cycle(4, "b")
    s = connected_sum(g, h, {"a0": "b0", "a1": "b1"})
    assert s.n_vertices == 6
    with pytest.raises(GraphError):
        connected_sum(g, h, {"a0": "b0", "a1": "b2"})
    with pytest.raises(GraphError):
        connected_sum(g, h, {})


def test_intersection_graph_of_sets():
    g = intersection_graph({"x": {1, 2}, "y": {2, 3}, "z": {4}})
    assert g.edge_set() == frozenset({frozenset({"x", "y"})})


@given(graphs(max_vertices=7))
def test_induced_and_without_agree(g):
    if g.n_vertices == 0:
        return
    v = g.vertices[0]
    assert g.without(v) == g.induced(g.vertices[1:])


def test_complete_graph():
    k = complete(5)
    assert k.n_edges == 10
