import networkx as nx
import pytest
from conftest import to_nx
from hypothesis import given
from oracles import betti_dense, euler_dense
from strategies import graphs

from digitopo import betti_mod2, cliques, euler_characteristic, invariants_report, minimal_sphere
from digitopo.generators import complete, cycle, torus16
from digitopo.invariants import gf2_rank, is_trivial


@given(graphs(max_vertices=9))
def test_betti_matches_dense_numpy_oracle(g):
    assert list(betti_mod2(g)) == betti_dense(to_nx(g))


@given(graphs(max_vertices=10))
def test_euler_matches_clique_count_oracle(g):
    assert euler_characteristic(g) == euler_dense(to_nx(g))


@given(graphs(max_vertices=9))
def test_euler_poincare(g):
    b = betti_mod2(g)
    assert euler_characteristic(g) == sum((-1) ** k * x for k, x in enumerate(b))


@given(graphs(max_vertices=8))
def test_clique_counts_match_networkx(g):
    counts = cliques(g).counts
    ref = {}
    for c in nx.enumerate_all_cliques(to_nx(g)):
        ref[len(c)] = ref.get(len(c), 0) + 1
    assert list(counts) == [ref[k] for k in sorted(ref)]


@pytest.mark.parametrize(
    "g, chi, betti",
    [
        (complete(1), 1, (1,)),
        (cycle(4), 0, (1, 1)),
        (cycle(7), 0, (1, 1)),
        (minimal_sphere(1), 0, (1, 1)),
        (minimal_sphere(2), 2, (1, 0, 1)),
        (minimal_sphere(3), 0, (1, 0, 0, 1)),
        (torus16(), 0, (1, 2, 1)),
        (complete(5), 1, (1,)),
    ],
)
def test_known_values(g, chi, betti):
    assert euler_characteristic(g) == chi
    assert tuple(betti_mod2(g)) == betti


def test_max_dim_pads_and_flags_truncation():
    b = betti_mod2(cycle(5), max_dim=3)
    assert tuple(b) == (1, 1, 0, 0) and not b.truncated
    b = betti_mod2(minimal_sphere(3), max_dim=1)
    assert tuple(b) == (1, 0) and b.truncated


def test_gf2_rank_small_cases():
    assert gf2_rank([]) == 0
    assert gf2_rank([0b11, 0b101, 0b110]) == 2
    assert gf2_rank([1, 2, 4, 7]) == 3


def test_report_and_triviality():
    rep = invariants_report(torus16())
    assert rep == {"chi": 0, "betti": [1, 2, 1], "clique_counts": [16, 48, 32]}
    assert is_trivial((1,)) and is_trivial((1, 0, 0)) and not is_trivial((1, 1))
