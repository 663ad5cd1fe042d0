import networkx as nx
import pytest
from hypothesis import given

from chromlab.classify import build_gadget
from chromlab.graph import DomainError, Graph, complete_bipartite, complete_graph, cycle_graph, petersen_graph
from chromlab.solvers import (
    chromatic_number,
    count_colorings,
    dsatur_coloring,
    is_k_colorable,
    max_clique,
    max_independent_set,
    odd_cycle,
)
from conftest import graphs, to_nx


def brute_chromatic(g: Graph) -> int:
    if g.m == 0:
        return 1
    return next(k for k in range(1, g.n + 1) if count_colorings(g, k) > 0)


def test_chromatic_examples():
    assert chromatic_number(cycle_graph(5)).value == 3
    assert chromatic_number(complete_graph(4)).value == 4
    assert chromatic_number(build_gadget()[0]).value == 3
    assert chromatic_number(petersen_graph()).value == 3
    with pytest.raises(DomainError):
        chromatic_number(Graph(0))


@pytest.mark.parametrize("k", range(1, 7))
def test_odd_cycles(k):
    assert chromatic_number(cycle_graph(2 * k + 1)).value == 3


def test_budget_gives_bounds():
    res = chromatic_number(petersen_graph(), node_budget=0)
    assert res.lower <= 3 <= res.upper


@given(graphs(min_n=1, max_n=9))
def test_chromatic_matches_count_oracle(g):
    res = chromatic_number(g)
    assert res.value == brute_chromatic(g)
    assert g.is_proper_coloring(res.coloring)
    assert max(res.coloring) + 1 == res.value


@given(graphs(min_n=1, max_n=12))
def test_weak_duality_and_alpha_oracle(g):
    mis = max_independent_set(g)
    assert mis.exact and g.is_independent(mis.vertices)
    alpha = max(len(c) for c in nx.find_cliques(nx.complement(to_nx(g))))
    assert mis.size == alpha
    assert chromatic_number(g).value * mis.size >= g.n


@given(graphs(min_n=1, max_n=12))
def test_clique_matches_networkx(g):
    assert len(max_clique(g)) == max(len(c) for c in nx.find_cliques(to_nx(g)))


def test_independence_examples():
    assert max_independent_set(cycle_graph(5)).size == 2
    assert max_independent_set(complete_bipartite(3, 3)).size == 3
    assert max_independent_set(Graph(7)).size == 7


@given(graphs(min_n=1, max_n=12))
def test_odd_cycle_witness(g):
    cyc = odd_cycle(g)
    assert (cyc is None) == nx.is_bipartite(to_nx(g))
    if cyc:
        assert len(cyc) % 2 == 1 and len(set(cyc)) == len(cyc)
        assert all(g.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))


@given(graphs(min_n=1, max_n=10))
def test_dsatur_is_proper(g):
    assert g.is_proper_coloring(dsatur_coloring(g))


def test_is_k_colorable_small():
    assert is_k_colorable(complete_graph(4), 3) is False
    assert is_k_colorable(cycle_graph(7), 3) is True
