from itertools import combinations, permutations

import pytest
from hypothesis import given

from chromlab.graph import Graph, SizeError, complete_graph, cycle_graph, girth, petersen_graph, path_graph
from chromlab.subgraphs import (
    contains_copy,
    count_copies_at_vertex,
    enumerate_copies,
    find_path_of_length,
    iter_cycles,
)
from conftest import graphs


def brute_copies(host: Graph, pattern: Graph) -> set:
    out = set()
    for vs in combinations(range(host.n), pattern.n):
        for perm in permutations(vs):
            es = [tuple(sorted((perm[u], perm[v]))) for u, v in pattern.edges]
            if all(host.has_edge(*e) for e in es):
                out.add(tuple(sorted(es)))
    return out


def test_copy_examples():
    assert contains_copy(complete_graph(4), complete_graph(3))[0]
    assert not contains_copy(cycle_graph(5), complete_graph(3))[0]
    found, phi = contains_copy(petersen_graph(), cycle_graph(5))
    assert found and all(petersen_graph().has_edge(phi[u], phi[v]) for u, v in cycle_graph(5).edges)
    assert len(enumerate_copies(complete_graph(4), complete_graph(3))) == 4
    assert enumerate_copies(cycle_graph(6), complete_graph(3)) == []
    assert len(enumerate_copies(complete_graph(4), cycle_graph(4))) == 3
    assert len(enumerate_copies(petersen_graph(), cycle_graph(5))) == 12


def test_vertex_counts():
    assert count_copies_at_vertex(complete_graph(4), complete_graph(3), 2) == 3
    assert count_copies_at_vertex(cycle_graph(5), cycle_graph(5), 0) == 1
    assert count_copies_at_vertex(complete_graph(5), complete_graph(3), 4) == 6


def test_copy_limit():
    with pytest.raises(SizeError):
        enumerate_copies(complete_graph(7), complete_graph(3), limit=5)


@given(graphs(max_n=7), graphs(min_n=2, max_n=4))
def test_enumeration_matches_brute_force(host, pattern):
    copies = enumerate_copies(host, pattern)
    assert set(copies) == brute_copies(host, pattern)
    assert copies == sorted(copies)
    assert contains_copy(host, pattern)[0] == bool(copies)


@given(graphs(max_n=8), graphs(min_n=2, max_n=4))
def test_vertex_count_sum(host, pattern):
    copies = enumerate_copies(host, pattern)
    total = sum(count_copies_at_vertex(host, pattern, v) for v in range(host.n))
    assert total == pattern.n * len(copies)


@given(graphs(max_n=12))
def test_girth_from_cycle_copies(g):
    lengths = [ell for ell in range(3, g.n + 1) if contains_copy(g, cycle_graph(ell))[0]]
    assert girth(g) == (min(lengths) if lengths else float("inf"))


@given(graphs(max_n=8))
def test_cycle_enumeration_counts(g):
    for ell in range(3, g.n + 1):
        listed = list(iter_cycles(g, ell, min_len=ell))
        assert len(listed) == len(set(listed)) == len(brute_copies(g, cycle_graph(ell)))


def test_path_search():
    adj = path_graph(5).adj
    assert find_path_of_length(adj, 0, 4, 4) == [0, 1, 2, 3, 4]
    assert find_path_of_length(adj, 0, 4, 3) is None
    p = find_path_of_length(petersen_graph().adj, 0, 1, 4)
    assert p is not None and len(set(p)) == 5 and p[0] == 0 and p[-1] == 1
