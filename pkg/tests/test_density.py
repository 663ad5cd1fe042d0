import random
from fractions import Fraction

import pytest
from hypothesis import given

from chromlab.classify import build_k4_gadget_graph
from chromlab.density import (
    densest_balanced_subgraph,
    format_rational,
    is_two_balanced,
    ratio,
    turan_density,
    two_density,
    two_density_bruteforce,
    two_density_flow,
)
from chromlab.graph import (
    DomainError,
    Graph,
    SizeError,
    complete_graph,
    cycle_graph,
    disjoint_union,
    path_graph,
    petersen_graph,
)
from conftest import graphs


def test_two_density_examples():
    assert two_density(complete_graph(3)) == 2
    assert two_density(cycle_graph(5)) == Fraction(4, 3)
    assert two_density(cycle_graph(7)) == Fraction(6, 5)
    assert two_density_bruteforce(complete_graph(4)) == Fraction(5, 2)
    assert two_density_bruteforce(path_graph(4)) == 1
    assert two_density_bruteforce(cycle_graph(5)) == Fraction(4, 3)


def test_domain_and_size_errors():
    with pytest.raises(DomainError):
        two_density(complete_graph(2))
    with pytest.raises(DomainError):
        two_density_bruteforce(Graph(2))
    with pytest.raises(SizeError):
        two_density_bruteforce(cycle_graph(17))
    with pytest.raises(DomainError):
        turan_density(Graph(4))


def test_turan_examples():
    assert turan_density(complete_graph(3)) == Fraction(1, 2)
    assert turan_density(complete_graph(5)) == Fraction(3, 4)
    assert turan_density(cycle_graph(5)) == Fraction(1, 2)


def test_balanced_examples():
    assert is_two_balanced(cycle_graph(5))
    assert is_two_balanced(complete_graph(4))
    assert not is_two_balanced(disjoint_union(complete_graph(4), complete_graph(3)))


def test_densest_examples():
    f, verts = densest_balanced_subgraph(complete_graph(4))
    assert verts == [0, 1, 2, 3] and f.m == 6
    c5_pendant = Graph(6, list(cycle_graph(5).edges) + [(0, 5)])
    assert densest_balanced_subgraph(c5_pendant)[1] == [0, 1, 2, 3, 4]
    assert densest_balanced_subgraph(complete_graph(3))[1] == [0, 1, 2]


def test_random_oracle_equivalence():
    rnd = random.Random(2024)
    for _ in range(500):
        n = rnd.randint(3, 12)
        p = rnd.choice([0.15, 0.3, 0.5, 0.7, 0.9])
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rnd.random() < p])
        brute = two_density_bruteforce(g)
        assert two_density(g) == brute
        assert two_density_flow(g) == brute


def test_flow_on_larger_graphs():
    assert two_density(cycle_graph(21)) == Fraction(20, 19)
    assert two_density(disjoint_union(complete_graph(5), cycle_graph(14))) == Fraction(3)
    assert two_density(petersen_graph()) == two_density_bruteforce(petersen_graph())
    k4g = build_k4_gadget_graph()
    assert two_density(k4g) == Fraction(113, 62)


@given(graphs(min_n=3, max_n=10))
def test_monotone_under_subgraphs(g):
    sub = g.induced_subgraph(range(3, g.n)) if g.n >= 6 else g.remove_edges(g.edges[:1])
    if sub.n >= 3:
        assert two_density(sub) <= two_density(g)


@given(graphs(min_n=3, max_n=10))
def test_densest_subgraph_properties(g):
    f, verts = densest_balanced_subgraph(g)
    m2 = two_density(g)
    assert ratio(f.m, f.n) == m2 or max(g.degrees()) <= 1
    assert is_two_balanced(f)


@given(graphs(min_n=3, max_n=10))
def test_forest_versus_cycle(g):
    if g.is_forest():
        assert two_density(g) <= 1
    elif any(len(c) >= 3 and g.induced_subgraph(c).m >= len(c) for c in g.components()):
        assert two_density(g) > 1


def test_rational_format():
    assert format_rational(Fraction(4, 3)) == "4/3"
    assert format_rational(Fraction(2)) == "2"
