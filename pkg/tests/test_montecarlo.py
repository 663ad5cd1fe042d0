import math
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from chromlab.graph import DomainError, Graph, SizeError, complete_graph, cycle_graph, petersen_graph
from chromlab.montecarlo import (
    ToySpace,
    edge_count_histogram,
    edge_msets_count_itertools,
    exact_edge_msets_count,
    failure_ratio,
    event_inequality_exact,
    event_inequality_tightness,
    random_toy_space,
    ratio_trend_ok,
    sweep_csv,
    variance_ratio_sweep,
    vertex_copy_tail,
)
from conftest import graphs


def uniform(n):
    return [Fraction(1, n)] * n


def test_event_inequality_examples():
    whole = event_inequality_exact(ToySpace(uniform(4), [{0, 1}], {0, 1, 2, 3}))
    assert whole.target_probability == 1 and whole.holds
    single = event_inequality_exact(ToySpace(uniform(2), [{0}], {0}))
    assert single.variance_ratio == 1 and single.min_conditional == 1
    assert single.delta == 1 and single.holds


def test_event_inequality_engineered_space():
    events = [{(10 * j + i) % 1000 for i in range(100)} for j in range(100)]
    target = set(range(1000)) - set(range(0, 1000, 100))
    b = event_inequality_exact(ToySpace(uniform(1000), events, target))
    assert b.min_conditional == Fraction(99, 100)
    assert b.target_probability == Fraction(99, 100)
    assert b.target_probability >= 1 - 6 * b.delta


def test_event_inequality_float_oracle():
    rng = np.random.default_rng(3)
    for _ in range(50):
        space = random_toy_space(rng)
        b = event_inequality_exact(space)
        q = np.array([float(x) for x in space.probabilities])
        x = np.zeros(len(q))
        for ev in space.events:
            x[list(ev)] += 1
        mean = (q * x).sum()
        var = (q * x * x).sum() - mean**2
        assert math.isclose(float(b.variance_ratio), var / mean**2, rel_tol=1e-9, abs_tol=1e-12)
        pf = q[list(space.target)].sum() if space.target else 0.0
        assert math.isclose(float(b.target_probability), pf, abs_tol=1e-12)


def test_event_inequality_errors():
    with pytest.raises(DomainError):
        ToySpace([Fraction(1, 2), Fraction(1, 3)], [{0}], {0})
    with pytest.raises(DomainError):
        event_inequality_exact(ToySpace([Fraction(1), Fraction(0)], [{1}], {0}))
    with pytest.raises(DomainError):
        ToySpace(uniform(2), [{2}], {0})
    with pytest.raises(DomainError):
        event_inequality_tightness(0, 0)


@given(st.integers(0, 2**32 - 1))
def test_event_inequality_holds_on_random_spaces(seed):
    b = event_inequality_exact(random_toy_space(np.random.default_rng(seed)))
    assert b.holds
    assert failure_ratio(b) <= 6


def test_tightness_trivial_space():
    assert failure_ratio(event_inequality_exact(ToySpace([Fraction(1)], [{0}], {0}))) == 0


@pytest.mark.slow
def test_tightness_regression_snapshot():
    report = event_inequality_tightness(42, 10**4)
    assert report.violations == 0
    assert report.worst_ratio == Fraction(1311, 790)
    assert report.worst_ratio <= 6


def test_edge_count_examples():
    assert exact_edge_msets_count(complete_graph(4), 3, 3) == 4
    assert exact_edge_msets_count(cycle_graph(5), 2, 1) == 5
    pet = petersen_graph()
    assert exact_edge_msets_count(pet, 4, 3) == edge_msets_count_itertools(pet, 4, 3) == 70
    with pytest.raises(SizeError):
        exact_edge_msets_count(complete_graph(60), 12, 3)


@given(graphs(min_n=1, max_n=10), st.data())
def test_edge_histogram_matches_itertools(g, data):
    m = data.draw(st.integers(0, g.n))
    hist = edge_count_histogram(g, m)
    assert sum(hist) == math.comb(g.n, m)
    for s in range(len(hist)):
        assert hist[s] == edge_msets_count_itertools(g, m, s)


def test_variance_sweep_p_one_is_deterministic():
    rows = variance_ratio_sweep([8, 10], 3, 1, 3, 5, 0)
    assert all(r.variance == 0 and r.ratio == 0 for r in rows)
    assert rows[0].mean == math.comb(8, 3)


def test_variance_sweep_errors():
    with pytest.raises(DomainError):
        variance_ratio_sweep([16], 1, 1, 4, 1, 9)
    with pytest.raises(SizeError):
        variance_ratio_sweep([200], 1, 1, 20, 2, 9)


def test_variance_sweep_trend_and_reproducible():
    rows = variance_ratio_sweep([16, 32], 1, 1, 4, 100, 9)
    assert ratio_trend_ok(rows)
    assert rows == variance_ratio_sweep([16, 32], 1, 1, 4, 100, 9)
    text = sweep_csv(rows)
    assert text.splitlines()[0] == "n,m,p,trials,mean,variance,ratio,stderr"
    assert len(text.splitlines()) == 3


def test_copy_tail_examples():
    zero = vertex_copy_tail(60, 0, complete_graph(3), 5, 1)
    assert zero.estimate == 0 and zero.passed
    with pytest.raises(SizeError):
        vertex_copy_tail(60, 0.1, complete_graph(6), 5, 1)
    a = vertex_copy_tail(80, 0.1, complete_graph(3), 30, 5)
    b = vertex_copy_tail(80, 0.1, complete_graph(3), 30, 5)
    assert a == b


def test_copy_tail_stderr_formula():
    r = vertex_copy_tail(80, 0.15, complete_graph(3), 40, 2)
    p = r.estimate
    assert math.isclose(r.stderr, math.sqrt(p * (1 - p) * 40 / 39 / 40), abs_tol=1e-12)
