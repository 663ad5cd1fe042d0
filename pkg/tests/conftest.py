import random

import networkx as nx
import pytest
from hypothesis import settings, strategies as st

from chromlab.graph import Graph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=10):
    n = draw(st.integers(min_n, max_n))
    density = draw(st.sampled_from([0.1, 0.25, 0.4, 0.6, 0.85]))
    rnd = random.Random(draw(st.integers(0, 2**32 - 1)))
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rnd.random() < density])


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(12345)
