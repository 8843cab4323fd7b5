import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bidigraph.core import MINUS, PLUS, BidirectedGraph, build_graph
from bidigraph.fixtures import corpus
from bidigraph.oracle import satisfies, vertex_names

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("BIDI_EXAMPLES", "60")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("default")

signs = st.sampled_from([PLUS, MINUS])


@st.composite
def bidirected_graphs(draw, min_n=2, max_n=6, max_m=9, constraint=None) -> BidirectedGraph:
    """Small rooted graphs on r, a, b, ...; optionally filtered to a constraint."""
    n = draw(st.integers(min_n, max_n))
    names = vertex_names(n)
    m = draw(st.integers(0, max_m))
    edges = []
    for i in range(m):
        u = draw(st.sampled_from(names))
        v = draw(st.sampled_from([w for w in names if w != u]))
        edges.append((f"e{i + 1}", u, v, draw(signs), draw(signs)))
    B = build_graph(names, edges, "r")
    if constraint is not None:
        from hypothesis import assume

        assume(satisfies(B, constraint))
    return B


@pytest.fixture(scope="session")
def fixture_corpus():
    return corpus()


@pytest.fixture
def F3(fixture_corpus):
    return fixture_corpus["F3"].graph
