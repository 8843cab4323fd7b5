import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bidigraph.core import MINUS, PLUS, build_graph
from bidigraph.errors import NotPerfectMatching, SameNode
from bidigraph.matching import (
    UGraph,
    alternating_path_exists,
    augmenting_path,
    build_trail_gadget,
    from_matched_graph,
    is_matching,
    is_perfect,
    max_matching,
    to_matched_graph,
    ugraph,
)
from bidigraph.oracle import bf_alternating_path, bf_max_matching

from conftest import bidirected_graphs


def same_graph(A, B):
    return set(A.vertices) == set(B.vertices) and set(A.edges) == set(B.edges) and A.root == B.root


def petersen() -> UGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return ugraph([str(i) for i in range(10)], [(str(a), str(b)) for a, b in outer + spokes + inner])


def test_empty_graph():
    assert max_matching(UGraph((), ())) == frozenset()


def test_triangle():
    G = ugraph("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    M = max_matching(G)
    assert len(M) == 1 and is_matching(G, M)


def test_petersen_is_perfectly_matchable():
    G = petersen()
    M = max_matching(G)
    assert len(M) == 5 == bf_max_matching(G)
    assert is_perfect(G, M)


def random_ugraph(rng, n, p):
    pairs = [(str(a), str(b)) for a, b in itertools.combinations(range(n), 2) if rng.random() < p]
    return ugraph([str(i) for i in range(n)], pairs)


@given(st.integers(0, 10**6), st.integers(1, 10), st.floats(0.1, 0.7))
def test_blossom_size_matches_brute_force(seed, n, p):
    G = random_ugraph(random.Random(seed), n, p)
    M = max_matching(G)
    assert is_matching(G, M)
    assert len(M) == bf_max_matching(G)


def test_augmenting_path_recovers_a_dropped_edge():
    G = petersen()
    M = set(max_matching(G))
    dropped = G.edge(sorted(M)[0])
    M.discard(dropped.id)
    path = augmenting_path(G, M, dropped.a)
    assert path is not None and path[0] == dropped.a and path[-1] == dropped.b
    assert len(path) % 2 == 0


def test_f0_matched_graph(fixture_corpus):
    MG = to_matched_graph(fixture_corpus["F0"].graph)
    assert set(MG.graph.nodes) == {("r", PLUS), ("r", MINUS), ("v", PLUS), ("v", MINUS)}
    assert len(MG.matching) == 2 and is_perfect(MG.graph, MG.matching)
    free = [e for e in MG.graph.edges if e.id not in MG.matching]
    assert len(free) == 1 and {free[0].a, free[0].b} == {("r", PLUS), ("v", PLUS)}


def test_f3_matched_graph(F3):
    MG = to_matched_graph(F3)
    assert len(MG.graph.nodes) == 6 and len(MG.matching) == 3
    g, h = MG.graph.edge("e:g"), MG.graph.edge("e:h")
    assert {g.a, g.b} == {("c", MINUS), ("w", PLUS)}
    assert {h.a, h.b} == {("c", MINUS), ("w", MINUS)}
    assert MG.edge_origin["e:g"] == "g"


def test_round_trip_on_fixtures(fixture_corpus):
    for fx in fixture_corpus.fixtures:
        B = fx.graph
        assert same_graph(from_matched_graph(to_matched_graph(B)), B), fx.name


def test_parallel_identical_edges_are_subdivided():
    B = build_graph([], [("p", "r", "v", PLUS, MINUS), ("q", "r", "v", PLUS, MINUS)], "r")
    MG = to_matched_graph(B)
    assert len(MG.subdivisions) == 1
    assert is_perfect(MG.graph, MG.matching)
    assert same_graph(from_matched_graph(MG), B)


def test_single_matching_edge_contracts_to_isolated_vertex():
    G = ugraph(["x", "y"], [("m", "x", "y")])
    B = from_matched_graph(G, {"m"})
    assert len(B.vertices) == 1 and not B.edges


def test_four_cycle():
    G = ugraph("abcd", [("ab", "a", "b"), ("bc", "b", "c"), ("cd", "c", "d"), ("da", "d", "a")])
    B = from_matched_graph(G, {"ab", "cd"})
    assert len(B.vertices) == 2 and len(B.edges) == 2
    # a,c are the minus ends, b,d the plus ends
    patterns = sorted((e.sign_at("a"), e.sign_at("c")) for e in B.edges)
    assert patterns == sorted([(PLUS, MINUS), (MINUS, PLUS)])
    back = to_matched_graph(B)
    assert len(back.graph.nodes) == 4 and len(back.graph.edges) == 4


def test_not_perfect():
    G = ugraph("abc", [("ab", "a", "b"), ("bc", "b", "c")])
    with pytest.raises(NotPerfectMatching):
        from_matched_graph(G, {"ab"})


@given(st.integers(0, 10**6), st.integers(1, 5))
def test_matched_graph_round_trip(seed, pairs):
    rng = random.Random(seed)
    nodes = [f"n{i}" for i in range(2 * pairs)]
    match = [(f"m{i}", nodes[2 * i], nodes[2 * i + 1]) for i in range(pairs)]
    used = {frozenset((a, b)) for _, a, b in match}
    others = []
    for a, b in itertools.combinations(nodes, 2):
        if frozenset((a, b)) not in used and rng.random() < 0.4:
            others.append((f"x{len(others)}", a, b))
    G = ugraph(nodes, match + others)
    M = {m for m, _, _ in match}
    B = from_matched_graph(G, M)
    back = to_matched_graph(B)
    assert len(back.graph.nodes) == len(G.nodes)
    assert len(back.graph.edges) == len(G.edges)
    assert is_perfect(back.graph, back.matching)


@given(bidirected_graphs(max_n=6, max_m=8))
def test_to_matched_graph_structure(B):
    MG = to_matched_graph(B)
    extra = len(MG.subdivisions)
    assert len(MG.graph.nodes) == 2 * (len(B.vertices) + extra)
    assert len(MG.graph.edges) == len(B.vertices) + len(B.edges) + 2 * extra
    assert is_perfect(MG.graph, MG.matching)
    assert same_graph(from_matched_graph(MG), B)


def test_alternating_paths(fixture_corpus, F3):
    MG = to_matched_graph(fixture_corpus["F0"].graph)
    ok, path = alternating_path_exists(MG, ("r", PLUS), ("v", PLUS))
    assert ok and path == [("r", PLUS), ("v", PLUS)]
    assert alternating_path_exists(MG, ("r", PLUS), ("v", MINUS)) == (False, None)
    with pytest.raises(SameNode):
        alternating_path_exists(MG, ("r", PLUS), ("r", PLUS))
    MG3 = to_matched_graph(F3)
    ok, path = alternating_path_exists(MG3, ("r", MINUS), ("w", MINUS))
    assert ok and path == [("r", MINUS), ("c", PLUS), ("c", MINUS), ("w", MINUS)]


@given(bidirected_graphs(max_n=6, max_m=7), st.data())
def test_alternating_paths_agree_with_exhaustive_search(B, data):
    MG = to_matched_graph(B)
    nodes = MG.graph.nodes
    if len(nodes) > 12:
        return
    a = data.draw(st.sampled_from(nodes))
    b = data.draw(st.sampled_from([n for n in nodes if n != a]))
    ok, path = alternating_path_exists(MG, a, b)
    expected = bf_alternating_path(MG.graph, MG.matching, a, b)
    assert ok == (expected is not None)
    if ok:
        assert path[0] == a and path[-1] == b and len(set(path)) == len(path)
        for i in range(len(path) - 1):
            e = MG.graph.between(path[i], path[i + 1])
            assert (e.id in MG.matching) == (i % 2 == 1)


def transitions(gadget):
    return {frozenset(((e.a), (e.b))) for e in gadget.graph.edges if e.id not in gadget.matching}


def test_trail_gadget_f0(fixture_corpus):
    T = build_trail_gadget(fixture_corpus["F0"].graph)
    assert len(T.graph.nodes) == 2 and len(T.matching) == 1 and not transitions(T)


def test_trail_gadget_f1(fixture_corpus):
    T = build_trail_gadget(fixture_corpus["F1"].graph)
    assert len(T.graph.nodes) == 4
    assert transitions(T) == {frozenset({("e", "v"), ("f", "v")})}


def test_trail_gadget_f3(F3):
    T = build_trail_gadget(F3)
    assert len(T.graph.nodes) == 6
    assert transitions(T) == {
        frozenset({("f", "c"), ("g", "c")}),
        frozenset({("f", "c"), ("h", "c")}),
        frozenset({("g", "w"), ("h", "w")}),
    }


@given(bidirected_graphs())
def test_trail_gadget_invariants(B):
    T = build_trail_gadget(B)
    assert len(T.graph.nodes) == 2 * len(B.edges)
    assert is_perfect(T.graph, T.matching)
    for e in T.graph.edges:
        if e.id not in T.matching:
            assert e.a[1] == e.b[1] != B.root
