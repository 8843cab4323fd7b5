import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from bidigraph.core import MINUS, PLUS, build_digraph, build_graph, dipath, validate_trail
from bidigraph.errors import InvalidFamily, NotClean, NotEdgeClean, XXPathExists
from bidigraph.linkage import directed_edge_pym, edge_pym, set_pym, vertex_pym
from bidigraph.oracle import bf_pym_exists, covers, walks

from conftest import bidirected_graphs


def seqs(R):
    return sorted(tuple(T.sequence()) for T in R)


def test_directed_examples():
    D = build_digraph(
        ["r", "a", "b", "x"],
        [("ra", "r", "a"), ("rb", "r", "b"), ("ax", "a", "x"), ("bx", "b", "x")],
        "r",
    )
    P = [dipath(D, "r", ["ra", "ax"])]
    Q = [dipath(D, "r", ["rb", "bx"])]
    R = directed_edge_pym(D, "x", P, Q)
    assert sorted(p.arcs for p in R) == [("ra", "ax"), ("rb", "bx")]
    assert [p.arcs for p in directed_edge_pym(D, "x", P, P)] == [("ra", "ax")]
    assert directed_edge_pym(D, "x", [], []) == []


def test_edge_pym_examples(fixture_corpus, F3):
    F2 = fixture_corpus["F2"].graph
    P = [validate_trail(F2, ["r", "ra", "a", "ab", "b"])]
    Q = [validate_trail(F2, ["r", "rb", "b"])]
    assert seqs(edge_pym(F2, "b", P, Q)) == seqs(P + Q)
    T = [validate_trail(F3, ["r", "f", "c", "g", "w"])]
    assert seqs(edge_pym(F3, "w", T, T)) == seqs(T)


def test_fig4_refused_and_infeasible(fixture_corpus):
    B = fixture_corpus["Fig4"].graph
    paths = [T for T in walks(B, "path", "r") if T.edges and T.end == "x"]
    P = [next(T for T in paths if T.edge_ids[0] == "e")]
    Q = [next(T for T in paths if T.edge_ids[-1] == "f")]
    with pytest.raises(NotEdgeClean):
        edge_pym(B, "x", P, Q)
    with pytest.raises(NotClean):
        vertex_pym(B, "x", P, Q)
    assert bf_pym_exists(B, "x", ["e"], ["f"]) is None


def test_vertex_pym_examples(F3):
    T = [validate_trail(F3, ["r", "f", "c", "g", "w"])]
    assert seqs(vertex_pym(F3, "w", T, T)) == seqs(T)
    assert vertex_pym(F3, "w", [], []) == []


def test_invalid_families(F3):
    bad = [validate_trail(F3, ["r", "f", "c"])]
    with pytest.raises(InvalidFamily):
        edge_pym(F3, "w", bad, [])
    T = validate_trail(F3, ["r", "f", "c", "g", "w"])
    with pytest.raises(InvalidFamily):
        edge_pym(F3, "w", [T, T], [])


def test_set_pym_examples(F3):
    T = [validate_trail(F3, ["r", "f", "c", "g", "w"])]
    R = set_pym(F3, {"r"}, {"w"}, T, T)
    assert len(R) == 1 and R[0].start == "r" and R[0].end == "w"
    assert set_pym(F3, {"r"}, {"w"}, [], []) == []
    B = build_graph([], [("e", "r", "v", PLUS, PLUS)], "r")
    triv = [validate_trail(B, ["v"])]
    R = set_pym(B, {"v"}, {"v"}, triv, triv)
    assert seqs(R) == [("v",)]
    G = build_graph([], [("ra", "r", "a", MINUS, PLUS), ("ab", "a", "b", MINUS, PLUS)], "r")
    with pytest.raises(XXPathExists):
        set_pym(G, {"r", "b"}, {"a"}, [], [])


def disjoint_family(data, paths, vertex):
    fam, used, inner = [], set(), set()
    for T in data.draw(st.permutations(paths)):
        if set(T.edge_ids) & used or (vertex and set(T.vertices[1:-1]) & inner):
            continue
        if data.draw(st.booleans()):
            fam.append(T)
            used |= set(T.edge_ids)
            inner |= set(T.vertices[1:-1])
    return fam


def check_output(B, x, R, P, Q, vertex):
    assert covers(R, [T.edge_ids[0] for T in P], [T.edge_ids[-1] for T in Q])
    assert len(R) >= max(len(P), len(Q))
    used, inner = set(), set()
    for T in R:
        T = validate_trail(B, T.sequence())
        assert T.is_path and T.start == B.root and T.end == x
        assert not set(T.edge_ids) & used
        used |= set(T.edge_ids)
        if vertex:
            assert not set(T.vertices[1:-1]) & inner
            inner |= set(T.vertices[1:-1])


@given(bidirected_graphs(max_n=6, max_m=9, constraint="edge-clean"), st.data())
def test_edge_pym_random(B, data):
    x = data.draw(st.sampled_from([v for v in B.vertices if v != B.root]))
    paths = [T for T in walks(B, "path", B.root) if T.edges and T.end == x]
    assume(paths)
    P, Q = disjoint_family(data, paths, False), disjoint_family(data, paths, False)
    check_output(B, x, edge_pym(B, x, P, Q), P, Q, False)


@given(bidirected_graphs(max_n=6, max_m=9, constraint="clean"), st.data())
def test_vertex_pym_random(B, data):
    x = data.draw(st.sampled_from([v for v in B.vertices if v != B.root]))
    paths = [T for T in walks(B, "path", B.root) if T.edges and T.end == x]
    assume(paths)
    P, Q = disjoint_family(data, paths, True), disjoint_family(data, paths, True)
    check_output(B, x, vertex_pym(B, x, P, Q), P, Q, True)
