import itertools

import pytest
from hypothesis import assume, given

from bidigraph.core import MINUS, PLUS, SIGNS, build_digraph, build_graph
from bidigraph.connectivity import maxflow_paths
from bidigraph.errors import NotClean, NotEdgeClean, NotSpanningReachable, NotSubgraph
from bidigraph.flame import (
    directed_flame,
    ear_decomposition,
    edge_flame,
    is_accessible,
    is_directed_flame,
    reachable_from,
    sigma,
    sigma_budget,
    spanning_subgraph,
    verify_flame,
    vertex_flame,
)
from bidigraph.oracle import bf_path_exists
from bidigraph.decomposition import trail_skeleton
from bidigraph.reachability import is_edge_clean

from conftest import bidirected_graphs


def arc_ids(D):
    return sorted(a.id for a in D.arcs)


def test_directed_flame_examples():
    D = build_digraph(["r", "a", "b"], [("ra", "r", "a"), ("ab", "a", "b")], "r")
    assert arc_ids(directed_flame(D)) == ["ab", "ra"]
    D = build_digraph(["r", "v"], [("p", "r", "v"), ("q", "r", "v")], "r")
    assert arc_ids(directed_flame(D)) == ["p", "q"]
    tri = [("ra", "r", "a"), ("rb", "r", "b"), ("ab", "a", "b")]
    D = build_digraph(["r", "a", "b"], tri, "r")
    assert arc_ids(directed_flame(D)) == ["ab", "ra", "rb"]
    D = build_digraph(["r", "a", "b"], tri + [("ab2", "a", "b")], "r")
    F = directed_flame(D)
    assert len(F.arcs) == 3 and len({"ab", "ab2"} & set(arc_ids(F))) == 1
    assert is_directed_flame(F)


@given(bidirected_graphs(max_n=6, max_m=10))
def test_directed_flame_property(B):
    D = build_digraph(B.vertices, [(e.id, e.u, e.v) for e in B.edges], B.root)
    F = directed_flame(D)
    for v in D.vertices:
        if v == D.root:
            continue
        want = maxflow_paths(D, v).value
        assert maxflow_paths(F, v).value == want == len(F.in_arcs(v))


def test_bone():
    B = build_graph([], [("e", "v", "w", PLUS, MINUS)], "v")
    E = ear_decomposition(B, "v", PLUS)
    assert [s.kind for s in E.steps] == ["bone"] and E.steps[0].edges == ("e",)
    assert spanning_subgraph(B, "v", PLUS).edge_ids == ("e",)
    assert sigma_budget(B, "v", PLUS) == 1
    with pytest.raises(NotSpanningReachable):
        ear_decomposition(B, "v", MINUS)


def doubly_reachable_four_cycles():
    names = ["v", "a", "b", "c"]
    for signs in itertools.product(SIGNS, repeat=8):
        edges = [(f"e{i}", names[i], names[(i + 1) % 4], signs[2 * i], signs[2 * i + 1]) for i in range(4)]
        B = build_graph(names, edges, "v")
        for alpha in SIGNS:
            if all(sigma(B, "v", alpha, w, s) for w in names[1:] for s in SIGNS):
                yield B, alpha


def test_four_cycle_is_one_ear():
    found = list(doubly_reachable_four_cycles())
    assert found
    for B, alpha in found:
        E = ear_decomposition(B, "v", alpha)
        assert [s.kind for s in E.steps] == ["ear"] and len(E.steps[0].edges) == 4


def test_f3_component_spanning(F3):
    C = trail_skeleton(F3).components[0]
    inside = F3.induced(C.vertices)
    H = spanning_subgraph(inside, C.anchor, C.alpha)
    assert len(H.edges) <= sigma_budget(inside, C.anchor, C.alpha) == 2
    assert is_accessible(inside, H, C.anchor, C.alpha)
    E = ear_decomposition(inside, C.anchor, C.alpha)
    assert {v for s in E.steps for v in s.new_vertices} == {"w"}


@given(bidirected_graphs(max_n=5, max_m=7))
def test_ear_decomposition_invariants(B):
    v = B.root
    for alpha in SIGNS:
        core = B.induced(reachable_from(B, v, alpha))
        E = ear_decomposition(core, v, alpha)
        covered = {v}
        for k, step in enumerate(E.steps, start=1):
            H = E.prefix(k)
            assert is_accessible(core, H, v, alpha)
            if step.kind == "bone":
                assert len(step.edges) == 1 and len(step.new_vertices) == 1
                e = core.edge(step.edges[0])
                assert len(set(e.ends) & covered) == 1
            else:
                T = step.walk
                if T is not None:
                    assert T.start in covered and T.end in covered
                    assert not set(T.vertices[1:-1]) & covered
            if covered != set(core.vertices):
                assert set(step.new_vertices) - covered
            covered |= set(step.new_vertices)
        assert set(E.prefix(len(E.steps)).edge_ids) == set(core.edge_ids)
        S = spanning_subgraph(core, v, alpha)
        assert len(S.edges) <= sigma_budget(core, v, alpha)
        for w in core.vertices:
            if w == v:
                continue
            for s in SIGNS:
                assert bf_path_exists(S, v, alpha, w, s) == bf_path_exists(core, v, alpha, w, s)


def test_edge_flame_examples(fixture_corpus, F3):
    F0 = fixture_corpus["F0"].graph
    rep = edge_flame(F0)
    assert rep.graph == F0 and rep.budget == 1
    rep = edge_flame(F3)
    assert set(rep.graph.edge_ids) == {"f", "g", "h"} and rep.budget == 3
    rep = edge_flame(fixture_corpus["Fig2a"].graph)
    assert rep.edge_count == 5 and rep.budget == 5
    with pytest.raises(NotEdgeClean):
        edge_flame(fixture_corpus["Fig3"].graph)
    with pytest.raises(NotEdgeClean):
        edge_flame(fixture_corpus["F1"].graph)


def test_vertex_flame_examples(fixture_corpus, F3):
    F0 = fixture_corpus["F0"].graph
    rep = vertex_flame(F0)
    assert rep.graph == F0 and rep.budget == 1
    rep = vertex_flame(F3)
    assert set(rep.graph.edge_ids) == {"f", "g", "h"} and rep.budget == 3
    with pytest.raises(NotClean):
        vertex_flame(fixture_corpus["F1"].graph)


def test_verify_flame(F3):
    assert verify_flame(F3, F3, "edge", oracle=True).ok
    rep = verify_flame(F3, F3.edge_subgraph({"f", "g"}), "edge")
    assert not rep.ok and "drops" in rep.problems[0]
    other = build_graph([], [("z", "r", "q", PLUS, PLUS)], "r")
    with pytest.raises(NotSubgraph):
        verify_flame(F3, other, "edge")


def test_verify_flame_on_fixtures(fixture_corpus):
    for fx in fixture_corpus.fixtures:
        if is_edge_clean(fx.graph):
            assert edge_flame(fx.graph).ok, fx.name


@given(bidirected_graphs(max_n=6, max_m=9, constraint="edge-clean"))
def test_edge_flames_verify(B):
    rep = edge_flame(B)
    assert verify_flame(B, rep.graph, "edge", oracle=True).ok


@given(bidirected_graphs(max_n=6, max_m=9, constraint="clean"))
def test_vertex_flames_verify(B):
    rep = vertex_flame(B)
    assert verify_flame(B, rep.graph, "vertex", oracle=True).ok
