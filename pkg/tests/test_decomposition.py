import itertools

import pytest
from hypothesis import assume, given

from bidigraph.core import MINUS, PLUS, SIGNS, OrientedEdge, build_graph, dipath, trivial_trail, validate_trail
from bidigraph.decomposition import (
    auxiliary_graph,
    certify_component,
    g_contract,
    g_inverse,
    lift_path,
    lift_trail,
    normalize_for_skeleton,
    project_trail,
    trail_components,
    trail_skeleton,
    trail_solid_by_rule,
    verify_correspondence,
    vertex_skeleton,
)
from bidigraph.errors import NotAPath, NotReachable, NotTrailReachable
from bidigraph.oracle import bf_skeleton_arcs, bf_solid_vertices, satisfies, walks
from bidigraph.reachability import classify_all, is_edge_clean, plain_vertices, restrict

from conftest import bidirected_graphs


@pytest.fixture
def F0(fixture_corpus):
    return fixture_corpus["F0"].graph


@pytest.fixture
def F1(fixture_corpus):
    return fixture_corpus["F1"].graph


@pytest.fixture
def F2(fixture_corpus):
    return fixture_corpus["F2"].graph


def arcs(D):
    return sorted((a.tail, a.head) for a in D.arcs)


def test_f3_components(F3):
    [(C, cert)] = trail_components(F3)
    assert C.vertices == {"c", "w"} and C.edges == {"g", "h"}
    assert C.entry == OrientedEdge("f", "r", "c") and C.anchor == "c"
    assert C.alpha == MINUS  # departs c against the + arrival of f
    assert cert.ok and cert.entry_unique and cert.internal_edges_undirectable
    assert set(cert.edge_witnesses) == {"g", "h"}
    assert set(cert.sign_witnesses) == {("w", PLUS), ("w", MINUS), ("c", PLUS), ("c", MINUS)}


def test_f0_no_components(F0):
    assert trail_components(F0) == []


def test_skeletons(F0, F3):
    TD = trail_skeleton(F0)
    assert set(TD.skeleton.vertices) == {"r", "v"} and arcs(TD.skeleton) == [("r", "v")]
    TD = trail_skeleton(F3)
    assert set(TD.skeleton.vertices) == {"r", "c"} and arcs(TD.skeleton) == [("r", "c")]
    assert TD.contraction["w"] == "c"


def test_not_trail_reachable():
    B = build_graph([], [("e", "r", "v", PLUS, PLUS), ("z", "x", "y", PLUS, MINUS)], "r")
    with pytest.raises(NotTrailReachable):
        trail_skeleton(B)


def test_projection(F2, F3):
    TD = trail_skeleton(F3)
    P = project_trail(TD, validate_trail(F3, ["r", "f", "c", "g", "w"]))
    assert P.vertices == ("r", "c") and P.arcs == ("f",)
    assert project_trail(TD, trivial_trail(F3, "r")).arcs == ()
    TD2 = trail_skeleton(F2)
    T = validate_trail(F2, ["r", "ra", "a", "ab", "b"])
    assert project_trail(TD2, T).vertices == ("r", "a", "b")


def test_lifts(F0, F2, F3):
    TD = trail_skeleton(F3)
    S = dipath(TD.skeleton, "r", ["f"])
    assert lift_trail(TD, S).sequence() == ["r", "f", "c"]
    assert lift_path(TD, S).sequence() == ["r", "f", "c"]
    TD0 = trail_skeleton(F0)
    assert lift_trail(TD0, dipath(TD0.skeleton, "r", ["e"])).sequence() == ["r", "e", "v"]
    TD2 = trail_skeleton(F2)
    Q = lift_path(TD2, dipath(TD2.skeleton, "r", ["ra", "ab"]))
    assert Q.vertices == ("r", "a", "b")


def test_auxiliary_graph(F0, F1, F3):
    AG = auxiliary_graph(F0)
    assert len(AG.graph.vertices) == 3 and len(AG.graph.edges) == 2
    assert AG.graph.edge("e").v == "v^+"
    aux = AG.graph.edge("aux(v)")
    assert aux.sign_at("v^+") == MINUS and aux.sign_at("v^-") == PLUS
    AG = auxiliary_graph(F3)
    assert len(AG.graph.vertices) == 4 and len(AG.graph.edges) == 4
    assert auxiliary_graph(F1).graph == F1


def test_g_maps(F0, F3):
    AG = auxiliary_graph(F0)
    Q = g_inverse(AG, validate_trail(F0, ["r", "e", "v"]))
    assert Q.sequence() == ["r", "e", "v^+"]
    AG = auxiliary_graph(F3)
    P = validate_trail(F3, ["r", "f", "c", "h", "w"])
    Q = g_inverse(AG, P)
    assert Q.sequence() == ["r", "f", "c^+", "aux(c)", "c^-", "h", "w"]
    assert g_contract(AG, Q) == P
    with pytest.raises(NotAPath):
        g_inverse(AG, validate_trail(F3, ["r", "f", "c", "h", "w", "g", "c"]))


def test_g_bijection_on_fixtures(fixture_corpus):
    for name in ("F0", "F1", "F2", "F3", "Fig2a", "Fig4"):
        B = fixture_corpus[name].graph
        AG = auxiliary_graph(B)
        proper = {
            tuple(T.sequence())
            for T in walks(AG.graph, "path", B.root, max_edges=64)
            if T.edges and not AG.is_aux(T.edge_ids[-1])
        }
        paths = [T for T in walks(B, "path", B.root, max_edges=64) if T.edges]
        assert {tuple(g_inverse(AG, P).sequence()) for P in paths} == proper, name
        assert len(proper) == len(paths), name


def test_vertex_skeleton(F0, F3):
    VD = vertex_skeleton(F3)
    assert set(VD.skeleton.vertices) == {"r", "c"} and arcs(VD.skeleton) == [("r", "c")]
    VD = vertex_skeleton(F0)
    assert arcs(VD.skeleton) == [("r", "v")]
    B = build_graph([], [("e", "r", "v", PLUS, PLUS), ("z", "x", "y", PLUS, MINUS)], "r")
    with pytest.raises(NotReachable):
        vertex_skeleton(B)


def test_normalize(F0, F3):
    B, switches = normalize_for_skeleton(F0)
    # e arrives at v with +, so aux(v) is entered at v^+ and already points v^+ -> v^-
    assert switches == [] and B == F0
    assert normalize_for_skeleton(B) == (B, [])


def test_correspondence(F0, F3):
    assert verify_correspondence(F3).ok
    assert verify_correspondence(F0).ok


trail_graphs = bidirected_graphs(max_n=6, max_m=8).map(lambda B: restrict(B, "trail"))


@given(trail_graphs)
def test_trail_skeleton_matches_brute_force(B):
    TD = trail_skeleton(B)
    solid = bf_solid_vertices(B, "trail")
    assert trail_solid_by_rule(TD) == solid == set(TD.skeleton.vertices)
    assert sorted((a.id, a.tail, a.head) for a in TD.skeleton.arcs) == bf_skeleton_arcs(B, "trail")
    for C in TD.components:
        assert certify_component(TD, C).ok
        if C.entry is not None:
            assert [a.id for a in TD.skeleton.arcs if a.head == C.anchor] == [C.entry.edge]


@given(trail_graphs)
def test_projection_and_lift_round_trip(B):
    TD = trail_skeleton(B)
    trails = list(walks(B, "r-trail"))
    images = set()
    for T in trails:
        S = project_trail(TD, T)
        images.add(S.arcs)
        lifted = lift_trail(TD, S)
        assert lifted.is_r_trail and project_trail(TD, lifted) == S
    for T1, T2 in itertools.combinations(trails, 2):
        if not set(T1.edge_ids) & set(T2.edge_ids):
            assert not set(project_trail(TD, T1).arcs) & set(project_trail(TD, T2).arcs)


@given(trail_graphs)
def test_proper_trails_share_directable_edges(B):
    assume(is_edge_clean(B))
    table = classify_all(B, "trail")
    directable = {eid for eid, c in table.items() if c.status == "directable"}
    proper = [T for T in walks(B, "r-trail") if set(T.edge_ids) & directable]
    for T1, T2 in itertools.combinations(proper, 2):
        shared = set(T1.edge_ids) & set(T2.edge_ids)
        if shared:
            assert shared & directable


@given(bidirected_graphs(max_n=5, max_m=7))
def test_auxiliary_graph_properties(B):
    assume(satisfies(B, "reachable"))
    AG = auxiliary_graph(B)
    plain = plain_vertices(B)
    assert len(AG.graph.vertices) == len(B.vertices) + len(plain)
    A = AG.graph
    table = classify_all(A, "trail")
    assert all(table[AG.aux_edges[v]].status != "undirectable" for v in plain)
    VD = vertex_skeleton(B)
    TDa = trail_skeleton(restrict(A, "trail"))
    assert sorted(sorted(C.edges) for C in VD.components) == sorted(sorted(C.edges) for C in TDa.components)
    isolated = {v for v in B.vertices if v != B.root and not B.incident(v)}
    expected = {AG.node(v, s) for v in plain - isolated for s in SIGNS} | {B.root}
    assert set(TDa.skeleton.vertices) - {n for v in isolated for n in AG.split(v)} == expected
    assert set(VD.skeleton.vertices) == set(plain) | {B.root}
    assert verify_correspondence(B).ok
    Bn, switches = normalize_for_skeleton(B)
    assert normalize_for_skeleton(Bn) == (Bn, [])


@given(bidirected_graphs(max_n=5, max_m=7))
def test_path_lifts_are_paths(B):
    assume(satisfies(B, "path-reachable"))
    TD = trail_skeleton(B)
    for S in walks_of_digraph(TD.skeleton):
        Q = lift_path(TD, S)
        assert Q.is_path and project_trail(TD, Q) == S


def walks_of_digraph(D):
    out = []

    def rec(v, seq, seen):
        out.append(dipath(D, D.root, seq))
        for a in D.arcs:
            if a.tail == v and a.head not in seen:
                rec(a.head, seq + [a.id], seen | {a.head})

    rec(D.root, [], {D.root})
    return out
