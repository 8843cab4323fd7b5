import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bidigraph.core import (
    MINUS,
    PLUS,
    SIGNS,
    Edge,
    OrientedEdge,
    Sign,
    SignedVertex,
    build_digraph,
    build_graph,
    concat,
    dipath,
    from_json,
    parse_text,
    reverse_trail,
    sign_switch,
    signed_vertices,
    to_dot,
    to_json,
    to_text,
    trivial_trail,
    validate_trail,
    walk,
)
from bidigraph.errors import (
    BrokenIncidence,
    DuplicateEdgeId,
    EndpointMismatch,
    FormatError,
    JunctionSignClash,
    LoopEdge,
    RepeatedEdge,
    SignClash,
    UnknownEdge,
    UnknownVertex,
)
from bidigraph.oracle import walks

from conftest import bidirected_graphs


def test_sign_negation_is_an_involution():
    assert set(SIGNS) == {PLUS, MINUS}
    for s in SIGNS:
        assert -(-s) == s and -s != s
    assert Sign.parse("+") is PLUS and Sign.parse("-") is MINUS
    with pytest.raises(FormatError):
        Sign.parse("0")


def test_smallest_graph():
    B = build_graph(["r", "v"], [("e", "r", "v", PLUS, PLUS)], "r")
    assert len(B.vertices) == 2 and len(B.edges) == 1
    assert len(B.half_edges()) == 2


def test_loops_rejected():
    with pytest.raises(LoopEdge):
        build_graph(["r"], [("e", "r", "r", PLUS, MINUS)], "r")


def test_duplicate_ids_and_unknown_vertices():
    with pytest.raises(DuplicateEdgeId):
        build_graph(["r", "v"], [("e", "r", "v", PLUS, PLUS), ("e", "v", "r", PLUS, PLUS)])
    B = build_graph(["r"], [("e", "r", "v", PLUS, PLUS)], "r")
    assert "v" in B.vertices  # endpoints declare themselves
    with pytest.raises(UnknownVertex):
        B.incident("nowhere")
    with pytest.raises(UnknownEdge):
        B.edge("nothing")


def test_f3_shape(F3):
    assert len(F3.vertices) == 3 and len(F3.edges) == 3
    assert F3.sign("f", "r") == MINUS and F3.sign("f", "c") == PLUS
    assert F3.sign("h", "w") == MINUS


def test_f3_path(F3):
    T = validate_trail(F3, ["r", "f", "c", "g", "w"])
    assert T.is_path and T.end_sign == PLUS and T.start_sign == MINUS
    assert T.is_r_trail


def test_f3_almost_path(F3):
    T = validate_trail(F3, ["r", "f", "c", "h", "w", "g", "c"])
    assert not T.is_path and T.is_almost_path


def test_f3_repeated_edge(F3):
    with pytest.raises(RepeatedEdge) as info:
        validate_trail(F3, ["r", "f", "c", "g", "w", "h", "c", "f", "r"])
    assert info.value.detail["edge"] == "f"


def test_sign_clash_and_broken_incidence(F3):
    with pytest.raises(SignClash):
        validate_trail(F3, ["w", "g", "c", "h", "w"])
    with pytest.raises(BrokenIncidence):
        validate_trail(F3, ["r", "g", "w"])
    with pytest.raises(BrokenIncidence):
        validate_trail(F3, ["r", "f"])


def test_reverse(F3):
    t = trivial_trail(F3, "r")
    assert reverse_trail(t) == t
    T = validate_trail(F3, ["r", "f", "c", "g", "w"])
    R = reverse_trail(T)
    assert R.sequence() == ["w", "g", "c", "f", "r"]
    assert R.edges[0] == OrientedEdge("g", "w", "c")
    assert reverse_trail(R) == T


def test_concat(F3):
    T = validate_trail(F3, ["r", "f", "c", "g", "w"])
    assert concat(trivial_trail(F3, "r"), T) == T
    S = validate_trail(F3, ["r", "f", "c"])
    assert concat(S, validate_trail(F3, ["c", "g", "w"])).sequence() == ["r", "f", "c", "g", "w"]
    # an edge leaving c with + clashes with f arriving with +
    G = build_graph([], [("f", "r", "c", MINUS, PLUS), ("g", "c", "w", PLUS, PLUS)], "r")
    with pytest.raises(JunctionSignClash):
        concat(validate_trail(G, ["r", "f", "c"]), validate_trail(G, ["c", "g", "w"]))
    with pytest.raises(EndpointMismatch):
        concat(S, validate_trail(F3, ["w", "g", "c"]))
    with pytest.raises(RepeatedEdge):
        concat(S, validate_trail(F3, ["c", "f", "r"]))


def test_sign_switch():
    F0 = build_graph([], [("e", "r", "v", PLUS, PLUS)], "r")
    S = sign_switch(F0, "v")
    assert S.sign("e", "v") == MINUS and S.sign("e", "r") == PLUS
    assert sign_switch(S, "v") == F0
    with pytest.raises(UnknownVertex):
        sign_switch(F0, "x")


def test_signed_vertices(F3):
    assert signed_vertices([]) == set()
    assert signed_vertices(["r"]) == {SignedVertex("r", PLUS), SignedVertex("r", MINUS)}
    assert len(signed_vertices(["c", "w"])) == 4


def test_text_format(F3):
    text = to_text(F3)
    assert text.splitlines()[0] == "bidigraph v1"
    assert "edge f r c - +" in text
    assert parse_text(text) == F3
    assert to_text(parse_text(text)) == text
    with pytest.raises(FormatError):
        parse_text("edge e r v + +\n")
    with pytest.raises(FormatError):
        parse_text("bidigraph v1\nedge e r v + ?\n")


def test_comments_and_isolated_vertices():
    B = parse_text("bidigraph v1  # header\nroot r\nvertex z\n# nothing\nedge e r v + -\n")
    assert B.vertices == ("r", "v", "z") and B.root == "r"
    assert "vertex z" in to_text(B)


def test_json_mirror(F3):
    data = to_json(F3)
    assert data["root"] == "r" and data["version"] == 1
    assert {"id": "f", "u": "r", "v": "c", "su": "-", "sv": "+"} in data["edges"]
    assert from_json(json.dumps(data)) == F3


def test_dot_labels(F3):
    dot = to_dot(F3)
    assert '"r" -- "c"' in dot and 'label="r:-,c:+"' in dot


def test_digraph_paths():
    D = build_digraph(["r", "a"], [("x", "r", "a"), ("y", "a", "r")], "r")
    P = dipath(D, "r", ["x", "y"])
    assert P.end == "r" and not P.is_path()


@given(bidirected_graphs())
def test_serialization_round_trip(B):
    assert parse_text(to_text(B)) == B
    assert from_json(to_json(B)) == B


@given(bidirected_graphs(max_n=5, max_m=7), st.data())
def test_reverse_is_an_involution_on_all_trails(B, data):
    trails = [T for T in walks(B, "trail", data.draw(st.sampled_from(B.vertices)))]
    T = data.draw(st.sampled_from(trails))
    R = reverse_trail(T)
    assert validate_trail(B, R.sequence()) == R
    assert reverse_trail(R) == T


def _brute_valid(B, seq):
    """Independent statement of the four trail conditions."""
    verts, eids = seq[0::2], seq[1::2]
    if len(set(eids)) != len(eids):
        return False
    arrive = None
    for i, eid in enumerate(eids):
        e = B.edge(eid)
        if {e.u, e.v} != {verts[i], verts[i + 1]}:
            return False
        if arrive is not None and e.sign_at(verts[i]) == arrive:
            return False
        arrive = e.sign_at(verts[i + 1])
    return True


@given(bidirected_graphs(max_n=4, max_m=5), st.data())
def test_validate_accepts_exactly_valid_sequences(B, data):
    if not B.edges:
        return
    k = data.draw(st.integers(1, 4))
    eids = data.draw(st.lists(st.sampled_from(B.edge_ids), min_size=k, max_size=k))
    seq = [data.draw(st.sampled_from(B.vertices))]
    for eid in eids:
        e = B.edge(eid)
        seq += [eid, e.other(seq[-1]) if seq[-1] in e.ends else e.v]
    try:
        validate_trail(B, seq)
        ok = True
    except (BrokenIncidence, RepeatedEdge, SignClash):
        ok = False
    assert ok == _brute_valid(B, seq)


@given(bidirected_graphs(max_n=5, max_m=7), st.data())
def test_sign_switch_preserves_paths(B, data):
    v = data.draw(st.sampled_from(B.vertices))
    S = sign_switch(B, v)
    before = {tuple(T.sequence()) for x in B.vertices for T in walks(B, "path", x)}
    after = {tuple(T.sequence()) for x in S.vertices for T in walks(S, "path", x)}
    assert before == after


def test_walk_helper(F3):
    assert walk(F3, "r", ["f", "g"]).sequence() == ["r", "f", "c", "g", "w"]
    assert isinstance(F3.edge("f"), Edge)
