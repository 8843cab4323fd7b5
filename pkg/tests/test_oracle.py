import pytest
from hypothesis import given
from hypothesis import strategies as st

from bidigraph.core import PLUS, build_graph
from bidigraph.errors import ConstraintUnsatisfiable, TooLarge
from bidigraph.oracle import (
    GeneratorParams,
    GenerationStats,
    bf_is_clean,
    bf_is_edge_clean,
    bf_kappa,
    bf_lambda,
    bf_min_cut,
    random_instance,
    walks,
)

from conftest import bidirected_graphs


def seqs(ts):
    return {tuple(T.sequence()) for T in ts}


def test_enumerate_f0(fixture_corpus):
    F0 = fixture_corpus["F0"].graph
    assert seqs(walks(F0, "r-trail")) == {("r",), ("r", "e", "v")}


def test_enumerate_f3(F3):
    ending_at_c = {s for s in seqs(walks(F3, "r-trail")) if s[-1] == "c"}
    assert {("r", "f", "c"), ("r", "f", "c", "g", "w", "h", "c"), ("r", "f", "c", "h", "w", "g", "c")} <= ending_at_c


def test_enumerate_f1(fixture_corpus):
    F1 = fixture_corpus["F1"].graph
    loops = [T for T in walks(F1, "almost-path", "r") if T.edges and T.end == "r"]
    assert ("r", "e", "v", "f", "r") in seqs(loops)


def test_guard():
    edges = [(f"e{i}", "r", "v", PLUS, PLUS) for i in range(17)]
    B = build_graph([], edges, "r")
    with pytest.raises(TooLarge):
        list(walks(B, "r-trail"))


def test_exact_values(fixture_corpus, F3):
    F0, F2 = fixture_corpus["F0"].graph, fixture_corpus["F2"].graph
    assert bf_lambda(F3, "w", "trail")[0] == 1
    assert bf_lambda(F2, "b", "path")[0] == 2
    assert bf_lambda(F0, "v", "trail")[0] == bf_lambda(F0, "v", "path")[0] == bf_kappa(F0, "v")[0] == 1
    assert bf_min_cut(F3, "w", "trail") == (1, frozenset({"c", "w"}))
    assert bf_min_cut(F0, "v", "path")[0] == 1
    assert bf_min_cut(F2, "b", "vertex")[0] == 2


def test_generator():
    B = random_instance(GeneratorParams(seed=1, n=1, m=0))
    assert B.vertices == ("r",) and not B.edges
    p = GeneratorParams(seed=7, n=5, m=8)
    assert random_instance(p) == random_instance(p)
    with pytest.raises(ConstraintUnsatisfiable):
        random_instance(GeneratorParams(seed=1, n=1, m=2))
    with pytest.raises(ValueError):
        GeneratorParams(seed=1, n=0, m=0)


def test_constrained_generation():
    stats = GenerationStats()
    for seed in range(500):
        n = 2 + seed % 6
        B = random_instance(GeneratorParams(seed=seed, n=n, m=seed % (n + 3), constraint="edge-clean"), stats)
        assert bf_is_edge_clean(B)
    assert stats.attempts >= 500


@given(bidirected_graphs(max_n=5, max_m=7))
def test_enumerators_nest(B):
    r = B.root
    trails = seqs(walks(B, "trail", r))
    almost = seqs(walks(B, "almost-path", r))
    paths = seqs(walks(B, "path", r))
    assert paths <= almost <= trails
    assert seqs(walks(B, "r-trail")) <= trails
    assert not bf_is_edge_clean(B) or bf_is_clean(B)


@given(bidirected_graphs(max_n=5, max_m=7), st.data())
def test_monotone_under_deletion(B, data):
    if not B.edges:
        return
    x = data.draw(st.sampled_from([v for v in B.vertices if v != B.root]))
    eid = data.draw(st.sampled_from(B.edge_ids))
    H = B.edge_subgraph(set(B.edge_ids) - {eid})
    for kind in ("trail", "path"):
        assert bf_lambda(H, x, kind)[0] <= bf_lambda(B, x, kind)[0]
    assert bf_kappa(H, x)[0] <= bf_kappa(B, x)[0]
