"""Hand fixtures and reconstructed figure graphs, each with machine-checkable expectations.

Figure drawings mark a sign + by a bar across the edge end, so a transcription
can be misread.  Each figure is therefore rebuilt from a transcribed signing
and then checked against its caption facts with the brute-force oracle; if the
transcription fails, single sign flips are tried before giving up.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Iterator, Sequence

from . import oracle
from .core import MINUS, PLUS, SIGNS, BidirectedGraph, Sign, build_graph, parse_text, to_text
from .errors import ReconstructionFailed

Template = Sequence[tuple[str, str, str, Sign, Sign]]

# the figure with copies is larger than the default oracle guard
FIGURE_EDGE_LIMIT = 64


@dataclass(frozen=True)
class Expectation:
    name: str
    statement: str
    expected: object
    measure: Callable[[BidirectedGraph], object] = field(repr=False, compare=False)

    def evaluate(self, B: BidirectedGraph) -> "Outcome":
        observed = _plain(self.measure(B))
        return Outcome(self.name, self.statement, _plain(self.expected), observed)


@dataclass(frozen=True)
class Outcome:
    name: str
    statement: str
    expected: object
    observed: object

    @property
    def ok(self) -> bool:
        return self.expected == self.observed

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "statement": self.statement,
            "expected": self.expected,
            "observed": self.observed,
            "ok": self.ok,
        }


@dataclass(frozen=True)
class Fixture:
    name: str
    origin: str  # "hand" or "figure"
    graph: BidirectedGraph
    expectations: tuple[Expectation, ...]
    signing_note: str = ""

    def check(self) -> list[Outcome]:
        return [x.evaluate(self.graph) for x in self.expectations]

    def expectation_json(self) -> dict:
        outcomes = self.check()
        return {
            "fixture": self.name,
            "origin": self.origin,
            "signing": self.signing_note,
            "ok": all(o.ok for o in outcomes),
            "expectations": [o.to_json() for o in outcomes],
        }


@dataclass(frozen=True)
class FixtureCorpus:
    fixtures: tuple[Fixture, ...]
    transcript: tuple[str, ...]

    def __getitem__(self, name: str) -> Fixture:
        for f in self.fixtures:
            if f.name == name:
                return f
        raise KeyError(name)

    @property
    def names(self) -> list[str]:
        return [f.name for f in self.fixtures]

    def graphs(self) -> dict[str, BidirectedGraph]:
        return {f.name: f.graph for f in self.fixtures}


def _plain(value):
    """Canonical JSON-friendly form: sets become sorted lists, tuples lists."""
    if isinstance(value, (set, frozenset)):
        return sorted(_plain(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, Sign):
        return str(value)
    return value


# ---------------------------------------------------------------------------
# oracle measures


def _lam(B: BidirectedGraph, v: str, sign: Sign | None = None) -> int:
    return oracle.bf_lambda(B, v, "path", sign, max_edges=FIGURE_EDGE_LIMIT)[0]


def _signed_table(B: BidirectedGraph) -> dict[tuple[str, Sign], int]:
    return {(v, s): _lam(B, v, s) for v in B.vertices if v != B.root for s in SIGNS}


def _signed_sum(B: BidirectedGraph, vertices: Iterable[str]) -> int:
    return sum(_lam(B, v, s) for v in vertices for s in SIGNS)


def _unsigned_sum(B: BidirectedGraph) -> int:
    return sum(_lam(B, v) for v in B.vertices if v != B.root)


def _undirectable(B: BidirectedGraph, regime: str) -> set[str]:
    return {eid for eid, (status, _) in oracle.bf_classify(B, regime).items() if status == "undirectable"}


def _without(B: BidirectedGraph, eid: str) -> BidirectedGraph:
    return B.edge_subgraph(set(B.edge_ids) - {eid}, B.vertices)


def _necessary_edges(B: BidirectedGraph) -> set[str]:
    """Edges whose deletion lowers some signed path connectivity."""
    base = _signed_table(B)
    return {eid for eid in B.edge_ids if _signed_table(_without(B, eid)) != base}


def _root_paths(B: BidirectedGraph, x: str, max_edges: int | None = None) -> list:
    return [
        T
        for T in oracle.walks(B, "path", B.root, max_edges=max_edges)
        if T.edges and T.end == x
    ]


def _arc_pairs(B: BidirectedGraph, regime: str) -> list[tuple[str, str]]:
    return sorted((t, h) for _, t, h in oracle.bf_skeleton_arcs(B, regime))


# ---------------------------------------------------------------------------
# hand fixtures


def _hand(name: str, vertices: list[str], edges: Template, expectations: list[Expectation]) -> Fixture:
    return Fixture(name, "hand", build_graph(vertices, edges, "r"), tuple(expectations))


def hand_fixtures() -> list[Fixture]:
    return [
        _hand(
            "F0",
            [],
            [("e", "r", "v", PLUS, PLUS)],
            [
                Expectation("edge_clean", "a single edge closes no root trail", True, oracle.bf_is_edge_clean),
                Expectation("trail_skeleton_arcs", "the trail-skeleton is the single arc r->v", [("r", "v")],
                            lambda B: _arc_pairs(B, "trail")),
            ],
        ),
        _hand(
            "F1",
            [],
            [("e", "r", "v", PLUS, PLUS), ("f", "v", "r", MINUS, PLUS)],
            [
                Expectation("clean", "r e v f r is a nontrivial root almost path", False, oracle.bf_is_clean),
                Expectation("edge_clean", "the same walk is a nontrivial root trail", False, oracle.bf_is_edge_clean),
                Expectation("plain_vertices", "v is reached with both signs", set(), oracle.bf_plain_vertices),
            ],
        ),
        _hand(
            "F2",
            [],
            [("ra", "r", "a", MINUS, PLUS), ("ab", "a", "b", MINUS, PLUS), ("rb", "r", "b", MINUS, PLUS)],
            [
                Expectation("edge_clean", "a directed triangle has no root trail back to r", True, oracle.bf_is_edge_clean),
                Expectation("lambda_path_b", "two edge-disjoint r-b paths", 2, lambda B: _lam(B, "b")),
                Expectation("kappa_b", "two internally disjoint r-b paths", 2, lambda B: oracle.bf_kappa(B, "b")[0]),
            ],
        ),
        _hand(
            "F3",
            [],
            [("f", "r", "c", MINUS, PLUS), ("g", "c", "w", MINUS, PLUS), ("h", "c", "w", MINUS, MINUS)],
            [
                Expectation("size", "three vertices and three edges", (3, 3),
                            lambda B: (len(B.vertices), len(B.edges))),
                Expectation("edge_clean", "no nontrivial root trail", True, oracle.bf_is_edge_clean),
                Expectation("signed_lambda_w", "w is reached once with each sign",
                            {"+": 1, "-": 1}, lambda B: {str(s): _lam(B, "w", s) for s in SIGNS}),
                Expectation("plain_vertices", "c is only entered with +", {"c"}, oracle.bf_plain_vertices),
            ],
        ),
    ]


# ---------------------------------------------------------------------------
# figure transcriptions (a bar at an end means sign + there)

FIG1_TEMPLATE: Template = (
    ("ra", "r", "a", MINUS, MINUS),
    ("rh", "r", "h", MINUS, PLUS),
    ("he", "h", "e", MINUS, MINUS),
    ("hi", "h", "i", MINUS, PLUS),
    ("ie", "i", "e", MINUS, PLUS),
    ("ej", "e", "j", MINUS, MINUS),
    ("ji", "j", "i", MINUS, PLUS),
    ("fj", "f", "j", MINUS, MINUS),
    ("dg", "d", "g", MINUS, MINUS),
    ("bc", "b", "c", PLUS, PLUS),
    ("cf", "c", "f", MINUS, PLUS),
    ("bf", "b", "f", PLUS, PLUS),
    ("ab1", "a", "b", PLUS, PLUS),
    ("ab2", "a", "b", PLUS, MINUS),
    ("fg1", "f", "g", MINUS, PLUS),
    ("fg2", "f", "g", MINUS, MINUS),
)

FIG2A_TEMPLATE: Template = (
    ("bc", "b", "c", MINUS, MINUS),
    ("ra", "r", "a", MINUS, PLUS),
    ("db", "d", "b", MINUS, PLUS),
    ("ab1", "a", "b", MINUS, PLUS),
    ("ab2", "a", "b", MINUS, MINUS),
)

FIG3_SHARED: Template = (
    ("rc", "r", "c", MINUS, PLUS),
    ("cb", "c", "b", MINUS, PLUS),
    ("ba", "b", "a", MINUS, PLUS),
    ("ar", "a", "r", MINUS, PLUS),
    ("cd", "c", "d", MINUS, PLUS),
    ("de", "d", "e", MINUS, PLUS),
    ("er", "e", "r", MINUS, PLUS),
)

# one copy, with x/y/z standing for the numbered copy vertices
FIG3_COPY: Template = (
    ("ax", "a", "x", MINUS, PLUS),
    ("ex", "e", "x", MINUS, PLUS),
    ("xy", "x", "y", MINUS, PLUS),
    ("xz", "x", "z", MINUS, PLUS),
    ("dz", "d", "z", PLUS, PLUS),
    ("yb", "y", "b", PLUS, PLUS),
)
FIG3_COPIES = 5

FIG4_TEMPLATE: Template = (
    ("e", "r", "a", MINUS, MINUS),
    ("rb", "r", "b", MINUS, MINUS),
    ("ab", "a", "b", PLUS, PLUS),
    ("f", "a", "x", MINUS, MINUS),
    ("bx", "b", "x", MINUS, MINUS),
)

FIG5_TEMPLATE: Template = FIG1_TEMPLATE


def _build_fig3(template: Template) -> BidirectedGraph:
    shared = template[: len(FIG3_SHARED)]
    copy = template[len(FIG3_SHARED):]
    edges = list(shared)
    for k in range(1, FIG3_COPIES + 1):
        rename = {"x": f"x{k}", "y": f"y{k}", "z": f"z{k}"}
        for eid, u, v, su, sv in copy:
            edges.append((f"{eid}{k}", rename.get(u, u), rename.get(v, v), su, sv))
    return build_graph([], edges, "r")


def _build_plain(template: Template) -> BidirectedGraph:
    return build_graph([], list(template), "r")


def _fig1_expectations() -> list[Expectation]:
    return [
        Expectation("trail_undirectable", "the purple edges are exactly the trail-undirectable ones",
                    {"ab1", "ab2", "bc", "bf", "cf", "fg1", "fg2", "he", "hi", "ie"},
                    lambda B: _undirectable(B, "trail")),
        Expectation("trail_components", "two trail-undirectable components",
                    [["a", "b", "c", "f", "g"], ["e", "h", "i"]],
                    lambda B: [sorted(C) for C in oracle.bf_components(B, "trail")]),
        Expectation("trail_solid", "the orange vertices are the trail-solid ones",
                    {"r", "a", "d", "h", "j"}, lambda B: oracle.bf_solid_vertices(B, "trail")),
        Expectation("trail_skeleton_arcs", "six skeleton arcs with a parallel pair into j",
                    [("a", "d"), ("a", "j"), ("h", "j"), ("h", "j"), ("r", "a"), ("r", "h")],
                    lambda B: _arc_pairs(B, "trail")),
    ]


def _fig2a_expectations() -> list[Expectation]:
    return [
        Expectation("edge_count", "exactly five edges", 5, lambda B: len(B.edges)),
        Expectation("unsigned_lambda_sum", "unsigned path connectivities sum to four", 4, _unsigned_sum),
        Expectation("lambda_path_b", "b has path connectivity one", 1, lambda B: _lam(B, "b")),
        Expectation("all_edges_necessary", "every edge is needed for some signed connectivity",
                    {"ab1", "ab2", "bc", "db", "ra"}, _necessary_edges),
    ]


def _fig3_copy_sum(B: BidirectedGraph, k: int) -> int:
    return _signed_sum(B, [f"x{k}", f"y{k}", f"z{k}"])


def _fig3_expectations() -> list[Expectation]:
    shared = ["a", "b", "c", "d", "e"]
    return [
        Expectation("edge_counts", "seven shared edges and six per copy",
                    (7, [6] * FIG3_COPIES),
                    lambda B: (
                        sum(1 for e in B.edges if not any(ch.isdigit() for ch in e.id)),
                        [sum(1 for e in B.edges if e.id.endswith(str(k))) for k in range(1, FIG3_COPIES + 1)],
                    )),
        Expectation("shared_signed_sum", "signed connectivities of the shared vertices sum to 11", 11,
                    lambda B: _signed_sum(B, shared)),
        Expectation("copy_signed_sums", "each copy contributes five", [5] * FIG3_COPIES,
                    lambda B: [_fig3_copy_sum(B, k) for k in range(1, FIG3_COPIES + 1)]),
        Expectation("edges_exceed_budget", "37 edges against a budget of 36", (37, 36),
                    lambda B: (len(B.edges), sum(_signed_table(B).values()))),
        Expectation("all_edges_necessary", "deleting any single edge lowers a signed connectivity", 37,
                    lambda B: len(_necessary_edges(B))),
        Expectation("edge_clean", "the graph has a nontrivial root trail", False,
                    lambda B: not oracle.reach_table(B, max_edges=FIGURE_EDGE_LIMIT).rr_trail),
    ]


def _fig4_expectations() -> list[Expectation]:
    return [
        Expectation("path_starting_with_e", "some r-x path starts with e", True,
                    lambda B: any(T.edges[0].edge == "e" for T in _root_paths(B, "x"))),
        Expectation("path_ending_with_f", "some r-x path ends with f", True,
                    lambda B: any(T.edges[-1].edge == "f" for T in _root_paths(B, "x"))),
        Expectation("lambda_path_x", "no two edge-disjoint r-x paths", 1, lambda B: _lam(B, "x")),
        Expectation("path_with_e_and_f", "no r-x path uses both e and f", False,
                    lambda B: any({"e", "f"} <= set(T.edge_ids) for T in _root_paths(B, "x"))),
        Expectation("covering_family", "no family covers first edge e and last edge f", False,
                    lambda B: oracle.bf_pym_exists(B, "x", ["e"], ["f"]) is not None),
        Expectation("edge_clean", "the graph has a nontrivial root trail", False, oracle.bf_is_edge_clean),
    ]


def _fig5_expectations() -> list[Expectation]:
    return [
        Expectation("plain_vertices", "the orange vertices form the plain set", {"a", "c", "d", "f", "h", "j"},
                    oracle.bf_plain_vertices),
        Expectation("undirectable", "the purple edges are exactly the undirectable ones",
                    {"ab1", "ab2", "fg1", "fg2", "he", "hi", "ie"}, lambda B: _undirectable(B, "almost-path")),
        Expectation("skeleton_vertices", "the skeleton lives on r and the plain set",
                    {"r", "a", "c", "d", "f", "h", "j"}, lambda B: oracle.bf_solid_vertices(B, "almost-path")),
        Expectation("skeleton_arcs", "nine skeleton arcs with a parallel pair into j",
                    [("a", "c"), ("a", "f"), ("c", "f"), ("f", "d"), ("f", "j"), ("h", "j"), ("h", "j"),
                     ("r", "a"), ("r", "h")],
                    lambda B: _arc_pairs(B, "almost-path")),
    ]


@dataclass(frozen=True)
class FigureRecipe:
    name: str
    template: Template
    build: Callable[[Template], BidirectedGraph]
    expectations: Callable[[], list[Expectation]]


FIGURES: tuple[FigureRecipe, ...] = (
    FigureRecipe("Fig1", FIG1_TEMPLATE, _build_plain, _fig1_expectations),
    FigureRecipe("Fig2a", FIG2A_TEMPLATE, _build_plain, _fig2a_expectations),
    FigureRecipe("Fig3", FIG3_SHARED + FIG3_COPY, _build_fig3, _fig3_expectations),
    FigureRecipe("Fig4", FIG4_TEMPLATE, _build_plain, _fig4_expectations),
    FigureRecipe("Fig5", FIG5_TEMPLATE, _build_plain, _fig5_expectations),
)


def _single_flips(template: Template) -> Iterator[tuple[str, Template]]:
    for i, (eid, u, v, su, sv) in enumerate(template):
        for end in (0, 1):
            row = (eid, u, v, -su, sv) if end == 0 else (eid, u, v, su, -sv)
            where = u if end == 0 else v
            yield f"flipped {eid} at {where}", tuple(template[:i]) + (row,) + tuple(template[i + 1:])


def reconstruct_figure(recipe: FigureRecipe, log: list[str] | None = None) -> Fixture:
    """Pick the first signing (transcription, then single flips) meeting every caption fact."""
    log = [] if log is None else log
    expectations = tuple(recipe.expectations())
    candidates = [("as transcribed", tuple(recipe.template))]
    candidates += list(_single_flips(recipe.template))
    for note, template in candidates:
        B = recipe.build(template)
        outcomes = [x.evaluate(B) for x in expectations]
        failed = [o.name for o in outcomes if not o.ok]
        if not failed:
            log.append(f"{recipe.name}: signing {note}; {len(outcomes)} facts confirmed by the oracle")
            for o in outcomes:
                log.append(f"  {o.name}: {json.dumps(o.observed)}")
            return Fixture(recipe.name, "figure", B, expectations, note)
        if note == "as transcribed":
            log.append(f"{recipe.name}: transcription fails {failed}; searching single flips")
    raise ReconstructionFailed(f"no signing of {recipe.name} satisfies its caption facts", figure=recipe.name)


def reconstruct_figures() -> FixtureCorpus:
    log: list[str] = []
    figures = [reconstruct_figure(r, log) for r in FIGURES]
    return FixtureCorpus(tuple(hand_fixtures()) + tuple(figures), tuple(log))


_CORPUS: FixtureCorpus | None = None


def corpus() -> FixtureCorpus:
    """The full fixture corpus, built once per process."""
    global _CORPUS
    if _CORPUS is None:
        _CORPUS = reconstruct_figures()
    return _CORPUS


def fixture_graph(name: str) -> BidirectedGraph:
    """A fixture graph without re-running the verification."""
    for f in hand_fixtures():
        if f.name == name:
            return f.graph
    for r in FIGURES:
        if r.name == name:
            return r.build(r.template)
    raise KeyError(name)


FIXTURE_NAMES = ("F0", "F1", "F2", "F3") + tuple(r.name for r in FIGURES)


# ---------------------------------------------------------------------------
# on-disk corpus


def write_corpus(directory: str | Path, corp: FixtureCorpus | None = None) -> list[Path]:
    """Write ``<name>.bg``, ``<name>.expect.json`` and the verification transcript."""
    corp = corpus() if corp is None else corp
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for f in corp.fixtures:
        p = out / f"{f.name}.bg"
        p.write_text(to_text(f.graph))
        q = out / f"{f.name}.expect.json"
        q.write_text(json.dumps(f.expectation_json(), indent=2, sort_keys=True) + "\n")
        written += [p, q]
    t = out / "transcript.txt"
    t.write_text("\n".join(corp.transcript) + "\n")
    written.append(t)
    return written


def read_graph(path: str | Path) -> BidirectedGraph:
    return parse_text(Path(path).read_text())
