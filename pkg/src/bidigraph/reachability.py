"""Root reachability oracles with witnesses.

Trail questions go through the half-edge gadget of :mod:`.matching`; path
questions go through the matched graph, where a signed path is exactly an
alternating path between two signed nodes.  Every positive answer carries a
witness walk that has been re-validated with :func:`core.validate_trail`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import (
    SIGNS,
    BidirectedGraph,
    OrientedEdge,
    Sign,
    Trail,
    validate_trail,
)
from .errors import InternalInconsistency, RootTarget, SameVertex, UnknownVertex
from .matching import (
    MatchedGraph,
    TrailGadget,
    alternating_path,
    build_trail_gadget,
    to_matched_graph,
)

REGIMES = ("trail", "almost-path")
MODES = ("trail", "path", "almost-path")


@dataclass(frozen=True)
class Witnessed:
    """A yes/no answer plus the walk that proves a yes."""

    found: bool
    witness: Trail | None = None

    def __bool__(self) -> bool:
        return self.found

    def __iter__(self):
        return iter((self.found, self.witness))


NO = Witnessed(False, None)


@lru_cache(maxsize=4096)
def _gadget(B: BidirectedGraph) -> TrailGadget:
    return build_trail_gadget(B)


@lru_cache(maxsize=4096)
def _matched(B: BidirectedGraph) -> MatchedGraph:
    return to_matched_graph(B)


def _trail_from_half_edges(B: BidirectedGraph, halves: list) -> Trail:
    seq = [halves[0][1]]
    for i in range(0, len(halves), 2):
        (e1, _), (e2, head) = halves[i], halves[i + 1]
        if e1 != e2:
            raise InternalInconsistency("gadget path left an edge mid-traversal")
        seq += [e1, head]
    return validate_trail(B, seq)


def _check_orientation(B: BidirectedGraph, o: OrientedEdge) -> None:
    e = B.edge(o.edge)
    if {o.tail, o.head} != {e.u, e.v}:
        raise UnknownVertex(f"{o} does not orient {e.id}", edge=e.id)


def trail_reachable(B: BidirectedGraph, o: OrientedEdge) -> Witnessed:
    """Is there an r-trail whose last edge is ``o``?"""
    B.require_root()
    _check_orientation(B, o)
    halves = _gadget(B).search([(o.edge, o.head)])
    if halves is None:
        return NO
    T = _trail_from_half_edges(B, halves)
    if T.edges[-1] != o or not T.is_r_trail:
        raise InternalInconsistency("trail witness does not end with the requested orientation")
    return Witnessed(True, T)


def trail_reachable_signed(B: BidirectedGraph, v: str, alpha: Sign) -> Witnessed:
    """Is there an r-trail arriving at ``v`` with sign ``alpha``?"""
    r = B.require_root()
    if v == r:
        raise RootTarget("use nontrivial_root_trail for the root", vertex=v)
    sinks = [(f.id, v) for f in B.incident(v) if f.sign_at(v) == alpha]
    halves = _gadget(B).search(sinks)
    if halves is None:
        return NO
    T = _trail_from_half_edges(B, halves)
    if T.end != v or T.end_sign != alpha:
        raise InternalInconsistency("signed trail witness ends wrongly")
    return Witnessed(True, T)


def nontrivial_root_trail(B: BidirectedGraph) -> Witnessed:
    """A nontrivial r-r trail, if one exists."""
    r = B.require_root()
    halves = _gadget(B).search([(f.id, r) for f in B.incident(r)])
    if halves is None:
        return NO
    return Witnessed(True, _trail_from_half_edges(B, halves))


def _path_from_nodes(B: BidirectedGraph, MG: MatchedGraph, nodes: list) -> Trail:
    seq = [nodes[0][0]]
    pending_sub: str | None = None
    for i in range(0, len(nodes), 2):
        a, b = nodes[i], nodes[i + 1]
        ue = MG.graph.between(a, b)
        origin = MG.edge_origin[ue.id]
        if origin in MG.subdivisions:
            if pending_sub is None:
                pending_sub = origin
                continue
            if pending_sub != origin:
                raise InternalInconsistency("path entered a subdivision vertex and left by another edge")
            pending_sub = None
        seq += [origin, b[0]]
    if pending_sub is not None:
        raise InternalInconsistency("path ended inside a subdivided edge")
    return validate_trail(B, seq)


def path_exists(B: BidirectedGraph, x: str, alpha: Sign, y: str, beta: Sign) -> Witnessed:
    """Is there an x-y path leaving x with sign ``alpha`` and entering y with sign ``beta``?"""
    if x == y:
        raise SameVertex("trivial paths are handled by callers", vertex=x)
    B.incident(x)
    B.incident(y)
    MG = _matched(B)
    nodes = alternating_path(MG, (x, alpha), (y, beta))
    if nodes is None:
        return NO
    P = _path_from_nodes(B, MG, nodes)
    if not P.is_path or P.start_sign != alpha or P.end_sign != beta or P.end != y:
        raise InternalInconsistency("path witness violates its signature")
    return Witnessed(True, P)


def _extend(B: BidirectedGraph, P: Trail, o: OrientedEdge) -> Trail:
    return validate_trail(B, P.sequence() + [o.edge, o.head])


def _root_edge_walk(B: BidirectedGraph, o: OrientedEdge) -> Trail:
    return validate_trail(B, [o.tail, o.edge, o.head])


def path_reachable(B: BidirectedGraph, o: OrientedEdge) -> Witnessed:
    """Is there an r-path whose last edge is ``o``?"""
    r = B.require_root()
    _check_orientation(B, o)
    u, v = o.tail, o.head
    if u == r:
        return Witnessed(True, _root_edge_walk(B, o))
    if v == r:
        return NO
    need = -B.sign(o.edge, u)
    Bv = B.without_vertices({v})
    for gamma in SIGNS:
        hit = path_exists(Bv, r, gamma, u, need)
        if hit:
            return Witnessed(True, _extend(B, hit.witness, o))
    return NO


def almost_path_reachable(B: BidirectedGraph, o: OrientedEdge) -> Witnessed:
    """Is there an almost path from r whose last edge is ``o``?"""
    r = B.require_root()
    _check_orientation(B, o)
    u = o.tail
    if u == r:
        return Witnessed(True, _root_edge_walk(B, o))
    need = -B.sign(o.edge, u)
    Be = B.without_edges({o.edge})
    for gamma in SIGNS:
        hit = path_exists(Be, r, gamma, u, need)
        if hit:
            return Witnessed(True, _extend(B, hit.witness, o))
    return NO


_ORACLES = {
    "trail": trail_reachable,
    "path": path_reachable,
    "almost-path": almost_path_reachable,
}


def reachable(B: BidirectedGraph, o: OrientedEdge, mode: str) -> Witnessed:
    return _ORACLES[mode](B, o)


@dataclass(frozen=True)
class EdgeClassification:
    edge: str
    regime: str
    status: str  # "unreachable", "directable" or "undirectable"
    natural: OrientedEdge | None = None
    witnesses: tuple[Trail, ...] = ()

    def to_json(self) -> dict:
        out = {"edge": self.edge, "regime": self.regime, "status": self.status}
        if self.natural is not None:
            out["natural"] = [self.natural.tail, self.natural.head]
        return out


def classify_edge(B: BidirectedGraph, eid: str, regime: str) -> EdgeClassification:
    if regime not in REGIMES:
        raise ValueError(f"unknown regime {regime!r}")
    B.edge(eid)
    return classify_all(B, regime)[eid]


@lru_cache(maxsize=2048)
def classify_all(B: BidirectedGraph, regime: str) -> dict[str, EdgeClassification]:
    if regime not in MODES:
        raise ValueError(f"unknown regime {regime!r}")
    out = {}
    for e in B.edges:
        hits = []
        for o in e.orientations():
            w = reachable(B, o, regime)
            if w:
                hits.append((o, w.witness))
        if not hits:
            out[e.id] = EdgeClassification(e.id, regime, "unreachable")
        elif len(hits) == 1:
            out[e.id] = EdgeClassification(e.id, regime, "directable", hits[0][0], (hits[0][1],))
        else:
            out[e.id] = EdgeClassification(e.id, regime, "undirectable", None, tuple(w for _, w in hits))
    return out


def signed_path_reachable(B: BidirectedGraph, v: str, alpha: Sign) -> Witnessed:
    """Is there an r-path arriving at ``v`` with sign ``alpha``?"""
    r = B.require_root()
    if v == r:
        raise RootTarget("the root has no arrival signs", vertex=v)
    for f in B.incident(v):
        if f.sign_at(v) != alpha:
            continue
        hit = path_reachable(B, OrientedEdge(f.id, f.other(v), v))
        if hit:
            return hit
    return NO


@lru_cache(maxsize=2048)
def plain_vertices(B: BidirectedGraph) -> frozenset[str]:
    """Non-root vertices that some arrival sign cannot reach by an r-path."""
    r = B.require_root()
    return frozenset(
        v for v in B.vertices if v != r and not all(signed_path_reachable(B, v, s) for s in SIGNS)
    )


@lru_cache(maxsize=2048)
def is_edge_clean(B: BidirectedGraph) -> bool:
    return not nontrivial_root_trail(B)


def nontrivial_root_almost_path(B: BidirectedGraph) -> Witnessed:
    r = B.require_root()
    for e in B.incident(r):
        hit = almost_path_reachable(B, OrientedEdge(e.id, e.other(r), r))
        if hit:
            return hit
    return NO


@lru_cache(maxsize=2048)
def is_clean(B: BidirectedGraph) -> bool:
    return not nontrivial_root_almost_path(B)


@lru_cache(maxsize=2048)
def restrict(B: BidirectedGraph, mode: str) -> BidirectedGraph:
    """Drop every edge with no reachable orientation in ``mode``; vertices stay."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    table = classify_all(B, mode)
    return B.edge_subgraph([eid for eid, c in table.items() if c.status != "unreachable"])


def is_reachable_in(B: BidirectedGraph, mode: str) -> bool:
    return all(c.status != "unreachable" for c in classify_all(B, mode).values())
