"""Menger-type connectivities with disjoint families and cut certificates.

Edge connectivities run a unit-capacity max-flow on the trail-skeleton and lift
the flow paths back; vertex connectivity runs the path version on the auxiliary
split graph and contracts the result.  Every cut is re-measured on the base
graph before it is returned.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .core import (
    MINUS,
    PLUS,
    SIGNS,
    BidirectedGraph,
    Digraph,
    DiPath,
    Edge,
    OrientedEdge,
    Sign,
    Trail,
    build_graph,
    dipath,
    validate_trail,
)
from .decomposition import (
    Decomposition,
    _connector,
    auxiliary_graph,
    component_host,
    g_contract,
    lift_path,
    lift_trail,
    trail_skeleton,
)
from .errors import (
    FormatError,
    InternalInconsistency,
    NotClean,
    NotEdgeClean,
    RootTargetEdge,
    SameVertex,
    TargetIsRoot,
    UnknownVertex,
    XXPathExists,
)
from .reachability import (
    classify_all,
    is_clean,
    is_edge_clean,
    path_exists,
    path_reachable,
    restrict,
    signed_path_reachable,
    trail_reachable_signed,
)

EDGE_KINDS = ("trail", "path")


@dataclass(frozen=True)
class FlowResult:
    value: int
    paths: tuple[DiPath, ...]
    cut: frozenset[str]
    boundary: tuple[str, ...]


def maxflow_paths(D: Digraph, x: str) -> FlowResult:
    """Edge-disjoint root-to-``x`` paths by augmenting BFS, with the residual min cut."""
    r = D.root
    if r == x:
        raise SameVertex("source and target coincide", vertex=x)
    if x not in D.vertices:
        raise UnknownVertex(f"no vertex {x!r}", vertex=x)
    flow: dict[str, int] = {a.id: 0 for a in D.arcs}

    def residual_search() -> dict[str, tuple[str, bool] | None]:
        prev: dict[str, tuple[str, bool] | None] = {r: None}
        queue = deque([r])
        while queue:
            v = queue.popleft()
            if v == x:
                break
            for a in D.out_arcs(v):
                if not flow[a.id] and a.head not in prev:
                    prev[a.head] = (a.id, True)
                    queue.append(a.head)
            for a in D.in_arcs(v):
                if flow[a.id] and a.tail not in prev:
                    prev[a.tail] = (a.id, False)
                    queue.append(a.tail)
        return prev

    while True:
        prev = residual_search()
        if x not in prev:
            break
        v = x
        while prev[v] is not None:
            aid, forward = prev[v]
            a = D.arc(aid)
            flow[aid] = 1 if forward else 0
            v = a.tail if forward else a.head
    cut = frozenset(v for v in D.vertices if v not in prev)
    boundary = tuple(sorted(a.id for a in D.arcs if a.head in cut and a.tail not in cut))
    paths = _decompose(D, r, x, flow)
    if len(paths) != len(boundary):
        raise InternalInconsistency("flow value differs from cut size", value=len(paths), cut=len(boundary))
    return FlowResult(len(paths), tuple(paths), cut, boundary)


def _decompose(D: Digraph, r: str, x: str, flow: dict[str, int]) -> list[DiPath]:
    left = {aid for aid, f in flow.items() if f}
    paths = []
    while True:
        start = [a for a in D.out_arcs(r) if a.id in left]
        if not start:
            break
        verts, arcs = [r], []
        while verts[-1] != x:
            a = next(a for a in D.out_arcs(verts[-1]) if a.id in left)
            left.discard(a.id)
            if a.head in verts:
                k = verts.index(a.head)
                del verts[k + 1 :]
                del arcs[k:]
            else:
                verts.append(a.head)
                arcs.append(a.id)
        paths.append(dipath(D, r, arcs))
    return paths


@dataclass(frozen=True)
class CutWitness:
    kind: str  # "edge-trail", "edge-path", "vertex" or "set-vertex"
    side: frozenset[str]
    boundary: tuple[str, ...]

    def to_json(self) -> dict:
        return {"kind": self.kind, "X": sorted(self.side), "boundary": list(self.boundary)}


@dataclass(frozen=True)
class MengerResult:
    value: int
    family: tuple[Trail, ...]
    cut: CutWitness | None

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "family": [T.to_json() for T in self.family],
            "cut": None if self.cut is None else self.cut.to_json(),
        }


def _reached(B: BidirectedGraph, regime: str) -> set[OrientedEdge]:
    out = set()
    for e in B.edges:
        c = classify_all(B, regime)[e.id]
        if c.status == "directable":
            out.add(c.natural)
        elif c.status == "undirectable":
            out.update(e.orientations())
    return out


def delta(B: BidirectedGraph, X: Iterable[str], regime: str) -> tuple[str, ...]:
    """Edges with a regime-reachable orientation entering ``X``."""
    X = set(X)
    return tuple(sorted({o.edge for o in _reached(B, regime) if o.head in X and o.tail not in X}))


def epsilon(B: BidirectedGraph, X: Iterable[str]) -> tuple[str, ...]:
    """Vertices of ``X`` entered from outside by a path-reachable orientation."""
    X = set(X)
    return tuple(sorted({o.head for o in _reached(B, "path") if o.head in X and o.tail not in X}))


def _check_target(B: BidirectedGraph, x: str) -> str:
    r = B.require_root()
    if not B.has_vertex(x):
        raise UnknownVertex(f"no vertex {x!r}", vertex=x)
    if x == r:
        raise TargetIsRoot("the target must differ from the root", vertex=x)
    return r


def _require_edge_clean(B: BidirectedGraph) -> None:
    if not is_edge_clean(B):
        raise NotEdgeClean("graph has a nontrivial root-root trail; the edge Menger equalities need edge-cleanness")


@lru_cache(maxsize=1024)
def _regime_graph(B: BidirectedGraph, regime: str) -> tuple[BidirectedGraph, Decomposition]:
    Br = restrict(B, regime)
    return Br, trail_skeleton(Br)


def _lambda_edge(B: BidirectedGraph, x: str, regime: str) -> MengerResult:
    _check_target(B, x)
    _require_edge_clean(B)
    Br, TD = _regime_graph(B, regime)
    kind = f"edge-{regime}"
    lift = lift_trail if regime == "trail" else lift_path
    anchor = TD.contraction[x]
    if anchor == x:
        res = maxflow_paths(TD.skeleton, x)
        family = tuple(lift(TD, P) for P in res.paths)
        side = set(res.cut)
        for C in TD.components:
            if C.anchor in side:
                side |= C.vertices
        value = res.value
    else:
        C = TD.component_of(x)
        family = (_component_walk(Br, TD, C, x, regime),)
        side = set(C.vertices)
        value = 1
    boundary = delta(B, side, regime)
    _check_family(family, x, "edge")
    if len(boundary) != value or len(family) != value:
        raise InternalInconsistency(
            f"{kind} certificate mismatch", value=value, family=len(family), boundary=len(boundary)
        )
    return MengerResult(value, family, CutWitness(kind, frozenset(side), boundary))


def _component_walk(Br: BidirectedGraph, TD: Decomposition, C, x: str, regime: str) -> Trail:
    if regime == "path":
        for s in SIGNS:
            hit = signed_path_reachable(Br, x, s)
            if hit:
                return hit.witness
        raise InternalInconsistency(f"component vertex {x} has no r-path")
    head = lift_trail(TD, maxflow_paths(TD.skeleton, C.anchor).paths[0])
    for s in SIGNS:
        if trail_reachable_signed(component_host(TD, C), x, s):
            conn = _connector(TD, C.index, x, s)
            return validate_trail(Br, head.sequence() + conn.sequence()[3:])
    raise InternalInconsistency(f"component vertex {x} has no confined trail")


def _check_family(family: Sequence[Trail], x: str, disjoint: str) -> None:
    used: set[str] = set()
    inner: set[str] = set()
    for T in family:
        if T.end != x or not T.edges:
            raise InternalInconsistency("family member does not end at the target")
        ids = set(T.edge_ids)
        if ids & used:
            raise InternalInconsistency("family is not edge-disjoint")
        used |= ids
        if disjoint == "vertex":
            mids = set(T.vertices[1:-1])
            if mids & inner:
                raise InternalInconsistency("family is not internally vertex-disjoint")
            inner |= mids


def lambda_trail(B: BidirectedGraph, x: str) -> MengerResult:
    """Maximum edge-disjoint r-trails to ``x`` with a minimum trail cut."""
    return _lambda_edge(B, x, "trail")


def lambda_path(B: BidirectedGraph, x: str) -> MengerResult:
    """Maximum edge-disjoint r-paths to ``x`` with a minimum path cut."""
    return _lambda_edge(B, x, "path")


def lambda_signed(B: BidirectedGraph, x: str, sign: Sign, regime: str) -> int:
    """Edge-disjoint r-walks of ``regime`` arriving at ``x`` with ``sign``.

    In an edge-clean graph every target outside the undirectable components is
    only ever entered with one sign, and component targets have connectivity 1,
    so the signed value is the unsigned one or zero.
    """
    if regime not in EDGE_KINDS:
        raise ValueError(f"unknown regime {regime!r}")
    _check_target(B, x)
    _require_edge_clean(B)
    reach = trail_reachable_signed if regime == "trail" else signed_path_reachable
    if not reach(B, x, sign):
        return 0
    return _lambda_edge(B, x, regime).value


# ---------------------------------------------------------------------------
# vertex connectivity


def in_vertices(B: BidirectedGraph, x: str) -> frozenset[str]:
    """Second-to-last vertices (other than r) of r-paths ending at ``x``."""
    r = _check_target(B, x)
    out = set()
    for e in B.incident(x):
        v = e.other(x)
        if v != r and path_reachable(B, OrientedEdge(e.id, v, x)):
            out.add(v)
    return frozenset(out)


def _require_clean(B: BidirectedGraph) -> None:
    if not is_clean(B):
        raise NotClean("graph has a nontrivial root-root almost path; vertex Menger needs cleanness")


def _split_target(B: BidirectedGraph, x: str) -> tuple:
    AG = auxiliary_graph(B)
    if x not in AG.plain:
        return AG, x, lambda_path(AG.graph, x)
    best = None
    for s in (PLUS, MINUS):
        res = lambda_path(AG.graph, AG.node(x, s))
        if best is None or res.value > best[2].value:
            best = (AG, AG.node(x, s), res)
    return best


def kappa(B: BidirectedGraph, x: str, *, require_cut: bool = False) -> MengerResult:
    """Maximum internally vertex-disjoint r-paths to ``x``.

    The cut certificate needs ``x`` non-adjacent to r; otherwise it is withheld
    (or ``RootTargetEdge`` is raised when ``require_cut`` is set).
    """
    r = _check_target(B, x)
    _require_clean(B)
    AG, star, res = _split_target(B, x)
    family = tuple(g_contract(AG, T) for T in res.family)
    _check_family(family, x, "vertex")
    adjacent = any(e.other(x) == r for e in B.incident(x))
    if adjacent:
        if require_cut:
            raise RootTargetEdge("root and target are adjacent; no vertex cut exists", vertex=x)
        return MengerResult(res.value, family, None)
    side = {AG.origin[v] for v in res.cut.side} | in_vertices(B, x)
    boundary = epsilon(B, side)
    if len(boundary) != res.value:
        raise InternalInconsistency("vertex cut size differs from the connectivity", value=res.value, cut=len(boundary))
    return MengerResult(res.value, family, CutWitness("vertex", frozenset(side), boundary))


def kappa_signed(B: BidirectedGraph, x: str, sign: Sign) -> int:
    """Internally vertex-disjoint r-paths arriving at ``x`` with ``sign``."""
    _check_target(B, x)
    _require_clean(B)
    AG = auxiliary_graph(B)
    node = AG.node(x, sign) if x in AG.plain else x
    return lambda_signed(AG.graph, node, sign, "path")


# ---------------------------------------------------------------------------
# X-Y version

SOURCE_APEX = "@source"
SINK_APEX = "@sink"


@dataclass(frozen=True)
class ApexGraph:
    base: BidirectedGraph
    graph: BidirectedGraph
    sources: frozenset[str]
    sinks: frozenset[str]


def require_no_xx_path(B: BidirectedGraph, X: Iterable[str]) -> None:
    X = sorted(set(X))
    for a in X:
        for b in X:
            if a == b:
                continue
            for s in SIGNS:
                for t in SIGNS:
                    hit = path_exists(B, a, s, b, t)
                    if hit:
                        raise XXPathExists(
                            f"nontrivial path between {a} and {b} inside the source set",
                            path=hit.witness.to_json(),
                        )


def apex_graph(B: BidirectedGraph, X: Iterable[str], Y: Iterable[str], *, normalize_sinks: bool = False) -> ApexGraph:
    """Root the graph at a new source apex joined to ``X`` and add a sink apex joined to ``Y``.

    Signs at ``X`` (and at ``Y`` when ``normalize_sinks``) are rewritten to +; each
    sink gets one edge per sign so that every arrival can finish at the apex.
    """
    X, Y = frozenset(X), frozenset(Y)
    for v in X | Y:
        if not B.has_vertex(v):
            raise UnknownVertex(f"no vertex {v!r}", vertex=v)
    for name in (SOURCE_APEX, SINK_APEX):
        if B.has_vertex(name):
            raise FormatError(f"vertex name {name} is reserved", vertex=name)
    plus_at = X | (Y if normalize_sinks else frozenset())
    edges = []
    for e in B.edges:
        su = PLUS if e.u in plus_at else e.su
        sv = PLUS if e.v in plus_at else e.sv
        edges.append(Edge(e.id, e.u, e.v, su, sv))
    for x in sorted(X):
        edges.append(Edge(f"{SOURCE_APEX}:{x}", SOURCE_APEX, x, PLUS, MINUS))
    for y in sorted(Y):
        for s in (MINUS,) if normalize_sinks and y not in X else SIGNS:
            edges.append(Edge(f"{SINK_APEX}:{y}:{s}", y, SINK_APEX, s, PLUS))
    G = build_graph(list(B.vertices) + [SOURCE_APEX, SINK_APEX], edges, SOURCE_APEX)
    return ApexGraph(B, G, X, Y)


def strip_apexes(A: ApexGraph, T: Trail) -> Trail:
    """The X-Y path inside an apex-to-apex path: from its source to its first sink."""
    inner = list(T.vertices[1:-1])
    ids = list(T.edge_ids[1:-1])
    k = next(i for i, v in enumerate(inner) if v in A.sinks)
    seq = [inner[0]]
    for eid, v in zip(ids[:k], inner[1 : k + 1]):
        seq += [eid, v]
    return validate_trail(A.base, seq)


def set_epsilon(B: BidirectedGraph, X: Iterable[str], W: Iterable[str]) -> tuple[str, ...]:
    """Vertices of ``W`` hit by an X-path that is trivial or enters from outside ``W``."""
    X, W = frozenset(X), frozenset(W)
    A = apex_graph(B, X, ())
    out = set()
    for v in W:
        if v in X:
            out.add(v)
            continue
        for e in B.incident(v):
            u = e.other(v)
            if u in W:
                continue
            if path_reachable(A.graph, OrientedEdge(e.id, u, v)):
                out.add(v)
                break
    return tuple(sorted(out))


def set_menger(B: BidirectedGraph, X: Iterable[str], Y: Iterable[str]) -> MengerResult:
    """Maximum vertex-disjoint X-Y paths with a minimum separating set ``W ⊇ Y``."""
    X, Y = frozenset(X), frozenset(Y)
    require_no_xx_path(B, X)
    A = apex_graph(B, X, Y)
    res = kappa(A.graph, SINK_APEX)
    family = tuple(strip_apexes(A, T) for T in res.family)
    seen: set[str] = set()
    for P in family:
        if set(P.vertices) & seen:
            raise InternalInconsistency("X-Y family is not vertex-disjoint")
        seen |= set(P.vertices)
    candidates = [Y]
    if res.cut is not None:
        candidates.append((res.cut.side - {SINK_APEX}) | Y)
    for W in candidates:
        boundary = set_epsilon(B, X, W)
        if len(boundary) == res.value:
            return MengerResult(res.value, family, CutWitness("set-vertex", frozenset(W), boundary))
    raise InternalInconsistency("no separating set matches the X-Y connectivity", value=res.value)


# ---------------------------------------------------------------------------
# tables


@dataclass(frozen=True)
class SignedConnectivity:
    trail: int
    path: int
    vertex: int | None


def signed_table(B: BidirectedGraph, *, with_vertex: bool | None = None) -> dict[tuple[str, Sign], SignedConnectivity]:
    """Signed λ^trail, λ^path and (for clean graphs) κ for every non-root signed vertex."""
    r = B.require_root()
    _require_edge_clean(B)
    if with_vertex is None:
        with_vertex = is_clean(B)
    out = {}
    for v in B.vertices:
        if v == r:
            continue
        for s in SIGNS:
            out[(v, s)] = SignedConnectivity(
                lambda_signed(B, v, s, "trail"),
                lambda_signed(B, v, s, "path"),
                kappa_signed(B, v, s) if with_vertex else None,
            )
    return out
