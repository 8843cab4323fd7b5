"""Pym-type linkages: one disjoint family covering the starts of P and the ends of Q."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .connectivity import SINK_APEX, SOURCE_APEX, apex_graph, require_no_xx_path, strip_apexes
from .core import MINUS, PLUS, BidirectedGraph, Digraph, DiPath, Sign, Trail, dipath, validate_trail
from .decomposition import auxiliary_graph, g_contract, g_inverse, lift_path, project_trail, trail_skeleton
from .errors import (
    BidiError,
    InfeasibleLowerBounds,
    InternalInconsistency,
    InvalidFamily,
    NotClean,
    NotEdgeClean,
)
from .reachability import is_clean, is_edge_clean, restrict


# ---------------------------------------------------------------------------
# flows with lower bounds


@dataclass(frozen=True)
class LowerBoundNetwork:
    digraph: Digraph
    required: frozenset[str]
    source: str
    sink: str


def _max_flow(nodes: Iterable, arcs: Sequence[tuple], s, t) -> tuple[int, list[int]]:
    """Edmonds-Karp on ``arcs = [(tail, head, capacity), ...]``; returns value and per-arc flow."""
    graph: dict = {v: [] for v in nodes}
    to, cap = [], []
    for u, v, c in arcs:
        graph[u].append(len(to))
        to.append(v)
        cap.append(c)
        graph[v].append(len(to))
        to.append(u)
        cap.append(0)
    value = 0
    while True:
        prev = {s: None}
        queue = deque([s])
        while queue and t not in prev:
            u = queue.popleft()
            for k in graph[u]:
                if cap[k] > 0 and to[k] not in prev:
                    prev[to[k]] = k
                    queue.append(to[k])
        if t not in prev:
            break
        push, v = None, t
        while prev[v] is not None:
            k = prev[v]
            push = cap[k] if push is None else min(push, cap[k])
            v = to[k ^ 1]
        v = t
        while prev[v] is not None:
            k = prev[v]
            cap[k] -= push
            cap[k ^ 1] += push
            v = to[k ^ 1]
        value += push
    flows = [cap[2 * i + 1] for i in range(len(arcs))]
    return value, flows


def feasible_flow(net: LowerBoundNetwork) -> dict[str, int]:
    """An integral source-sink flow with unit capacities and lower bound 1 on required arcs."""
    D, r, x = net.digraph, net.source, net.sink
    S, T = ("@excess",), ("@deficit",)
    arcs, keys = [], []
    for a in D.arcs:
        arcs.append((a.tail, a.head, 0 if a.id in net.required else 1))
        keys.append(a.id)
    big = len(D.arcs) + 1
    arcs.append((x, r, big))
    keys.append(None)
    for aid in sorted(net.required):
        a = D.arc(aid)
        arcs.append((S, a.head, 1))
        keys.append(None)
        arcs.append((a.tail, T, 1))
        keys.append(None)
    value, flows = _max_flow(list(D.vertices) + [S, T], arcs, S, T)
    if value != len(net.required):
        raise InfeasibleLowerBounds("no flow meets the lower bounds", required=sorted(net.required))
    out = {}
    for key, f in zip(keys, flows):
        if key is not None:
            out[key] = f + (1 if key in net.required else 0)
    return out


def _paths_from_flow(D: Digraph, r: str, x: str, flow: dict[str, int]) -> list[DiPath]:
    left = {aid for aid, f in flow.items() if f}
    paths = []
    for first in sorted(a.id for a in D.out_arcs(r) if a.id in left):
        left.discard(first)
        verts, arcs = [r, D.arc(first).head], [first]
        while verts[-1] != x:
            a = min((a for a in D.out_arcs(verts[-1]) if a.id in left), key=lambda a: a.id)
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


def _check_dipaths(D: Digraph, x: str, family: Sequence[DiPath], name: str) -> None:
    used: set[str] = set()
    for P in family:
        if P.start != D.root or P.end != x or not P.arcs or not P.is_path():
            raise InvalidFamily(f"{name} holds a walk that is not a root-target path", family=name)
        try:
            dipath(D, D.root, P.arcs)
        except BidiError as exc:
            raise InvalidFamily(f"{name} holds an invalid path: {exc}", family=name) from None
        if used & set(P.arcs):
            raise InvalidFamily(f"{name} is not edge-disjoint", family=name)
        used |= set(P.arcs)


def directed_edge_pym(D: Digraph, x: str, P: Sequence[DiPath], Q: Sequence[DiPath]) -> list[DiPath]:
    """Edge-disjoint root-``x`` paths using every first arc of ``P`` and every last arc of ``Q``."""
    _check_dipaths(D, x, P, "P")
    _check_dipaths(D, x, Q, "Q")
    r = D.root
    cut = D.without_arcs([a.id for a in D.in_arcs(r)] + [a.id for a in D.out_arcs(x)])
    required = frozenset({p.arcs[0] for p in P} | {q.arcs[-1] for q in Q})
    flow = feasible_flow(LowerBoundNetwork(cut, required, r, x))
    R = _paths_from_flow(cut, r, x, flow)
    R = [dipath(D, r, p.arcs) for p in R]
    covered = {p.arcs[0] for p in R} | {p.arcs[-1] for p in R}
    if not required <= covered:
        raise InternalInconsistency("path decomposition lost a required arc")
    return R


# ---------------------------------------------------------------------------
# bidirected versions


def check_family(B: BidirectedGraph, x: str, family: Sequence[Trail], name: str, disjoint: str) -> None:
    """Root-``x`` paths that are pairwise edge-disjoint or internally vertex-disjoint."""
    r = B.require_root()
    used: set[str] = set()
    inner: set[str] = set()
    for T in family:
        try:
            T = validate_trail(B, T.sequence())
        except BidiError as exc:
            raise InvalidFamily(f"{name} holds an invalid walk: {exc}", family=name) from None
        if not T.edges or T.start != r or T.end != x or not T.is_path:
            raise InvalidFamily(f"{name} holds a walk that is not a root-target path", family=name)
        if used & set(T.edge_ids):
            raise InvalidFamily(f"{name} is not edge-disjoint", family=name)
        used |= set(T.edge_ids)
        if disjoint == "vertex":
            mids = set(T.vertices[1:-1])
            if mids & inner:
                raise InvalidFamily(f"{name} is not internally vertex-disjoint", family=name)
            inner |= mids


def _covers(R: Sequence[Trail], P: Sequence[Trail], Q: Sequence[Trail]) -> bool:
    firsts = {T.edge_ids[0] for T in R}
    lasts = {T.edge_ids[-1] for T in R}
    return {T.edge_ids[0] for T in P} <= firsts and {T.edge_ids[-1] for T in Q} <= lasts


def edge_pym(B: BidirectedGraph, x: str, P: Sequence[Trail], Q: Sequence[Trail]) -> list[Trail]:
    """Edge-disjoint r-``x`` paths covering the first edges of ``P`` and the last edges of ``Q``."""
    if not is_edge_clean(B):
        raise NotEdgeClean("edge linkage needs an edge-clean graph")
    check_family(B, x, P, "P", "edge")
    check_family(B, x, Q, "Q", "edge")
    Bp = restrict(B, "path")
    TD = trail_skeleton(Bp)
    if TD.contraction[x] != x:
        C = TD.component_of(x)
        R = _component_linkage(Bp, C.anchor, P, Q)
    else:
        Pd = [project_trail(TD, T) for T in P]
        Qd = [project_trail(TD, T) for T in Q]
        R = [lift_path(TD, S) for S in directed_edge_pym(TD.skeleton, x, Pd, Qd)]
    R = [validate_trail(B, T.sequence()) for T in R]
    check_family(B, x, R, "R", "edge")
    if not _covers(R, P, Q):
        raise InternalInconsistency("linkage misses a required edge")
    return R


def _component_linkage(B: BidirectedGraph, anchor: str, P: Sequence[Trail], Q: Sequence[Trail]) -> list[Trail]:
    # every path into a component passes its anchor through the entry edge, so the
    # head of one path and the tail of the other join there
    if not P or not Q:
        return list(P or Q)
    p, q = P[0], Q[0]
    i, j = p.vertices.index(anchor), q.vertices.index(anchor)
    T = validate_trail(B, p.prefix(i).sequence() + q.suffix_from(j).sequence()[1:])
    if not T.is_path:
        raise InternalInconsistency("component linkage is not a path")
    return [T]


def vertex_pym(B: BidirectedGraph, x: str, P: Sequence[Trail], Q: Sequence[Trail]) -> list[Trail]:
    """Internally vertex-disjoint r-``x`` paths covering first edges of ``P`` and last edges of ``Q``."""
    if not is_clean(B):
        raise NotClean("vertex linkage needs a clean graph")
    check_family(B, x, P, "P", "vertex")
    check_family(B, x, Q, "Q", "vertex")
    if not P and not Q:
        return []
    AG = auxiliary_graph(B)
    lifted_P = [g_inverse(AG, T) for T in P]
    lifted_Q = [g_inverse(AG, T) for T in Q]
    ends = {T.end for T in lifted_P + lifted_Q}
    if len(ends) != 1:
        raise InternalInconsistency("paths to a plain target arrive with both signs", ends=sorted(ends))
    star = ends.pop()
    R = [g_contract(AG, T) for T in edge_pym(AG.graph, star, lifted_P, lifted_Q)]
    check_family(B, x, R, "R", "vertex")
    if not _covers(R, P, Q):
        raise InternalInconsistency("vertex linkage misses a required edge")
    return R


def check_xy_family(B: BidirectedGraph, X: frozenset, Y: frozenset, family: Sequence[Trail], name: str) -> None:
    seen: set[str] = set()
    for T in family:
        try:
            T = validate_trail(B, T.sequence())
        except BidiError as exc:
            raise InvalidFamily(f"{name} holds an invalid walk: {exc}", family=name) from None
        if not T.is_path:
            raise InvalidFamily(f"{name} holds a non-path", family=name)
        if [v for v in T.vertices if v in X] != [T.start] or [v for v in T.vertices if v in Y] != [T.end]:
            raise InvalidFamily(f"{name} holds a walk that is not an X-Y path", family=name)
        if seen & set(T.vertices):
            raise InvalidFamily(f"{name} is not vertex-disjoint", family=name)
        seen |= set(T.vertices)


def _to_apex(A, T: Trail) -> Trail:
    G = A.graph
    seq = [SOURCE_APEX, f"{SOURCE_APEX}:{T.start}"] + T.sequence()
    arrive: Sign = MINUS if not T.edges else G.sign(T.edge_ids[-1], T.end)
    seq += [f"{SINK_APEX}:{T.end}:{-arrive}", SINK_APEX]
    return validate_trail(G, seq)


def set_pym(
    B: BidirectedGraph, X: Iterable[str], Y: Iterable[str], P: Sequence[Trail], Q: Sequence[Trail]
) -> list[Trail]:
    """Vertex-disjoint X-Y paths whose first vertices include those of ``P`` and last vertices those of ``Q``."""
    X, Y = frozenset(X), frozenset(Y)
    require_no_xx_path(B, X)
    check_xy_family(B, X, Y, P, "P")
    check_xy_family(B, X, Y, Q, "Q")
    A = apex_graph(B, X, Y, normalize_sinks=True)
    R = [strip_apexes(A, T) for T in vertex_pym(A.graph, SINK_APEX, [_to_apex(A, T) for T in P], [_to_apex(A, T) for T in Q])]
    check_xy_family(B, X, Y, R, "R")
    if not ({T.start for T in P} <= {T.start for T in R} and {T.end for T in Q} <= {T.end for T in R}):
        raise InternalInconsistency("set linkage misses a required endpoint")
    return R
