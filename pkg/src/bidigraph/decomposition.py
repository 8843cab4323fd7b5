"""Edge and vertex decompositions.

The edge decomposition contracts every trail-undirectable component onto its
anchor (the head of its unique entry edge, or the root) and orients the
remaining edges naturally, giving the trail-skeleton digraph.  The vertex
decomposition does the same in the almost-path regime, with anchors the plain
vertices; it is tied to the edge decomposition through the auxiliary graph,
which splits every plain vertex into a signed pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from .core import (
    MINUS,
    PLUS,
    SIGNS,
    Arc,
    BidirectedGraph,
    Digraph,
    DiPath,
    Edge,
    OrientedEdge,
    Sign,
    Trail,
    as_bidirected,
    build_digraph,
    build_graph,
    dipath,
    sign_switch,
    trivial_trail,
    validate_trail,
)
from .errors import (
    FormatError,
    InternalInconsistency,
    InvalidPath,
    InvalidTrail,
    NotAPath,
    NotPathReachable,
    NotReachable,
    NotTrailReachable,
)
from .reachability import (
    EdgeClassification,
    classify_all,
    path_reachable,
    plain_vertices,
    trail_reachable,
    trail_reachable_signed,
)


@dataclass(frozen=True)
class Component:
    index: int
    vertices: frozenset[str]
    edges: frozenset[str]
    anchor: str
    entry: OrientedEdge | None
    entries: tuple[OrientedEdge, ...] = ()
    alpha: Sign | None = None

    @property
    def contains_root(self) -> bool:
        return self.entry is None and not self.entries

    def to_json(self) -> dict:
        out = {
            "index": self.index,
            "vertices": sorted(self.vertices),
            "edges": sorted(self.edges),
            "anchor": self.anchor,
        }
        if self.entry is not None:
            out["entry"] = {"edge": self.entry.edge, "tail": self.entry.tail, "head": self.entry.head}
            out["alpha"] = str(self.alpha)
        if self.entries:
            out["entries"] = [{"edge": o.edge, "tail": o.tail, "head": o.head} for o in self.entries]
        return out


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Components, anchors and skeleton of one regime ("trail" or "path")."""

    kind: str
    base: BidirectedGraph
    classification: Mapping[str, EdgeClassification] = field(repr=False)
    components: tuple[Component, ...]
    skeleton: Digraph
    contraction: Mapping[str, str]

    def natural(self, eid: str) -> OrientedEdge:
        c = self.classification[eid]
        if c.status != "directable":
            raise InvalidTrail(f"edge {eid} has no natural orientation", edge=eid)
        return c.natural

    def component_of(self, v: str) -> Component | None:
        for C in self.components:
            if v in C.vertices:
                return C
        return None

    def component_with_anchor(self, v: str) -> Component | None:
        for C in self.components:
            if C.anchor == v:
                return C
        return None

    def is_directable(self, eid: str) -> bool:
        return self.classification[eid].status == "directable"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "root": self.base.root,
            "components": [C.to_json() for C in self.components],
            "skeleton": {
                "vertices": list(self.skeleton.vertices),
                "arcs": [{"id": a.id, "tail": a.tail, "head": a.head} for a in self.skeleton.arcs],
            },
            "contraction": dict(sorted(self.contraction.items())),
        }


def _undirectable_components(B: BidirectedGraph, table: Mapping[str, EdgeClassification]) -> list[tuple[set, set]]:
    parent: dict[str, str] = {}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    und = [B.edge(eid) for eid, c in sorted(table.items()) if c.status == "undirectable"]
    for e in und:
        parent.setdefault(e.u, e.u)
        parent.setdefault(e.v, e.v)
        a, b = find(e.u), find(e.v)
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[str, tuple[set, set]] = {}
    for e in und:
        g = groups.setdefault(find(e.u), (set(), set()))
        g[0].update((e.u, e.v))
        g[1].add(e.id)
    return [groups[k] for k in sorted(groups, key=lambda k: min(groups[k][0]))]


def _assemble(
    kind: str,
    B: BidirectedGraph,
    table: Mapping[str, EdgeClassification],
    anchor_rule,
) -> Decomposition:
    r = B.require_root()
    comps = []
    contraction = {v: v for v in B.vertices}
    directable = [c.natural for _, c in sorted(table.items()) if c.status == "directable"]
    for i, (verts, edges) in enumerate(_undirectable_components(B, table)):
        arrivals = tuple(o for o in directable if o.head in verts)
        if r in verts:
            anchor, entry, alpha = r, None, None
            if arrivals:
                raise InternalInconsistency(
                    f"root component {i} is entered by directable edge {arrivals[0].edge}", component=i
                )
            entries = ()
        else:
            anchor, entry, entries = anchor_rule(i, verts, arrivals)
            alpha = -B.sign(entry.edge, entry.head) if entry is not None else None
        comps.append(Component(i, frozenset(verts), frozenset(edges), anchor, entry, entries, alpha))
        for v in verts:
            contraction[v] = anchor
    svert = sorted(set(contraction.values()))
    arcs = []
    for o in directable:
        t, h = contraction[o.tail], contraction[o.head]
        if t == h and kind == "trail":
            raise InternalInconsistency(f"directable edge {o.edge} lies inside a component", edge=o.edge)
        arcs.append(Arc(o.edge, t, h))
    D = build_digraph(svert, arcs, r, allow_loops=kind == "path")
    return Decomposition(kind, B, table, tuple(comps), D, contraction)


def _trail_anchor(i: int, verts: set, arrivals: tuple) -> tuple:
    if len(arrivals) != 1:
        raise InternalInconsistency(
            f"component {i} has {len(arrivals)} entering directable edges", component=i
        )
    f = arrivals[0]
    return f.head, f, ()


@lru_cache(maxsize=2048)
def trail_skeleton(B: BidirectedGraph) -> Decomposition:
    """The edge decomposition of a trail-reachable graph."""
    table = classify_all(B, "trail")
    bad = [eid for eid, c in table.items() if c.status == "unreachable"]
    if bad:
        raise NotTrailReachable("graph is not trail-reachable; restrict it first", edges=sorted(bad))
    return _assemble("trail", B, table, _trail_anchor)


# ---------------------------------------------------------------------------
# component certificates


@dataclass(frozen=True)
class ComponentCertificate:
    component: int
    entry_unique: bool
    internal_edges_undirectable: bool
    edge_witnesses: Mapping[str, tuple[Trail, Trail]]
    sign_witnesses: Mapping[tuple[str, Sign], Trail]
    problems: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.problems


def component_host(TD: Decomposition, C: Component) -> BidirectedGraph:
    """``C`` plus its entry edge, rooted at the entry's tail (the root component: ``B[C]`` at r)."""
    B = TD.base
    if C.entry is None:
        return B.induced(C.vertices).rooted(C.anchor)
    f = C.entry
    keep = set(C.edges) | {f.edge}
    H = B.edge_subgraph(keep, set(C.vertices) | {f.tail})
    return H.rooted(f.tail)


def certify_component(TD: Decomposition, C: Component) -> ComponentCertificate:
    B = TD.base
    problems: list[str] = []
    heads_in = [
        eid for eid, c in TD.classification.items() if c.status == "directable" and c.natural.head in C.vertices
    ]
    if C.entry is None:
        entry_unique = not heads_in
    else:
        entry_unique = heads_in == [C.entry.edge]
    if not entry_unique:
        problems.append(f"entering directable edges {heads_in}")
    inside = [e.id for e in B.edges if e.u in C.vertices and e.v in C.vertices]
    internal_ok = all(TD.classification[eid].status == "undirectable" for eid in inside)
    if not internal_ok:
        problems.append("an edge inside the component is directable")
    H = component_host(TD, C)
    edge_w: dict = {}
    for eid in sorted(inside):
        pair = []
        for o in B.edge(eid).orientations():
            hit = trail_reachable(H, o)
            if not hit:
                problems.append(f"no confined trail to {o}")
                break
            pair.append(hit.witness)
        else:
            edge_w[eid] = tuple(pair)
    sign_w: dict = {}
    for w in sorted(C.vertices):
        if w == H.root:
            continue
        for s in SIGNS:
            hit = trail_reachable_signed(H, w, s)
            if not hit:
                problems.append(f"no confined trail to ({w},{s})")
            else:
                sign_w[(w, s)] = hit.witness
    for T in list(sign_w.values()) + [t for p in edge_w.values() for t in p]:
        if C.entry is not None and T.edges[0] != C.entry:
            problems.append(f"witness {T} does not start with the entry edge")
        if any(v not in C.vertices for v in T.vertices[1:]):
            problems.append(f"witness {T} leaves the component")
    return ComponentCertificate(C.index, entry_unique, internal_ok, edge_w, sign_w, tuple(problems))


def trail_components(B: BidirectedGraph) -> list[tuple[Component, ComponentCertificate]]:
    TD = trail_skeleton(B)
    return [(C, certify_component(TD, C)) for C in TD.components]


def trail_solid_by_rule(TD: Decomposition) -> set[str]:
    """Trail-solid vertices by the three-case characterization (root, natural head, or off every component)."""
    B = TD.base
    heads = {c.natural.head for c in TD.classification.values() if c.status == "directable"}
    in_comp = set().union(*(C.vertices for C in TD.components)) if TD.components else set()
    return {v for v in B.vertices if v == B.root or v in heads or v not in in_comp}


# ---------------------------------------------------------------------------
# projection and lifting


def project_trail(TD: Decomposition, T: Trail) -> DiPath:
    """The skeleton trail following the directable edges of ``T`` in order."""
    r = TD.base.require_root()
    if T.start != r:
        raise InvalidTrail("projection needs an r-trail", start=T.start)
    arcs = []
    for o in T.edges:
        c = TD.classification.get(o.edge)
        if c is None:
            raise InvalidTrail(f"edge {o.edge} is not in the base graph", edge=o.edge)
        if c.status == "directable":
            if c.natural != o:
                raise InvalidTrail(f"{o} runs against its natural orientation", edge=o.edge)
            arcs.append(o.edge)
    return dipath(TD.skeleton, r, arcs)


@lru_cache(maxsize=4096)
def _connector(TD: Decomposition, comp_index: int, target: str, sign: Sign) -> Trail:
    C = TD.components[comp_index]
    H = component_host(TD, C)
    if target == H.root:
        return trivial_trail(H, target)
    hit = trail_reachable_signed(H, target, sign)
    if not hit:
        raise InternalInconsistency(f"no connector to ({target},{sign}) in component {comp_index}")
    return hit.witness


def lift_trail(TD: Decomposition, S: DiPath) -> Trail:
    """An r-trail of the base graph whose projection is ``S``."""
    B = TD.base
    r = B.require_root()
    if S.start != r:
        raise InvalidTrail("lifting needs an r-trail of the skeleton", start=S.start)
    dipath(TD.skeleton, r, S.arcs)
    seq: list[str] = [r]
    for aid in S.arcs:
        o = TD.natural(aid)
        here = seq[-1]
        if o.tail != here:
            C = TD.component_with_anchor(here)
            if C is None or o.tail not in C.vertices:
                raise InternalInconsistency(f"cannot reach the tail of {aid} from {here}")
            conn = _connector(TD, C.index, o.tail, -B.sign(aid, o.tail))
            seq += conn.sequence()[3:] if C.entry is not None else conn.sequence()[1:]
        elif len(seq) > 1 and B.sign(aid, here) == B.sign(seq[-2], here):
            # arrived at an anchor through its entry edge with the wrong sign; loop inside first
            C = TD.component_with_anchor(here)
            if C is None:
                raise InternalInconsistency(f"sign clash at {here}, which anchors no component")
            conn = _connector(TD, C.index, here, -B.sign(aid, here))
            seq += conn.sequence()[3:]
        seq += [aid, o.head]
    T = validate_trail(B, seq)
    if not T.is_r_trail:
        raise InternalInconsistency("lifted walk revisits the root")
    if project_trail(TD, T) != S:
        raise InternalInconsistency("lifted trail does not project back")
    return T


def lift_path(TD: Decomposition, P: DiPath) -> Trail:
    """An r-path of the (path-reachable) base graph whose projection is ``P``."""
    B = TD.base
    r = B.require_root()
    if not P.is_path() or P.start != r:
        raise InvalidPath("lifting needs an r-path of the skeleton")
    dipath(TD.skeleton, r, P.arcs)
    seq: list[str] = [r]
    for aid in P.arcs:
        o = TD.natural(aid)
        here = seq[-1]
        if o.tail == here:
            seq += [aid, o.head]
            continue
        C = TD.component_with_anchor(here)
        if C is None or o.tail not in C.vertices:
            raise InternalInconsistency(f"cannot reach the tail of {aid} from {here}")
        hit = path_reachable(B, o)
        if not hit:
            raise NotPathReachable(f"edge {aid} is not path-reachable", edge=aid)
        W = hit.witness
        if here not in W.vertices:
            raise InternalInconsistency(f"witness for {aid} misses the anchor {here}")
        k = W.vertices.index(here)
        seq += W.suffix_from(k).sequence()[1:]
    Q = validate_trail(B, seq)
    if not Q.is_path:
        raise InternalInconsistency("lifted walk is not a path")
    if project_trail(TD, Q) != P:
        raise InternalInconsistency("lifted path does not project back")
    return Q


# ---------------------------------------------------------------------------
# auxiliary graph


def split_name(v: str, sign: Sign) -> str:
    return f"{v}^{sign}"


def aux_edge_name(v: str) -> str:
    return f"aux({v})"


@dataclass(frozen=True)
class AuxiliaryGraph:
    base: BidirectedGraph
    graph: BidirectedGraph
    plain: frozenset[str]
    origin: Mapping[str, str]
    aux_edges: Mapping[str, str]

    def split(self, v: str) -> tuple[str, ...]:
        if v in self.plain:
            return (split_name(v, PLUS), split_name(v, MINUS))
        return (v,)

    def node(self, v: str, sign: Sign | None = None) -> str:
        if v in self.plain:
            if sign is None:
                raise ValueError(f"{v} is split; a sign is needed")
            return split_name(v, sign)
        return v

    def is_aux(self, eid: str) -> bool:
        return eid in self._aux_ids

    @property
    def _aux_ids(self) -> frozenset[str]:
        return frozenset(self.aux_edges.values())


def auxiliary_graph(B: BidirectedGraph, plain: Iterable[str] | None = None) -> AuxiliaryGraph:
    plain = frozenset(plain_vertices(B) if plain is None else plain)
    taken_v = set(B.vertices)
    taken_e = set(B.edge_ids)
    verts = []
    origin = {}
    aux = {}
    edges = []
    for v in B.vertices:
        if v in plain:
            for s in (PLUS, MINUS):
                name = split_name(v, s)
                if name in taken_v:
                    raise FormatError(f"vertex name {name} clashes with a split vertex", vertex=name)
                verts.append(name)
                origin[name] = v
            aid = aux_edge_name(v)
            if aid in taken_e:
                raise FormatError(f"edge id {aid} clashes with an auxiliary edge", edge=aid)
            aux[v] = aid
            edges.append(Edge(aid, split_name(v, PLUS), split_name(v, MINUS), MINUS, PLUS))
        else:
            verts.append(v)
            origin[v] = v

    def end(w: str, s: Sign) -> str:
        return split_name(w, s) if w in plain else w

    for e in B.edges:
        edges.append(Edge(e.id, end(e.u, e.su), end(e.v, e.sv), e.su, e.sv))
    G = build_graph(verts, edges, B.root)
    return AuxiliaryGraph(B, G, plain, origin, aux)


def g_contract(AG: AuxiliaryGraph, T: Trail) -> Trail:
    """Contract the auxiliary edges of a walk in a(B)."""
    seq = [AG.origin[T.start]]
    for o in T.edges:
        if AG.is_aux(o.edge):
            continue
        seq += [o.edge, AG.origin[o.head]]
    return validate_trail(AG.base, seq)


def g_inverse(AG: AuxiliaryGraph, P: Trail) -> Trail:
    """The proper r-path of a(B) contracting to the r-path ``P``."""
    B = AG.base
    if not P.is_path or P.start != B.root:
        raise NotAPath("g_inverse needs an r-path", walk=str(P))
    seq = [P.start]
    for i, o in enumerate(P.edges):
        arrive = B.sign(o.edge, o.head)
        seq += [o.edge, AG.node(o.head, arrive)]
        if i + 1 < len(P.edges) and o.head in AG.plain:
            seq += [AG.aux_edges[o.head], AG.node(o.head, -arrive)]
    Q = validate_trail(AG.graph, seq)
    if not Q.is_path:
        raise InternalInconsistency("g_inverse produced a non-path")
    return Q


# ---------------------------------------------------------------------------
# vertex decomposition


def _vertex_anchor_rule(plain: frozenset[str]):
    def rule(i: int, verts: set, arrivals: tuple) -> tuple:
        hits = sorted(v for v in verts if v in plain)
        if len(hits) != 1:
            raise InternalInconsistency(f"undirectable component {i} meets {len(hits)} plain vertices", component=i)
        anchor = hits[0]
        return anchor, None, arrivals

    return rule


@lru_cache(maxsize=2048)
def vertex_skeleton(B: BidirectedGraph) -> Decomposition:
    """The vertex decomposition of a reachable graph; its skeleton lives on the plain vertices and r."""
    table = classify_all(B, "almost-path")
    bad = [eid for eid, c in table.items() if c.status == "unreachable"]
    if bad:
        raise NotReachable("graph is not reachable; restrict it first", edges=sorted(bad))
    plain = plain_vertices(B)
    D = _assemble("path", B, table, _vertex_anchor_rule(plain))
    return D


def vertex_components(B: BidirectedGraph) -> tuple[Component, ...]:
    return vertex_skeleton(B).components


def _require_reachable(B: BidirectedGraph) -> None:
    table = classify_all(B, "almost-path")
    bad = [eid for eid, c in table.items() if c.status == "unreachable"]
    if bad:
        raise NotReachable("graph is not reachable", edges=sorted(bad))


def normalize_for_skeleton(B: BidirectedGraph) -> tuple[BidirectedGraph, list[str]]:
    """Sign-switch plain vertices until every auxiliary edge points from v^+ to v^-."""
    _require_reachable(B)
    AG = auxiliary_graph(B)
    table = classify_all(AG.graph, "trail")
    switches = []
    for v in sorted(AG.plain):
        c = table[AG.aux_edges[v]]
        if c.status == "unreachable" and not B.incident(v):
            continue
        if c.status != "directable":
            raise InternalInconsistency(f"auxiliary edge at {v} is {c.status}", vertex=v)
        if c.natural.tail == split_name(v, MINUS):
            switches.append(v)
    out = B
    for v in switches:
        out = sign_switch(out, v)
    return out, switches


def aux_of_digraph(D: Digraph) -> Digraph:
    """a(D) for a skeleton digraph, read as bidirected and back."""
    AB = as_bidirected(D)
    AG = auxiliary_graph(AB, [v for v in D.vertices if v != D.root])
    arcs = []
    for e in AG.graph.edges:
        if e.su == e.sv:
            raise InternalInconsistency(f"edge {e.id} of a(D) is not directed")
        tail, head = (e.u, e.v) if e.su == MINUS else (e.v, e.u)
        arcs.append(Arc(e.id, tail, head))
    return build_digraph(AG.graph.vertices, arcs, D.root)


@dataclass(frozen=True)
class Correspondence:
    ok: bool
    switches: tuple[str, ...]
    left: Digraph
    right: Digraph
    differences: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def verify_correspondence(B: BidirectedGraph) -> Correspondence:
    """Compare a(skeleton(B')) with the trail-skeleton of a(B') for the normalized B'.

    Isolated non-root vertices are dropped first: their auxiliary edges are unreachable.
    """
    B = B.without_vertices({v for v in B.vertices if v != B.root and not B.incident(v)})
    Bn, switches = normalize_for_skeleton(B)
    left = aux_of_digraph(vertex_skeleton(Bn).skeleton)
    right = trail_skeleton(auxiliary_graph(Bn).graph).skeleton
    diffs = []
    if set(left.vertices) != set(right.vertices):
        diffs.append(f"vertex sets differ: {sorted(set(left.vertices) ^ set(right.vertices))}")
    lt, rt = left.triples(), right.triples()
    for t in sorted(lt - rt):
        diffs.append(f"only in a(skeleton): {t}")
    for t in sorted(rt - lt):
        diffs.append(f"only in trail-skeleton of a(B): {t}")
    return Correspondence(not diffs, tuple(switches), left, right, tuple(diffs))
