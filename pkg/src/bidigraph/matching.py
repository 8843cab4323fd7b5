"""Blossom matching and the bidirected/matched-graph translations.

Every reachability question in this package reduces to one primitive: given a
graph in which all nodes but two are covered by a matching, is there an
augmenting path between the two exposed nodes?  :func:`augmenting_path`
answers it with Edmonds' blossom search and returns the path.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

from .core import MINUS, PLUS, BidirectedGraph, Edge, Sign, build_graph
from .errors import InternalInconsistency, NotPerfectMatching, SameNode, UnknownVertex

Node = Hashable


def node_key(n: Node):
    """Total order on matched-graph nodes (plain strings before signed pairs)."""
    if isinstance(n, tuple):
        return (1, tuple((0, str(x)) if not isinstance(x, Sign) else (1, int(x)) for x in n))
    return (0, str(n))


def node_to_json(n: Node):
    if isinstance(n, tuple) and len(n) == 2 and isinstance(n[1], Sign):
        return [n[0], str(n[1])]
    return n


def node_from_json(x) -> Node:
    if isinstance(x, list):
        return (x[0], Sign.parse(x[1]))
    return x


@dataclass(frozen=True)
class UEdge:
    id: str
    a: Node
    b: Node

    def other(self, n: Node) -> Node:
        return self.b if n == self.a else self.a


@dataclass(frozen=True)
class UGraph:
    """A simple undirected graph with named edges."""

    nodes: tuple
    edges: tuple[UEdge, ...]
    _adj: dict = field(default=None, compare=False, repr=False, hash=False)
    _by_pair: dict = field(default=None, compare=False, repr=False, hash=False)
    _by_id: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self) -> None:
        adj: dict = {n: [] for n in self.nodes}
        by_pair: dict = {}
        object.__setattr__(self, "_by_id", {e.id: e for e in self.edges})
        for e in self.edges:
            if e.a == e.b:
                raise InternalInconsistency(f"loop {e.id} in a simple graph")
            key = frozenset((e.a, e.b))
            if key in by_pair:
                raise InternalInconsistency(f"parallel edges {by_pair[key].id} and {e.id}")
            by_pair[key] = e
            adj[e.a].append(e)
            adj[e.b].append(e)
        object.__setattr__(self, "_adj", adj)
        object.__setattr__(self, "_by_pair", by_pair)

    def incident(self, n: Node) -> list[UEdge]:
        return self._adj[n]

    def between(self, a: Node, b: Node) -> UEdge | None:
        return self._by_pair.get(frozenset((a, b)))

    def edge(self, eid: str) -> UEdge:
        return self._by_id[eid]

    def without_nodes(self, drop: Iterable[Node]) -> "UGraph":
        drop = set(drop)
        return UGraph(
            tuple(n for n in self.nodes if n not in drop),
            tuple(e for e in self.edges if e.a not in drop and e.b not in drop),
        )

    def without_edges(self, drop: Iterable[str]) -> "UGraph":
        drop = set(drop)
        return UGraph(self.nodes, tuple(e for e in self.edges if e.id not in drop))


def ugraph(nodes: Iterable[Node], pairs: Iterable) -> UGraph:
    """Build a :class:`UGraph`; ``pairs`` holds ``(a, b)`` or ``(id, a, b)``."""
    ns = set(nodes)
    edges = []
    for i, p in enumerate(pairs):
        if len(p) == 2:
            eid, a, b = f"u{i}", p[0], p[1]
        else:
            eid, a, b = p
        ns.update((a, b))
        edges.append(UEdge(eid, a, b))
    return UGraph(tuple(sorted(ns, key=node_key)), tuple(edges))


# ---------------------------------------------------------------------------
# blossom search on integer-indexed adjacency


def _search(adj: list[list[int]], mate: list[int], root: int) -> list[int] | None:
    """Edmonds' search from exposed ``root``; returns an augmenting path or None."""
    n = len(adj)
    parent = [-1] * n
    base = list(range(n))
    used = [False] * n
    used[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                b = lca(v, to)
                blossom = [False] * n
                mark(v, b, to, blossom)
                mark(to, b, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = b
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    path = [to]
                    cur = to
                    while True:
                        p = parent[cur]
                        path.append(p)
                        if mate[p] == -1:
                            break
                        cur = mate[p]
                        path.append(cur)
                    return path[::-1]
                used[mate[to]] = True
                queue.append(mate[to])
    return None


def _check_augmenting(adj_sets: list[set[int]], mate: list[int], path: list[int]) -> None:
    if len(set(path)) != len(path) or len(path) % 2:
        raise InternalInconsistency("blossom search returned a non-simple path")
    if mate[path[0]] != -1 or mate[path[-1]] != -1:
        raise InternalInconsistency("augmenting path endpoints are covered")
    for i in range(len(path) - 1):
        a, b = path[i], path[i + 1]
        if b not in adj_sets[a]:
            raise InternalInconsistency("augmenting path uses a non-edge")
        if (i % 2 == 1) != (mate[a] == b):
            raise InternalInconsistency("augmenting path does not alternate")


class _Indexed:
    def __init__(self, G: UGraph, matching: Iterable[str] = ()) -> None:
        self.G = G
        self.nodes = sorted(G.nodes, key=node_key)
        self.index = {v: i for i, v in enumerate(self.nodes)}
        self.adj: list[list[int]] = [[] for _ in self.nodes]
        for e in sorted(G.edges, key=lambda e: e.id):
            ia, ib = self.index[e.a], self.index[e.b]
            self.adj[ia].append(ib)
            self.adj[ib].append(ia)
        self.adj_sets = [set(a) for a in self.adj]
        self.mate = [-1] * len(self.nodes)
        for eid in matching:
            e = G.edge(eid)
            ia, ib = self.index[e.a], self.index[e.b]
            if self.mate[ia] != -1 or self.mate[ib] != -1:
                raise NotPerfectMatching(f"edges of the matching share a node at {eid}")
            self.mate[ia], self.mate[ib] = ib, ia

    def augment(self, path: list[int]) -> None:
        for i in range(0, len(path), 2):
            a, b = path[i], path[i + 1]
            self.mate[a], self.mate[b] = b, a

    def matching(self) -> frozenset[str]:
        out = set()
        for i, j in enumerate(self.mate):
            if j > i:
                out.add(self.G.between(self.nodes[i], self.nodes[j]).id)
        return frozenset(out)


def max_matching(G: UGraph, initial: Iterable[str] = ()) -> frozenset[str]:
    """Maximum-cardinality matching as a set of edge ids."""
    ix = _Indexed(G, initial)
    for root in range(len(ix.nodes)):
        if ix.mate[root] != -1:
            continue
        path = _search(ix.adj, ix.mate, root)
        if path is not None:
            _check_augmenting(ix.adj_sets, ix.mate, path)
            ix.augment(path)
    return ix.matching()


def augmenting_path(G: UGraph, matching: Iterable[str], source: Node) -> list[Node] | None:
    """An M-augmenting path from the exposed node ``source``, or None."""
    ix = _Indexed(G, matching)
    s = ix.index[source]
    if ix.mate[s] != -1:
        raise InternalInconsistency(f"{source!r} is covered")
    path = _search(ix.adj, ix.mate, s)
    if path is None:
        return None
    _check_augmenting(ix.adj_sets, ix.mate, path)
    return [ix.nodes[i] for i in path]


def is_matching(G: UGraph, matching: Iterable[str]) -> bool:
    seen: set = set()
    for eid in matching:
        e = G.edge(eid)
        if e.a in seen or e.b in seen:
            return False
        seen.update((e.a, e.b))
    return True


def is_perfect(G: UGraph, matching: Iterable[str]) -> bool:
    matching = list(matching)
    return is_matching(G, matching) and 2 * len(matching) == len(G.nodes)


# ---------------------------------------------------------------------------
# bidirected <-> matched graph


@dataclass(frozen=True)
class MatchedGraph:
    """An undirected graph with a perfect matching and its bidirected origin.

    ``node_origin`` maps every node to ``(vertex, sign)``; ``edge_origin`` maps
    every non-matching edge to the bidirected edge it came from.  Parallel
    bidirected edges with identical sign patterns cannot both map to the same
    node pair, so all but one are subdivided first; ``subdivisions`` records the
    inserted vertex and the two half edges for each.
    """

    graph: UGraph
    matching: frozenset[str]
    node_origin: Mapping
    edge_origin: Mapping
    subdivisions: Mapping = field(default_factory=dict)
    root: str | None = None

    def partner(self, n: Node) -> Node:
        for e in self.graph.incident(n):
            if e.id in self.matching:
                return e.other(n)
        raise NotPerfectMatching(f"{n!r} is not covered")

    def to_json(self) -> dict:
        return {
            "version": 1,
            "nodes": [node_to_json(n) for n in self.graph.nodes],
            "edges": [{"id": e.id, "a": node_to_json(e.a), "b": node_to_json(e.b)} for e in self.graph.edges],
            "matching": sorted(self.matching),
            "root": self.root,
        }


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def subdivide_parallel(B: BidirectedGraph) -> tuple[BidirectedGraph, dict]:
    """Subdivide repeated sign patterns; returns the graph and ``{edge: (z, e1, e2)}``."""
    seen: set = set()
    taken = set(B.vertices) | set(B.edge_ids)
    edges: list[Edge] = []
    verts = list(B.vertices)
    subs: dict = {}
    for e in B.edges:
        key = frozenset({(e.u, e.su), (e.v, e.sv)}) | {frozenset((e.u, e.v))}
        if key not in seen:
            seen.add(key)
            edges.append(e)
            continue
        z = _fresh(f"{e.id}.mid", taken)
        e1 = _fresh(f"{e.id}.1", taken)
        e2 = _fresh(f"{e.id}.2", taken)
        verts.append(z)
        edges.append(Edge(e1, e.u, z, e.su, PLUS))
        edges.append(Edge(e2, z, e.v, MINUS, e.sv))
        subs[e.id] = (z, e1, e2)
    return build_graph(verts, edges, B.root), subs


def to_matched_graph(B: BidirectedGraph) -> MatchedGraph:
    S, subs = subdivide_parallel(B)
    nodes = []
    edges = []
    node_origin = {}
    edge_origin = {}
    for v in S.vertices:
        plus, minus = (v, PLUS), (v, MINUS)
        nodes += [minus, plus]
        node_origin[minus] = (v, MINUS)
        node_origin[plus] = (v, PLUS)
        edges.append(UEdge(f"m:{v}", minus, plus))
    matching = frozenset(f"m:{v}" for v in S.vertices)
    back = {}
    for orig, (z, e1, e2) in subs.items():
        back[e1] = orig
        back[e2] = orig
    for e in S.edges:
        eid = f"e:{e.id}"
        edges.append(UEdge(eid, (e.u, e.su), (e.v, e.sv)))
        edge_origin[eid] = back.get(e.id, e.id)
    G = UGraph(tuple(sorted(nodes, key=node_key)), tuple(edges))
    return MatchedGraph(G, matching, node_origin, edge_origin, subs, B.root)


def contracted_name(lo: Node, hi: Node) -> str:
    """Vertex name for a contracted matching edge: the shared origin of a signed pair, else the smaller end."""
    if isinstance(lo, tuple) and isinstance(hi, tuple) and lo[0] == hi[0]:
        return str(lo[0])
    return str(lo)


def from_matched_graph(G, matching: Iterable[str] | None = None) -> BidirectedGraph:
    """Contract every matching edge into one bidirected vertex.

    For each matching edge the smaller end (by :func:`node_key`) gives its other
    edges sign -, the larger end gives sign +.  Accepts a :class:`MatchedGraph`
    (subdivisions are undone) or a plain :class:`UGraph` plus a matching.
    """
    subs: Mapping = {}
    root = None
    if isinstance(G, MatchedGraph):
        subs = G.subdivisions
        root = G.root
        matching = G.matching
        G = G.graph
    matching = frozenset(matching or ())
    if not is_perfect(G, matching):
        raise NotPerfectMatching("matching is not perfect")
    vertex_of: dict = {}
    sign_of: dict = {}
    names: list[str] = []
    for eid in sorted(matching):
        e = G.edge(eid)
        lo, hi = sorted((e.a, e.b), key=node_key)
        name = contracted_name(lo, hi)
        names.append(name)
        vertex_of[lo] = vertex_of[hi] = name
        sign_of[lo], sign_of[hi] = MINUS, PLUS
    if len(set(names)) != len(names):
        raise InternalInconsistency("contracted vertex names collide")
    edges = []
    for e in G.edges:
        if e.id in matching:
            continue
        eid = e.id[2:] if e.id.startswith("e:") else e.id
        edges.append(Edge(eid, vertex_of[e.a], vertex_of[e.b], sign_of[e.a], sign_of[e.b]))
    B = build_graph(names, edges, root if root in names else None)
    if subs:
        B = _undo_subdivisions(B, subs)
    return B


def _undo_subdivisions(B: BidirectedGraph, subs: Mapping) -> BidirectedGraph:
    drop_v = set()
    drop_e = set()
    new = []
    for orig, (z, e1, e2) in subs.items():
        a, b = B.edge(e1), B.edge(e2)
        u = a.other(z)
        v = b.other(z)
        new.append(Edge(orig, u, v, a.sign_at(u), b.sign_at(v)))
        drop_v.add(z)
        drop_e.update((e1, e2))
    verts = [v for v in B.vertices if v not in drop_v]
    edges = [e for e in B.edges if e.id not in drop_e] + new
    return build_graph(verts, edges, B.root)


def alternating_path(MG: MatchedGraph, a: Node, b: Node) -> list[Node] | None:
    """An alternating ``a``-``b`` path starting and ending with non-matching edges.

    Both matching edges at ``a`` and ``b`` are released and their partners
    deleted, so the question becomes whether ``a`` and ``b`` can be joined by an
    augmenting path; the blossom search answers it and supplies the witness.
    """
    if a == b:
        raise SameNode(f"{a!r} given twice", node=node_to_json(a))
    G = MG.graph
    for n in (a, b):
        if n not in G._adj:
            raise UnknownVertex(f"no node {n!r}", node=node_to_json(n))
    pa, pb = MG.partner(a), MG.partner(b)
    released = {G.between(a, pa).id, G.between(b, pb).id}
    M = MG.matching - released
    if pa == b:
        H = G.without_edges(released)
    else:
        H = G.without_nodes({pa, pb})
    path = augmenting_path(H, M, a)
    if path is None:
        return None
    if path[-1] != b:
        raise InternalInconsistency("augmenting path ended at an unexpected node")
    return path


def alternating_path_exists(MG: MatchedGraph, a: Node, b: Node) -> tuple[bool, list[Node] | None]:
    path = alternating_path(MG, a, b)
    return path is not None, path


# ---------------------------------------------------------------------------
# trail gadget

SOURCE = ("@source",)
SINK = ("@sink",)


@dataclass(frozen=True)
class TrailGadget:
    """Half-edge graph whose alternating paths are the r-trails of ``B``.

    Nodes are half-edges ``(edge-id, endpoint)``.  The two halves of an edge are
    matched; two half-edges at the same non-root vertex are joined when their
    signs differ, which is exactly when a trail may pass from one to the other.
    """

    base: BidirectedGraph
    graph: UGraph
    matching: frozenset[str]

    def with_apexes(self, sink_nodes: Iterable[Node]) -> UGraph:
        """Add the source apex on every root half-edge and the sink apex on ``sink_nodes``."""
        r = self.base.require_root()
        extra = []
        for e in self.base.incident(r):
            extra.append(UEdge(f"s:{e.id}", SOURCE, (e.id, r)))
        for n in sorted(set(sink_nodes), key=node_key):
            extra.append(UEdge(f"t:{n[0]}:{n[1]}", n, SINK))
        nodes = self.graph.nodes + (SOURCE, SINK)
        return UGraph(nodes, self.graph.edges + tuple(extra))

    def search(self, sink_nodes: Iterable[Node]) -> list[tuple[str, str]] | None:
        """Half-edge sequence of an r-trail ending at one of ``sink_nodes``, or None."""
        sinks = list(sink_nodes)
        if not sinks:
            return None
        H = self.with_apexes(sinks)
        path = augmenting_path(H, self.matching, SOURCE)
        if path is None:
            return None
        if path[-1] != SINK:
            raise InternalInconsistency("gadget search ended away from the sink")
        return path[1:-1]


def build_trail_gadget(B: BidirectedGraph) -> TrailGadget:
    r = B.require_root()
    nodes = []
    edges = []
    for e in B.edges:
        nodes += [(e.id, e.u), (e.id, e.v)]
        edges.append(UEdge(f"m:{e.id}", (e.id, e.u), (e.id, e.v)))
    for w in B.vertices:
        if w == r:
            continue
        inc = B.incident(w)
        for i, e in enumerate(inc):
            for f in inc[i + 1:]:
                if e.sign_at(w) == -f.sign_at(w):
                    a, b = sorted(((e.id, w), (f.id, w)), key=node_key)
                    edges.append(UEdge(f"x:{a[0]}:{b[0]}:{w}", a, b))
    G = UGraph(tuple(sorted(nodes, key=node_key)), tuple(edges))
    return TrailGadget(B, G, frozenset(f"m:{e.id}" for e in B.edges))
