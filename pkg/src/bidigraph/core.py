"""Rooted bidirected multigraphs, trails, and their canonical formats."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    BrokenIncidence,
    DuplicateEdgeId,
    EndpointMismatch,
    FormatError,
    JunctionSignClash,
    LoopEdge,
    MissingRoot,
    RepeatedEdge,
    SignClash,
    UnknownEdge,
    UnknownVertex,
)


class Sign(enum.IntEnum):
    MINUS = -1
    PLUS = 1

    def __neg__(self) -> "Sign":
        return Sign(-int(self))

    def __str__(self) -> str:
        return "+" if self is Sign.PLUS else "-"

    @classmethod
    def parse(cls, text: "str | Sign") -> "Sign":
        if isinstance(text, Sign):
            return text
        if text in ("+", "plus", "+1", "1"):
            return cls.PLUS
        if text in ("-", "minus", "-1"):
            return cls.MINUS
        raise FormatError(f"not a sign: {text!r}", token=str(text))


PLUS = Sign.PLUS
MINUS = Sign.MINUS
SIGNS = (PLUS, MINUS)


@dataclass(frozen=True, order=True)
class Edge:
    id: str
    u: str
    v: str
    su: Sign
    sv: Sign

    @property
    def ends(self) -> tuple[str, str]:
        return (self.u, self.v)

    def sign_at(self, w: str) -> Sign:
        if w == self.u:
            return self.su
        if w == self.v:
            return self.sv
        raise UnknownVertex(f"{w} is not an endpoint of {self.id}", vertex=w, edge=self.id)

    def other(self, w: str) -> str:
        if w == self.u:
            return self.v
        if w == self.v:
            return self.u
        raise UnknownVertex(f"{w} is not an endpoint of {self.id}", vertex=w, edge=self.id)

    def oriented(self, tail: str) -> "OrientedEdge":
        return OrientedEdge(self.id, tail, self.other(tail))

    def orientations(self) -> tuple["OrientedEdge", "OrientedEdge"]:
        return (OrientedEdge(self.id, self.u, self.v), OrientedEdge(self.id, self.v, self.u))


@dataclass(frozen=True, order=True)
class OrientedEdge:
    edge: str
    tail: str
    head: str

    def reversed(self) -> "OrientedEdge":
        return OrientedEdge(self.edge, self.head, self.tail)

    def __str__(self) -> str:
        return f"{self.edge}:{self.tail}->{self.head}"


@dataclass(frozen=True, order=True)
class SignedVertex:
    vertex: str
    sign: Sign

    def __str__(self) -> str:
        return f"({self.vertex},{self.sign})"


@dataclass(frozen=True)
class BidirectedGraph:
    """A loopless signed multigraph, optionally rooted.

    Vertices and edges are kept in lexicographic order so that every derived
    output is deterministic.  Instances are immutable; the "mutators" below
    return new graphs.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    root: str | None = None
    _by_id: dict = field(default=None, compare=False, repr=False, hash=False)
    _inc: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self) -> None:
        by_id: dict[str, Edge] = {}
        inc: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            by_id[e.id] = e
            inc[e.u].append(e)
            inc[e.v].append(e)
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_inc", {v: tuple(es) for v, es in inc.items()})

    # -- queries ---------------------------------------------------------
    def edge(self, eid: str) -> Edge:
        try:
            return self._by_id[eid]
        except KeyError:
            raise UnknownEdge(f"no edge {eid!r}", edge=eid) from None

    def has_edge(self, eid: str) -> bool:
        return eid in self._by_id

    def has_vertex(self, v: str) -> bool:
        return v in self._inc

    def incident(self, v: str) -> tuple[Edge, ...]:
        try:
            return self._inc[v]
        except KeyError:
            raise UnknownVertex(f"no vertex {v!r}", vertex=v) from None

    def sign(self, eid: str, v: str) -> Sign:
        return self.edge(eid).sign_at(v)

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def half_edges(self) -> list[tuple[str, str, Sign]]:
        return [(e.id, w, e.sign_at(w)) for e in self.edges for w in e.ends]

    def oriented_edges(self) -> list[OrientedEdge]:
        return [o for e in self.edges for o in e.orientations()]

    def require_root(self) -> str:
        if self.root is None:
            raise MissingRoot("graph has no root")
        return self.root

    def __len__(self) -> int:
        return len(self.vertices)

    # -- derived graphs --------------------------------------------------
    def rooted(self, root: str) -> "BidirectedGraph":
        if root not in self._inc:
            raise UnknownVertex(f"root {root!r} is not a vertex", vertex=root)
        return BidirectedGraph(self.vertices, self.edges, root)

    def edge_subgraph(self, keep: Iterable[str], vertices: Iterable[str] | None = None) -> "BidirectedGraph":
        """Subgraph on the given edge ids; keeps all vertices unless told otherwise."""
        keep = set(keep)
        for eid in keep:
            self.edge(eid)
        verts = self.vertices if vertices is None else tuple(sorted(set(vertices)))
        vs = set(verts)
        es = tuple(e for e in self.edges if e.id in keep)
        for e in es:
            if e.u not in vs or e.v not in vs:
                raise UnknownVertex(f"edge {e.id} leaves the vertex set", edge=e.id)
        root = self.root if self.root in vs else None
        return BidirectedGraph(verts, es, root)

    def without_edges(self, drop: Iterable[str]) -> "BidirectedGraph":
        drop = set(drop)
        return BidirectedGraph(self.vertices, tuple(e for e in self.edges if e.id not in drop), self.root)

    def without_vertices(self, drop: Iterable[str]) -> "BidirectedGraph":
        drop = set(drop)
        verts = tuple(v for v in self.vertices if v not in drop)
        es = tuple(e for e in self.edges if e.u not in drop and e.v not in drop)
        return BidirectedGraph(verts, es, None if self.root in drop else self.root)

    def induced(self, verts: Iterable[str]) -> "BidirectedGraph":
        vs = set(verts)
        return BidirectedGraph(
            tuple(v for v in self.vertices if v in vs),
            tuple(e for e in self.edges if e.u in vs and e.v in vs),
            self.root if self.root in vs else None,
        )

    def is_subgraph_of(self, other: "BidirectedGraph") -> bool:
        if not set(self.vertices) <= set(other.vertices):
            return False
        return all(other.has_edge(e.id) and other.edge(e.id) == e for e in self.edges)


def _edge_record(spec) -> tuple[str, str, str, Sign, Sign]:
    if isinstance(spec, Edge):
        return spec.id, spec.u, spec.v, spec.su, spec.sv
    if isinstance(spec, Mapping):
        return spec["id"], spec["u"], spec["v"], Sign.parse(spec["su"]), Sign.parse(spec["sv"])
    eid, u, v, su, sv = spec
    return eid, u, v, Sign.parse(su), Sign.parse(sv)


def build_graph(
    vertices: Iterable[str] = (),
    edges: Iterable = (),
    root: str | None = None,
    *,
    implicit_vertices: bool = True,
) -> BidirectedGraph:
    """Validate and build a graph.

    ``edges`` holds ``(id, u, v, sign_at_u, sign_at_v)`` tuples, mappings with
    the JSON keys, or :class:`Edge` records.  Endpoints not listed in
    ``vertices`` are declared implicitly unless ``implicit_vertices`` is off.
    """
    verts = set(vertices)
    recs = []
    seen: set[str] = set()
    for spec in edges:
        eid, u, v, su, sv = _edge_record(spec)
        if u == v:
            raise LoopEdge(f"edge {eid} is a loop at {u}", edge=eid)
        if eid in seen:
            raise DuplicateEdgeId(f"duplicate edge id {eid}", edge=eid)
        seen.add(eid)
        for w in (u, v):
            if w not in verts:
                if not implicit_vertices:
                    raise UnknownVertex(f"edge {eid} names unknown vertex {w}", vertex=w, edge=eid)
                verts.add(w)
        recs.append(Edge(eid, u, v, su, sv))
    if root is not None and root not in verts:
        if not implicit_vertices:
            raise UnknownVertex(f"root {root} is not a vertex", vertex=root)
        verts.add(root)
    return BidirectedGraph(tuple(sorted(verts)), tuple(sorted(recs, key=lambda e: e.id)), root)


def signed_vertices(vertices: Iterable[str]) -> set[SignedVertex]:
    return {SignedVertex(v, s) for v in vertices for s in SIGNS}


def sign_switch(B: BidirectedGraph, v: str) -> BidirectedGraph:
    """Negate every half-edge sign at ``v``."""
    B.incident(v)
    es = []
    for e in B.edges:
        su = -e.su if e.u == v else e.su
        sv = -e.sv if e.v == v else e.sv
        es.append(Edge(e.id, e.u, e.v, su, sv))
    return BidirectedGraph(B.vertices, tuple(es), B.root)


def relabel_signs(B: BidirectedGraph, v: str, sign: Sign) -> BidirectedGraph:
    """Overwrite every half-edge sign at ``v`` with ``sign``."""
    B.incident(v)
    es = []
    for e in B.edges:
        es.append(Edge(e.id, e.u, e.v, sign if e.u == v else e.su, sign if e.v == v else e.sv))
    return BidirectedGraph(B.vertices, tuple(es), B.root)


# ---------------------------------------------------------------------------
# trails


@dataclass(frozen=True)
class Trail:
    """A validated trail ``v0 e1 v1 ... el vl``.

    Build one with :func:`validate_trail` or :func:`walk`; the constructor
    itself does not check anything.
    """

    vertices: tuple[str, ...]
    edges: tuple[OrientedEdge, ...]
    tail_signs: tuple[Sign, ...] = field(compare=False, default=())
    head_signs: tuple[Sign, ...] = field(compare=False, default=())
    root: str | None = field(compare=False, default=None)

    @property
    def start(self) -> str:
        return self.vertices[0]

    @property
    def end(self) -> str:
        return self.vertices[-1]

    @property
    def is_trivial(self) -> bool:
        return not self.edges

    @property
    def start_sign(self) -> Sign | None:
        return self.tail_signs[0] if self.edges else None

    @property
    def end_sign(self) -> Sign | None:
        return self.head_signs[-1] if self.edges else None

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(o.edge for o in self.edges)

    @property
    def first_edge(self) -> OrientedEdge | None:
        return self.edges[0] if self.edges else None

    @property
    def last_edge(self) -> OrientedEdge | None:
        return self.edges[-1] if self.edges else None

    @property
    def is_path(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)

    @property
    def is_almost_path(self) -> bool:
        if not self.edges:
            return True
        head = self.vertices[:-1]
        return len(set(head)) == len(head)

    def is_r_trail_for(self, root: str) -> bool:
        return self.vertices[0] == root and root not in self.vertices[1:-1]

    @property
    def is_r_trail(self) -> bool:
        return self.root is not None and self.is_r_trail_for(self.root)

    def internal_vertices(self) -> tuple[str, ...]:
        return self.vertices[1:-1]

    def sequence(self) -> list[str]:
        out = [self.vertices[0]]
        for o, v in zip(self.edges, self.vertices[1:]):
            out += [o.edge, v]
        return out

    def prefix(self, k: int) -> "Trail":
        """The initial segment with ``k`` edges."""
        return Trail(self.vertices[: k + 1], self.edges[:k], self.tail_signs[:k], self.head_signs[:k], self.root)

    def suffix_from(self, k: int) -> "Trail":
        """The terminal segment starting at vertex index ``k``."""
        return Trail(self.vertices[k:], self.edges[k:], self.tail_signs[k:], self.head_signs[k:], self.root)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": list(self.edge_ids)}

    def __str__(self) -> str:
        return " ".join(self.sequence())


def validate_trail(B: BidirectedGraph, sequence: Sequence[str]) -> Trail:
    """Check an alternating vertex/edge-id sequence and return the :class:`Trail`.

    Raises the error for the first violated condition scanning left to right.
    """
    seq = list(sequence)
    if not seq or len(seq) % 2 == 0:
        raise BrokenIncidence("sequence must alternate vertex, edge, ..., vertex", position=0)
    verts = seq[0::2]
    eids = seq[1::2]
    for v in verts:
        B.incident(v)
    used: set[str] = set()
    edges, ts, hs = [], [], []
    for i, eid in enumerate(eids, start=1):
        e = B.edge(eid)
        tail, head = verts[i - 1], verts[i]
        if {tail, head} != {e.u, e.v}:
            raise BrokenIncidence(f"edge {eid} does not join {tail} and {head}", position=i, edge=eid)
        if eid in used:
            raise RepeatedEdge(f"edge {eid} used twice", edge=eid, position=i)
        used.add(eid)
        if edges and e.sign_at(tail) != -hs[-1]:
            raise SignClash(f"no sign change at {tail}", position=i - 1, vertex=tail)
        edges.append(OrientedEdge(eid, tail, head))
        ts.append(e.sign_at(tail))
        hs.append(e.sign_at(head))
    return Trail(tuple(verts), tuple(edges), tuple(ts), tuple(hs), B.root)


def walk(B: BidirectedGraph, start: str, edge_ids: Iterable[str]) -> Trail:
    """Trail from ``start`` following ``edge_ids``; each step goes to the other end."""
    seq = [start]
    cur = start
    for eid in edge_ids:
        cur = B.edge(eid).other(cur)
        seq += [eid, cur]
    return validate_trail(B, seq)


def reverse_trail(T: Trail) -> Trail:
    return Trail(
        T.vertices[::-1],
        tuple(o.reversed() for o in reversed(T.edges)),
        T.head_signs[::-1],
        T.tail_signs[::-1],
        T.root,
    )


def concat(S: Trail, T: Trail) -> Trail:
    """``S ∘ T``; a trivial side matches any sign at the junction."""
    if S.end != T.start:
        raise EndpointMismatch(f"{S.end} != {T.start}", left=S.end, right=T.start)
    shared = set(S.edge_ids) & set(T.edge_ids)
    if shared:
        eid = sorted(shared)[0]
        raise RepeatedEdge(f"edge {eid} on both trails", edge=eid)
    if S.edges and T.edges and S.end_sign == T.start_sign:
        raise JunctionSignClash(f"both trails use sign {S.end_sign} at {S.end}", vertex=S.end)
    return Trail(
        S.vertices + T.vertices[1:],
        S.edges + T.edges,
        S.tail_signs + T.tail_signs,
        S.head_signs + T.head_signs,
        S.root if S.root is not None else T.root,
    )


def trivial_trail(B: BidirectedGraph, v: str) -> Trail:
    B.incident(v)
    return Trail((v,), (), (), (), B.root)


# ---------------------------------------------------------------------------
# rooted directed multigraphs (skeletons, flow networks)


@dataclass(frozen=True, order=True)
class Arc:
    id: str
    tail: str
    head: str


@dataclass(frozen=True)
class Digraph:
    vertices: tuple[str, ...]
    arcs: tuple[Arc, ...]
    root: str | None = None
    _by_id: dict = field(default=None, compare=False, repr=False, hash=False)
    _out: dict = field(default=None, compare=False, repr=False, hash=False)
    _in: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self) -> None:
        by_id = {a.id: a for a in self.arcs}
        out: dict[str, list[Arc]] = {v: [] for v in self.vertices}
        inn: dict[str, list[Arc]] = {v: [] for v in self.vertices}
        for a in self.arcs:
            out[a.tail].append(a)
            inn[a.head].append(a)
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_out", {v: tuple(x) for v, x in out.items()})
        object.__setattr__(self, "_in", {v: tuple(x) for v, x in inn.items()})

    def arc(self, aid: str) -> Arc:
        try:
            return self._by_id[aid]
        except KeyError:
            raise UnknownEdge(f"no arc {aid!r}", edge=aid) from None

    def out_arcs(self, v: str) -> tuple[Arc, ...]:
        return self._out[v]

    def in_arcs(self, v: str) -> tuple[Arc, ...]:
        return self._in[v]

    def has_arc(self, aid: str) -> bool:
        return aid in self._by_id

    def without_arcs(self, drop: Iterable[str]) -> "Digraph":
        drop = set(drop)
        return Digraph(self.vertices, tuple(a for a in self.arcs if a.id not in drop), self.root)

    def triples(self) -> set[tuple[str, str, str]]:
        return {(a.id, a.tail, a.head) for a in self.arcs}


def build_digraph(
    vertices: Iterable[str], arcs: Iterable, root: str | None = None, allow_loops: bool = False
) -> Digraph:
    verts = set(vertices)
    recs = []
    seen = set()
    for spec in arcs:
        a = spec if isinstance(spec, Arc) else Arc(*spec)
        if a.tail == a.head and not allow_loops:
            raise LoopEdge(f"arc {a.id} is a loop", edge=a.id)
        if a.id in seen:
            raise DuplicateEdgeId(f"duplicate arc id {a.id}", edge=a.id)
        seen.add(a.id)
        verts.update((a.tail, a.head))
        recs.append(a)
    if root is not None:
        verts.add(root)
    return Digraph(tuple(sorted(verts)), tuple(sorted(recs, key=lambda a: a.id)), root)


@dataclass(frozen=True)
class DiPath:
    """A directed walk given by its vertex and arc sequences."""

    vertices: tuple[str, ...]
    arcs: tuple[str, ...]

    @property
    def start(self) -> str:
        return self.vertices[0]

    @property
    def end(self) -> str:
        return self.vertices[-1]

    def is_path(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "arcs": list(self.arcs)}


def dipath(D: Digraph, start: str, arc_ids: Iterable[str]) -> DiPath:
    verts = [start]
    ids = []
    seen = set()
    for aid in arc_ids:
        a = D.arc(aid)
        if a.tail != verts[-1]:
            raise BrokenIncidence(f"arc {aid} does not leave {verts[-1]}", edge=aid, position=len(ids) + 1)
        if aid in seen:
            raise RepeatedEdge(f"arc {aid} used twice", edge=aid)
        seen.add(aid)
        verts.append(a.head)
        ids.append(aid)
    return DiPath(tuple(verts), tuple(ids))


def as_bidirected(D: Digraph) -> BidirectedGraph:
    """Read a digraph as a bidirected graph: sign + at heads, - at tails."""
    return BidirectedGraph(
        D.vertices,
        tuple(Edge(a.id, a.tail, a.head, MINUS, PLUS) for a in D.arcs),
        D.root,
    )


# ---------------------------------------------------------------------------
# formats

TEXT_HEADER = "bidigraph v1"


def _check_token(tok: str, what: str) -> None:
    if not tok or any(ch.isspace() for ch in tok) or "#" in tok:
        raise FormatError(f"{what} {tok!r} cannot be written in the text format", token=tok)


def to_text(B: BidirectedGraph) -> str:
    """Canonical text form; isolated vertices get ``vertex`` lines."""
    lines = [TEXT_HEADER]
    if B.root is not None:
        _check_token(B.root, "root")
        lines.append(f"root {B.root}")
    for v in B.vertices:
        if not B.incident(v) and v != B.root:
            _check_token(v, "vertex")
            lines.append(f"vertex {v}")
    for e in B.edges:
        for tok in (e.id, e.u, e.v):
            _check_token(tok, "identifier")
        lines.append(f"edge {e.id} {e.u} {e.v} {e.su} {e.sv}")
    return "\n".join(lines) + "\n"


def parse_text(text: str) -> BidirectedGraph:
    root = None
    verts: list[str] = []
    edges = []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if not header_seen:
            if parts != TEXT_HEADER.split():
                raise FormatError(f"line {lineno}: expected {TEXT_HEADER!r}", line=lineno)
            header_seen = True
            continue
        kw = parts[0]
        if kw == "root" and len(parts) == 2:
            root = parts[1]
        elif kw == "vertex" and len(parts) == 2:
            verts.append(parts[1])
        elif kw == "edge" and len(parts) == 6:
            edges.append((parts[1], parts[2], parts[3], Sign.parse(parts[4]), Sign.parse(parts[5])))
        else:
            raise FormatError(f"line {lineno}: cannot parse {line!r}", line=lineno)
    if not header_seen:
        raise FormatError("missing header")
    return build_graph(verts, edges, root)


def to_json(B: BidirectedGraph) -> dict:
    out: dict = {"version": 1}
    if B.root is not None:
        out["root"] = B.root
    out["vertices"] = list(B.vertices)
    out["edges"] = [{"id": e.id, "u": e.u, "v": e.v, "su": str(e.su), "sv": str(e.sv)} for e in B.edges]
    return out


def from_json(data: Mapping | str) -> BidirectedGraph:
    if isinstance(data, str):
        data = json.loads(data)
    if data.get("version") != 1:
        raise FormatError("unsupported JSON version", version=data.get("version"))
    return build_graph(data.get("vertices", ()), data.get("edges", ()), data.get("root"))


def dumps(obj) -> str:
    """Deterministic JSON text used for every report this package writes."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(B: BidirectedGraph, name: str = "B") -> str:
    lines = [f"graph {_q(name)} {{"]
    for v in B.vertices:
        attrs = " [shape=doublecircle]" if v == B.root else ""
        lines.append(f"  {_q(v)}{attrs};")
    for e in B.edges:
        label = f"{e.u}:{e.su},{e.v}:{e.sv}"
        lines.append(f"  {_q(e.u)} -- {_q(e.v)} [id={_q(e.id)}, label={_q(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def digraph_to_dot(D: Digraph, name: str = "D") -> str:
    lines = [f"digraph {_q(name)} {{"]
    for v in D.vertices:
        attrs = " [shape=doublecircle]" if v == D.root else ""
        lines.append(f"  {_q(v)}{attrs};")
    for a in D.arcs:
        lines.append(f"  {_q(a.tail)} -> {_q(a.head)} [id={_q(a.id)}, label={_q(a.id)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def iter_signed_arrivals(B: BidirectedGraph, v: str) -> Iterator[tuple[OrientedEdge, Sign]]:
    """Every orientation with head ``v`` together with its sign at ``v``."""
    for e in B.incident(v):
        yield OrientedEdge(e.id, e.other(v), v), e.sign_at(v)
