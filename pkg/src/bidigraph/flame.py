"""Flames: subgraphs that keep every signed root connectivity within a global edge budget."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .connectivity import kappa_signed, lambda_signed, maxflow_paths
from .core import SIGNS, BidirectedGraph, Digraph, Sign, Trail, validate_trail
from .decomposition import auxiliary_graph, trail_skeleton
from .errors import (
    InternalInconsistency,
    NotClean,
    NotEdgeClean,
    NotSpanningReachable,
    NotSubgraph,
    StalledDeletion,
)
from .reachability import is_clean, is_edge_clean, path_exists, restrict

FLAME_KINDS = ("edge", "vertex")


# ---------------------------------------------------------------------------
# directed flames


def _lambdas(D: Digraph) -> dict[str, int]:
    return {v: maxflow_paths(D, v).value for v in D.vertices if v != D.root}


def directed_flame(D: Digraph) -> Digraph:
    """Delete in-arcs greedily until every in-degree equals the root connectivity.

    Arcs into the root carry no root path and are dropped first.  Vertices are
    visited in sorted order and in-arcs in id order; every deletion is checked
    against all connectivities by max-flow.
    """
    r = D.root
    target = _lambdas(D)
    F = D.without_arcs(a.id for a in D.in_arcs(r))
    for v in sorted(target):
        while len(F.in_arcs(v)) > target[v]:
            for a in sorted(F.in_arcs(v), key=lambda a: a.id):
                G = F.without_arcs([a.id])
                if _lambdas(G) == target:
                    F = G
                    break
            else:
                raise StalledDeletion(f"no deletable in-arc at {v}", vertex=v)
    return F


def is_directed_flame(D: Digraph) -> bool:
    lam = _lambdas(D)
    return all(len(D.in_arcs(v)) == lam[v] for v in lam)


# ---------------------------------------------------------------------------
# ear decompositions


def signed_reach(B: BidirectedGraph, v: str, alpha: Sign, w: str, beta: Sign):
    """The (v,alpha)-(w,beta) path, if any."""
    if not (B.has_vertex(v) and B.has_vertex(w)) or v == w:
        return None
    hit = path_exists(B, v, alpha, w, beta)
    return hit.witness if hit else None


def sigma(B: BidirectedGraph, v: str, alpha: Sign, w: str, beta: Sign) -> int:
    return int(signed_reach(B, v, alpha, w, beta) is not None)


@dataclass(frozen=True)
class EarStep:
    kind: str  # "ear" or "bone"
    edges: tuple[str, ...]
    new_vertices: tuple[str, ...]
    walk: Trail | None = None


@dataclass(frozen=True)
class EarDecomposition:
    base: BidirectedGraph
    source: str
    sign: Sign
    steps: tuple[EarStep, ...]

    def prefix(self, k: int) -> BidirectedGraph:
        """The subgraph after ``k`` steps, on its own vertex set."""
        verts = {self.source}
        edges: set[str] = set()
        for st in self.steps[:k]:
            verts.update(st.new_vertices)
            edges.update(st.edges)
        return self.base.edge_subgraph(edges, verts)

    def spanning_index(self) -> int:
        """First step count after which every vertex is covered."""
        verts = {self.source}
        total = set(self.base.vertices)
        for k, st in enumerate(self.steps):
            if verts == total:
                return k
            verts.update(st.new_vertices)
        return len(self.steps)


def reachable_from(B: BidirectedGraph, v: str, alpha: Sign) -> set[str]:
    out = {v}
    for w in B.vertices:
        if w != v and any(signed_reach(B, v, alpha, w, s) is not None for s in SIGNS):
            out.add(w)
    return out


def ear_decomposition(B: BidirectedGraph, v: str, alpha: Sign) -> EarDecomposition:
    """Grow from ``{v}`` by ears and bones, keeping (v,alpha)-accessibility at every step."""
    missing = sorted(set(B.vertices) - reachable_from(B, v, alpha))
    if missing:
        raise NotSpanningReachable(
            f"vertices {missing} end no path from ({v},{alpha}); restrict first", vertices=missing
        )
    verts = {v}
    edges: set[str] = set()
    steps: list[EarStep] = []
    while len(verts) < len(B.vertices):
        P = _path_leaving(B, v, alpha, verts)
        k = next(i for i, u in enumerate(P.vertices) if u not in verts)
        w, e, beta = P.vertices[k], P.edges[k - 1], P.head_signs[k - 1]
        Q = signed_reach(B, v, alpha, w, -beta)
        if Q is None:
            steps.append(EarStep("bone", (e.edge,), (w,)))
            verts.add(w)
            edges.add(e.edge)
            continue
        j = max(i for i, u in enumerate(Q.vertices) if u in verts)
        R = validate_trail(B, Q.suffix_from(j).sequence() + [e.edge, e.tail])
        new = tuple(u for u in R.vertices[1:-1])
        if any(u in verts for u in new) or e.edge in edges:
            raise InternalInconsistency("assembled ear meets the current subgraph internally")
        steps.append(EarStep("ear", R.edge_ids, new, R))
        verts.update(new)
        edges.update(R.edge_ids)
    for eid in sorted(set(B.edge_ids) - edges):
        steps.append(EarStep("ear", (eid,), ()))
    return EarDecomposition(B, v, alpha, tuple(steps))


def _path_leaving(B: BidirectedGraph, v: str, alpha: Sign, verts: set[str]) -> Trail:
    for w in sorted(set(B.vertices) - verts):
        for s in SIGNS:
            P = signed_reach(B, v, alpha, w, s)
            if P is not None:
                return P
    raise NotSpanningReachable("no path leaves the current subgraph")


def is_accessible(B: BidirectedGraph, H: BidirectedGraph, v: str, alpha: Sign) -> bool:
    """Every signed vertex of ``H`` reachable from (v,alpha) in ``B`` is reachable in ``H``."""
    for w in H.vertices:
        if w == v:
            continue
        for s in SIGNS:
            if signed_reach(B, v, alpha, w, s) is not None and signed_reach(H, v, alpha, w, s) is None:
                return False
    return True


def sigma_budget(B: BidirectedGraph, v: str, alpha: Sign) -> int:
    return sum(sigma(B, v, alpha, w, s) for w in B.vertices if w != v for s in SIGNS)


def spanning_subgraph(B: BidirectedGraph, v: str, alpha: Sign) -> BidirectedGraph:
    """A (v,alpha)-spanning subgraph within the sigma budget (all vertices kept)."""
    core = B.induced(reachable_from(B, v, alpha))
    E = ear_decomposition(core, v, alpha)
    H = E.prefix(E.spanning_index())
    return B.edge_subgraph(H.edge_ids)


# ---------------------------------------------------------------------------
# bidirected flames


@dataclass(frozen=True)
class FlameReport:
    kind: str
    graph: BidirectedGraph
    budget: int
    before: Mapping[tuple[str, Sign], int] = field(repr=False)
    after: Mapping[tuple[str, Sign], int] = field(repr=False)
    problems: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.problems

    @property
    def edge_count(self) -> int:
        return len(self.graph.edges)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "ok": self.ok,
            "edges": list(self.graph.edge_ids),
            "edge_count": self.edge_count,
            "budget": self.budget,
            "connectivities": [
                {"vertex": v, "sign": str(s), "base": self.before[(v, s)], "flame": self.after[(v, s)]}
                for (v, s) in sorted(self.before, key=lambda k: (k[0], int(k[1])))
            ],
            "problems": list(self.problems),
        }


def signed_connectivities(B: BidirectedGraph, kind: str) -> dict[tuple[str, Sign], int]:
    r = B.require_root()
    fn = (lambda v, s: lambda_signed(B, v, s, "path")) if kind == "edge" else (lambda v, s: kappa_signed(B, v, s))
    return {(v, s): fn(v, s) for v in B.vertices if v != r for s in SIGNS}


def verify_flame(B: BidirectedGraph, F: BidirectedGraph, kind: str, *, oracle: bool = False) -> FlameReport:
    """Check connectivity preservation and the edge budget; problems list the violations in order."""
    if kind not in FLAME_KINDS:
        raise ValueError(f"unknown flame kind {kind!r}")
    if not F.is_subgraph_of(B):
        raise NotSubgraph("the flame candidate is not a subgraph of the base graph")
    F = F.rooted(B.root)
    before = signed_connectivities(B, kind)
    after = signed_connectivities(F, kind)
    problems = []
    for key in sorted(before, key=lambda k: (k[0], int(k[1]))):
        if before[key] != after[key]:
            problems.append(f"connectivity at ({key[0]},{key[1]}) drops from {before[key]} to {after[key]}")
    budget = sum(before.values())
    if len(F.edges) > budget:
        problems.append(f"{len(F.edges)} edges exceed the budget {budget}")
    if oracle:
        problems += _oracle_problems(B, F, kind, before, after)
    return FlameReport(kind, F, budget, before, after, tuple(problems))


def _oracle_problems(B, F, kind, before, after) -> list[str]:
    from .oracle import bf_kappa, bf_lambda

    out = []
    for (v, s), val in sorted(before.items(), key=lambda k: (k[0][0], int(k[0][1]))):
        for G, table, name in ((B, before, "base"), (F, after, "flame")):
            exact = bf_lambda(G, v, "path", s)[0] if kind == "edge" else bf_kappa(G, v, s)[0]
            if exact != table[(v, s)]:
                out.append(f"oracle disagrees on {name} ({v},{s}): {exact} vs {table[(v, s)]}")
    return out


def edge_flame(B: BidirectedGraph) -> FlameReport:
    """Flame for the signed path connectivities of an edge-clean graph."""
    if not is_edge_clean(B):
        raise NotEdgeClean("edge flames need an edge-clean graph")
    Bp = restrict(B, "path")
    TD = trail_skeleton(Bp)
    keep = {a.id for a in directed_flame(TD.skeleton).arcs}
    for C in TD.components:
        inside = Bp.induced(C.vertices)
        keep |= set(spanning_subgraph(inside, C.anchor, C.alpha).edge_ids)
    report = verify_flame(B, B.edge_subgraph(keep), "edge")
    if not report.ok:
        raise InternalInconsistency("edge flame failed verification", problems=list(report.problems))
    return report


def vertex_flame(B: BidirectedGraph) -> FlameReport:
    """Flame for the signed vertex connectivities of a clean graph, built in the split graph."""
    if not is_clean(B):
        raise NotClean("vertex flames need a clean graph")
    AG = auxiliary_graph(B)
    inner = edge_flame(AG.graph)
    keep = set(inner.graph.edge_ids)
    dead = {v for v in AG.plain if all(kappa_signed(B, v, s) == 0 for s in SIGNS)}
    for v in sorted(AG.plain - dead):
        keep.add(AG.aux_edges[v])
    base_ids = {e for e in keep if not AG.is_aux(e)}
    report = verify_flame(B, B.edge_subgraph(base_ids), "vertex")
    if not report.ok:
        raise InternalInconsistency("vertex flame failed verification", problems=list(report.problems))
    return report
