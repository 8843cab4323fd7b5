"""Brute-force ground truth.

Everything here works by exhaustive enumeration and is deliberately written
without the polynomial machinery (and without ``core.validate_trail``), so the
two can be compared.  Guards keep the enumerators from silently running for
hours: anything over ``MAX_EDGES`` edges raises :class:`TooLarge` unless the
caller raises the limit explicitly.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .core import (
    MINUS,
    PLUS,
    SIGNS,
    BidirectedGraph,
    OrientedEdge,
    Sign,
    Trail,
    build_graph,
)
from .errors import ConstraintUnsatisfiable, TooLarge
from .matching import UGraph

MAX_EDGES = 16
MAX_CUT_VERTICES = 10

KINDS = ("trail", "r-trail", "path", "almost-path")


def _guard(B: BidirectedGraph, limit: int | None) -> None:
    limit = MAX_EDGES if limit is None else limit
    if len(B.edges) > limit:
        raise TooLarge(f"{len(B.edges)} edges exceed the oracle guard of {limit}", edges=len(B.edges), limit=limit)


def _table(B: BidirectedGraph) -> dict[str, list[tuple[str, str, Sign, Sign]]]:
    table: dict[str, list] = {v: [] for v in B.vertices}
    for e in B.edges:
        table[e.u].append((e.id, e.v, e.su, e.sv))
        table[e.v].append((e.id, e.u, e.sv, e.su))
    for v in table:
        table[v].sort(key=lambda t: (t[0], t[1]))
    return table


def walks(
    B: BidirectedGraph,
    kind: str,
    start: str | None = None,
    start_sign: Sign | None = None,
    *,
    max_edges: int | None = None,
) -> Iterator[Trail]:
    """Every walk of ``kind`` from ``start`` (the root for ``r-trail``), trivial one included.

    ``start_sign`` constrains the sign of the first edge at the start vertex.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown walk kind {kind!r}")
    _guard(B, max_edges)
    if kind == "r-trail":
        start = B.require_root()
    if start is None:
        raise ValueError("a start vertex is required")
    table = _table(B)
    root = B.root
    verts = [start]
    edges: list[OrientedEdge] = []
    ts: list[Sign] = []
    hs: list[Sign] = []
    used: set[str] = set()

    def emit() -> Trail:
        return Trail(tuple(verts), tuple(edges), tuple(ts), tuple(hs), root)

    def dfs() -> Iterator[Trail]:
        yield emit()
        cur = verts[-1]
        if edges:
            if kind == "r-trail" and cur == root:
                return
            if kind == "almost-path" and cur in verts[:-1]:
                return
        for eid, other, s_here, s_there in table[cur]:
            if eid in used:
                continue
            if edges and s_here == hs[-1]:
                continue
            if not edges and start_sign is not None and s_here != start_sign:
                continue
            if kind == "path" and other in verts:
                continue
            used.add(eid)
            verts.append(other)
            edges.append(OrientedEdge(eid, cur, other))
            ts.append(s_here)
            hs.append(s_there)
            yield from dfs()
            used.discard(eid)
            verts.pop()
            edges.pop()
            ts.pop()
            hs.pop()

    yield from dfs()


def enumerate_walks(
    B: BidirectedGraph,
    kind: str,
    start: str | None = None,
    end: str | None = None,
    end_sign: Sign | None = None,
    *,
    start_sign: Sign | None = None,
    nontrivial: bool = False,
    max_edges: int | None = None,
) -> list[Trail]:
    """All walks of ``kind`` with the given endpoint constraints."""
    out = []
    for T in walks(B, kind, start, start_sign, max_edges=max_edges):
        if end is not None and T.end != end:
            continue
        if end_sign is not None and (not T.edges or T.end_sign != end_sign):
            continue
        if nontrivial and not T.edges:
            continue
        out.append(T)
    return out


def root_walks(B: BidirectedGraph, kind: str, *, max_edges: int | None = None) -> list[Trail]:
    """Walks from the root: r-trails, or paths/almost paths starting at r."""
    start = B.require_root()
    return list(walks(B, kind, start, max_edges=max_edges))


# ---------------------------------------------------------------------------
# reachability by enumeration


@dataclass
class ReachTable:
    """Orientations and signed arrivals reached from the root, per regime."""

    trail: set[OrientedEdge] = field(default_factory=set)
    path: set[OrientedEdge] = field(default_factory=set)
    almost_path: set[OrientedEdge] = field(default_factory=set)
    trail_signed: set[tuple[str, Sign]] = field(default_factory=set)
    path_signed: set[tuple[str, Sign]] = field(default_factory=set)
    rr_trail: bool = False
    rr_almost_path: bool = False


def reach_table(B: BidirectedGraph, *, max_edges: int | None = None) -> ReachTable:
    r = B.require_root()
    out = ReachTable()
    for T in walks(B, "r-trail", max_edges=max_edges):
        if T.edges:
            out.trail.add(T.edges[-1])
            out.trail_signed.add((T.end, T.end_sign))
            if T.end == r:
                out.rr_trail = True
    for T in walks(B, "almost-path", r, max_edges=max_edges):
        if T.edges:
            out.almost_path.add(T.edges[-1])
            if T.end == r:
                out.rr_almost_path = True
            if len(set(T.vertices)) == len(T.vertices):
                out.path.add(T.edges[-1])
                out.path_signed.add((T.end, T.end_sign))
    return out


def bf_path_exists(B: BidirectedGraph, x: str, alpha: Sign, y: str, beta: Sign, *, max_edges: int | None = None) -> bool:
    for T in walks(B, "path", x, alpha, max_edges=max_edges):
        if T.edges and T.end == y and T.end_sign == beta:
            return True
    return False


def bf_plain_vertices(B: BidirectedGraph) -> set[str]:
    t = reach_table(B)
    r = B.require_root()
    return {v for v in B.vertices if v != r and any((v, s) not in t.path_signed for s in SIGNS)}


def bf_is_edge_clean(B: BidirectedGraph) -> bool:
    return not reach_table(B).rr_trail


def bf_is_clean(B: BidirectedGraph) -> bool:
    return not reach_table(B).rr_almost_path


def bf_classify(B: BidirectedGraph, regime: str) -> dict[str, tuple[str, OrientedEdge | None]]:
    """Per edge: ("unreachable"|"directable"|"undirectable", natural orientation)."""
    t = reach_table(B)
    reached = t.trail if regime == "trail" else t.almost_path
    out = {}
    for e in B.edges:
        hits = [o for o in e.orientations() if o in reached]
        if not hits:
            out[e.id] = ("unreachable", None)
        elif len(hits) == 1:
            out[e.id] = ("directable", hits[0])
        else:
            out[e.id] = ("undirectable", None)
    return out


def bf_components(B: BidirectedGraph, regime: str) -> list[frozenset[str]]:
    """Vertex sets of the connected pieces formed by undirectable edges."""
    table = bf_classify(B, regime)
    parent = {v: v for v in B.vertices}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    touched = set()
    for e in B.edges:
        if table[e.id][0] == "undirectable":
            parent[find(e.u)] = find(e.v)
            touched |= {e.u, e.v}
    groups: dict[str, set[str]] = {}
    for v in touched:
        groups.setdefault(find(v), set()).add(v)
    return sorted((frozenset(g) for g in groups.values()), key=sorted)


def bf_solid_vertices(B: BidirectedGraph, regime: str) -> set[str]:
    """Vertices surviving contraction: off every component, or the component's anchor.

    In the trail regime the anchor is the root or the head of a directable edge
    entering the component; in the almost-path regime it is the root or the
    component's plain vertex.
    """
    r = B.require_root()
    table = bf_classify(B, regime)
    comps = bf_components(B, regime)
    inside = set().union(*comps) if comps else set()
    if regime == "trail":
        marked = {o.head for status, o in table.values() if status == "directable"}
    else:
        marked = bf_plain_vertices(B)
    out = {v for v in B.vertices if v not in inside}
    for C in comps:
        out |= {r} & C or (marked & C)
    return out


def bf_skeleton_arcs(B: BidirectedGraph, regime: str) -> list[tuple[str, str, str]]:
    """(edge, tail, head) of every directable edge, tails moved to their component's anchor."""
    table = bf_classify(B, regime)
    solid = bf_solid_vertices(B, regime)
    anchor = {}
    for C in bf_components(B, regime):
        (a,) = C & solid
        anchor.update({v: a for v in C})
    return sorted(
        (eid, anchor.get(o.tail, o.tail), anchor.get(o.head, o.head))
        for eid, (status, o) in table.items()
        if status == "directable"
    )


# ---------------------------------------------------------------------------
# exact connectivities


def _bit_index(B: BidirectedGraph) -> tuple[dict[str, int], dict[str, int]]:
    ebit = {e.id: i for i, e in enumerate(B.edges)}
    vbit = {v: len(B.edges) + i for i, v in enumerate(B.vertices)}
    return ebit, vbit


def max_packing(masks: Sequence[int], cap_mask: int = 0) -> list[int]:
    """Largest set of pairwise disjoint masks, as indices into ``masks``.

    Supersets of other masks are dropped first (swapping a member for a subset
    keeps a family disjoint).  ``cap_mask`` marks resources every member must
    use one of, giving the pruning bound.
    """
    order = sorted(set(range(len(masks))), key=lambda i: (bin(masks[i]).count("1"), i))
    kept: list[int] = []
    seen_masks: set[int] = set()
    for i in order:
        m = masks[i]
        if m in seen_masks or any((masks[j] & m) == masks[j] for j in kept):
            continue
        seen_masks.add(m)
        kept.append(i)
    best: list[int] = []

    def rec(cands: list[int], chosen: list[int], used: int) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        bound = len(cands)
        if cap_mask:
            bound = min(bound, bin(cap_mask & ~used).count("1"))
        if len(chosen) + bound <= len(best):
            return
        if not cands:
            return
        i, rest = cands[0], cands[1:]
        m = masks[i]
        chosen.append(i)
        rec([j for j in rest if not masks[j] & m], chosen, used | m)
        chosen.pop()
        rec(rest, chosen, used)

    rec(kept, [], 0)
    return best


def bf_lambda(
    B: BidirectedGraph,
    x: str,
    kind: str,
    sign: Sign | None = None,
    *,
    max_edges: int | None = None,
) -> tuple[int, list[Trail]]:
    """Maximum number of edge-disjoint root-to-``x`` walks of ``kind`` ("trail" or "path")."""
    r = B.require_root()
    wk = "r-trail" if kind == "trail" else "path"
    cands = [
        T
        for T in walks(B, wk, r, max_edges=max_edges)
        if T.edges and T.end == x and (sign is None or T.end_sign == sign)
    ]
    ebit, _ = _bit_index(B)
    masks = [sum(1 << ebit[o.edge] for o in T.edges) for T in cands]
    cap = sum(1 << ebit[e.id] for e in B.incident(x))
    chosen = max_packing(masks, cap)
    return len(chosen), [cands[i] for i in chosen]


def bf_kappa(
    B: BidirectedGraph,
    x: str,
    sign: Sign | None = None,
    *,
    max_edges: int | None = None,
) -> tuple[int, list[Trail]]:
    """Maximum number of internally vertex-disjoint root-to-``x`` paths."""
    r = B.require_root()
    cands = [
        T
        for T in walks(B, "path", r, max_edges=max_edges)
        if T.edges and T.end == x and (sign is None or T.end_sign == sign)
    ]
    ebit, vbit = _bit_index(B)
    masks = [
        sum(1 << ebit[o.edge] for o in T.edges) | sum(1 << vbit[v] for v in T.vertices[1:-1]) for T in cands
    ]
    cap = sum(1 << ebit[e.id] for e in B.incident(x))
    chosen = max_packing(masks, cap)
    return len(chosen), [cands[i] for i in chosen]


def bf_in_vertices(B: BidirectedGraph, x: str) -> set[str]:
    r = B.require_root()
    out = set()
    for T in walks(B, "path", r):
        if len(T.edges) >= 1 and T.end == x:
            v = T.vertices[-2]
            if v not in (r, x):
                out.add(v)
    return out


def delta(B: BidirectedGraph, X: Iterable[str], reached: set[OrientedEdge]) -> set[str]:
    X = set(X)
    return {o.edge for o in reached if o.head in X and o.tail not in X}


def epsilon(B: BidirectedGraph, X: Iterable[str], reached: set[OrientedEdge]) -> set[str]:
    X = set(X)
    return {o.head for o in reached if o.head in X and o.tail not in X}


def bf_min_cut(
    B: BidirectedGraph, x: str, kind: str, *, max_edges: int | None = None, max_vertices: int | None = None
) -> tuple[int, frozenset[str]]:
    """Exact minimum boundary over admissible ``X`` by subset enumeration.

    ``kind`` is "trail" or "path" (edge boundaries) or "vertex" (vertex boundary,
    with ``X`` required to contain the in-vertices of ``x``).
    """
    r = B.require_root()
    others = [v for v in B.vertices if v not in (r, x)]
    limit = MAX_CUT_VERTICES if max_vertices is None else max_vertices
    if len(B.vertices) > limit:
        raise TooLarge(f"{len(B.vertices)} vertices exceed the cut guard of {limit}", vertices=len(B.vertices))
    t = reach_table(B, max_edges=max_edges)
    if kind == "trail":
        reached, measure = t.trail, delta
        forced: set[str] = set()
    elif kind == "path":
        reached, measure = t.path, delta
        forced = set()
    elif kind == "vertex":
        reached, measure = t.path, epsilon
        forced = bf_in_vertices(B, x)
    else:
        raise ValueError(kind)
    free = [v for v in others if v not in forced]
    best: tuple[int, frozenset[str]] | None = None
    for k in range(len(free) + 1):
        for extra in itertools.combinations(free, k):
            X = frozenset({x} | forced | set(extra))
            size = len(measure(B, X, reached))
            if best is None or size < best[0] or (size == best[0] and sorted(X) < sorted(best[1])):
                best = (size, X)
    return best


# ---------------------------------------------------------------------------
# matchings


def bf_max_matching(G: UGraph) -> int:
    """Maximum matching size by exhaustive branching."""
    edges = [(e.a, e.b) for e in G.edges]
    best = 0

    def rec(i: int, used: frozenset, k: int) -> None:
        nonlocal best
        best = max(best, k)
        if i == len(edges) or k + (len(edges) - i) <= best:
            return
        a, b = edges[i]
        if a not in used and b not in used:
            rec(i + 1, used | {a, b}, k + 1)
        rec(i + 1, used, k)

    rec(0, frozenset(), 0)
    return best


def bf_alternating_path(G: UGraph, matching: Iterable[str], a, b) -> list | None:
    """Exhaustive search for an alternating a-b path starting and ending off the matching."""
    M = set(matching)
    best: list | None = None

    def rec(path: list, want_matching: bool) -> bool:
        nonlocal best
        cur = path[-1]
        for e in G.incident(cur):
            if (e.id in M) != want_matching:
                continue
            nxt = e.other(cur)
            if nxt in path:
                continue
            path.append(nxt)
            if nxt == b and not want_matching:
                best = list(path)
                return True
            if rec(path, not want_matching):
                return True
            path.pop()
        return False

    rec([a], False)
    return best


# ---------------------------------------------------------------------------
# linkage checks


def covers(R: Sequence[Trail], first_edges: Iterable[str], last_edges: Iterable[str]) -> bool:
    firsts = {T.edges[0].edge for T in R if T.edges}
    lasts = {T.edges[-1].edge for T in R if T.edges}
    return set(first_edges) <= firsts and set(last_edges) <= lasts


def bf_pym_exists(
    B: BidirectedGraph,
    x: str,
    first_edges: Iterable[str],
    last_edges: Iterable[str],
    *,
    vertex_disjoint: bool = False,
) -> list[Trail] | None:
    """Search for a disjoint r-x path family covering the given first and last edges."""
    r = B.require_root()
    first_edges, last_edges = set(first_edges), set(last_edges)
    cands = [T for T in walks(B, "path", r) if T.edges and T.end == x]
    ebit, vbit = _bit_index(B)

    def mask(T: Trail) -> int:
        m = sum(1 << ebit[o.edge] for o in T.edges)
        if vertex_disjoint:
            m |= sum(1 << vbit[v] for v in T.vertices[1:-1])
        return m

    masks = [mask(T) for T in cands]
    need = sorted(first_edges | {("last", e) for e in last_edges}, key=str)

    def satisfied(T: Trail, req) -> bool:
        if isinstance(req, tuple):
            return T.edges[-1].edge == req[1]
        return T.edges[0].edge == req

    def rec(i: int, used: int, chosen: list[int]) -> list[int] | None:
        while i < len(need) and any(satisfied(cands[j], need[i]) for j in chosen):
            i += 1
        if i == len(need):
            return chosen
        for j, T in enumerate(cands):
            if masks[j] & used or not satisfied(T, need[i]):
                continue
            got = rec(i + 1, used | masks[j], chosen + [j])
            if got is not None:
                return got
        return None

    got = rec(0, 0, [])
    return None if got is None else [cands[j] for j in got]


# ---------------------------------------------------------------------------
# random instances

CONSTRAINTS = (None, "edge-clean", "clean", "trail-reachable", "reachable", "path-reachable")


@dataclass(frozen=True)
class GeneratorParams:
    seed: int
    n: int
    m: int
    constraint: str | None = None
    max_tries: int = 2000

    def __post_init__(self) -> None:
        if self.n < 1 or self.m < 0:
            raise ValueError("need n >= 1 and m >= 0")
        if self.constraint not in CONSTRAINTS:
            raise ValueError(f"unknown constraint {self.constraint!r}")


@dataclass
class GenerationStats:
    attempts: int = 0
    rejected: int = 0


def vertex_names(n: int) -> list[str]:
    letters = "abcdefghijklmnopqstuvwxyz"
    names = ["r"]
    for i in range(n - 1):
        names.append(letters[i] if i < len(letters) else f"v{i}")
    return names


def satisfies(B: BidirectedGraph, constraint: str | None) -> bool:
    if constraint is None:
        return True
    t = reach_table(B, max_edges=max(MAX_EDGES, len(B.edges)))
    if constraint == "edge-clean":
        return not t.rr_trail
    if constraint == "clean":
        return not t.rr_almost_path
    reached = {"trail-reachable": t.trail, "reachable": t.almost_path, "path-reachable": t.path}[constraint]
    return all(any(o in reached for o in e.orientations()) for e in B.edges)


def random_graph(rng: random.Random, n: int, m: int, root: str = "r") -> BidirectedGraph:
    names = vertex_names(n)
    edges = []
    for i in range(m):
        u, v = rng.sample(names, 2)
        edges.append((f"e{i + 1}", u, v, rng.choice(SIGNS), rng.choice(SIGNS)))
    return build_graph(names, edges, root)


def random_instance(params: GeneratorParams, stats: GenerationStats | None = None) -> BidirectedGraph:
    """Seeded random rooted graph, rejection-sampled to ``params.constraint``."""
    if params.n == 1 and params.m > 0:
        raise ConstraintUnsatisfiable("a single vertex carries no loopless edge", n=1, m=params.m)
    rng = random.Random(f"{params.seed}:{params.n}:{params.m}:{params.constraint}")
    stats = stats if stats is not None else GenerationStats()
    for _ in range(params.max_tries):
        stats.attempts += 1
        B = random_graph(rng, params.n, params.m)
        if satisfies(B, params.constraint):
            return B
        stats.rejected += 1
    raise ConstraintUnsatisfiable(
        f"no {params.constraint} instance after {params.max_tries} tries",
        seed=params.seed,
        n=params.n,
        m=params.m,
    )


def restrict_bf(B: BidirectedGraph, mode: str) -> BidirectedGraph:
    """Keep only the edges reachable in ``mode`` (brute-force version)."""
    t = reach_table(B)
    reached = {"trail": t.trail, "path": t.path, "almost-path": t.almost_path}[mode]
    keep = [e.id for e in B.edges if any(o in reached for o in e.orientations())]
    return B.edge_subgraph(keep)
