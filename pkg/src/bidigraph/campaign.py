"""Seeded comparison of the polynomial routines against the brute-force oracle.

Each section draws its own deterministic stream of random instances, runs the
fast routine and its exhaustive counterpart, and records every disagreement.
The report holds no timings, so two runs with the same configuration produce
byte-identical JSON.
"""

from __future__ import annotations

import json
import os
import random
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterator, Sequence

from . import oracle
from .connectivity import (
    delta,
    epsilon,
    in_vertices,
    kappa,
    kappa_signed,
    lambda_path,
    lambda_signed,
    lambda_trail,
    require_no_xx_path,
    set_epsilon,
    set_menger,
)
from .core import MINUS, PLUS, SIGNS, BidirectedGraph, Trail, dipath, trivial_trail, validate_trail
from .decomposition import (
    auxiliary_graph,
    certify_component,
    lift_path,
    lift_trail,
    project_trail,
    trail_skeleton,
    trail_solid_by_rule,
    verify_correspondence,
    vertex_skeleton,
)
from .errors import BidiError, ConstraintUnsatisfiable, NotClean, NotEdgeClean, XXPathExists
from .fixtures import corpus
from .flame import edge_flame, verify_flame, vertex_flame
from .linkage import edge_pym, set_pym, vertex_pym
from .matching import (
    UGraph,
    contracted_name,
    from_matched_graph,
    is_perfect,
    max_matching,
    node_key,
    to_matched_graph,
    ugraph,
)
from .reachability import (
    almost_path_reachable,
    is_clean,
    is_edge_clean,
    path_exists,
    path_reachable,
    plain_vertices,
    restrict,
    trail_reachable,
)

SEED_ENV = "BIDI_SEED"
SECTIONS = ("reachability", "edge_menger", "vertex_menger", "decomposition", "flames", "linkage", "matching")
CRITERION = {name: i + 1 for i, name in enumerate(SECTIONS)}
# the smallest instance counts each section must reach
REQUIRED = {
    "reachability": 500,
    "edge_menger": 200,
    "vertex_menger": 200,
    "decomposition": 200,
    "flames": 200,
    "linkage": 1,
    "matching": 500,
}
MAX_LISTED = 20


@dataclass(frozen=True)
class CampaignConfig:
    seed: int = 0
    seeds: int = 500
    max_n: int = 7
    max_m: int = 12
    oracle_max_n: int = 6
    matching_max_nodes: int = 10

    @classmethod
    def from_env(cls, **overrides) -> "CampaignConfig":
        if SEED_ENV in os.environ and "seed" not in overrides:
            overrides["seed"] = int(os.environ[SEED_ENV])
        return cls(**overrides)


@dataclass
class Section:
    name: str
    instances: int = 0
    checks: int = 0
    skipped: int = 0
    counters: dict = field(default_factory=dict)
    discrepancies: list = field(default_factory=list)

    def expect(self, ok: bool, what: str) -> None:
        self.checks += 1
        if not ok:
            self.discrepancies.append(what)

    def count(self, key: str, by: int = 1) -> None:
        self.counters[key] = self.counters.get(key, 0) + by

    @property
    def enough(self) -> bool:
        return self.instances >= REQUIRED[self.name]

    @property
    def ok(self) -> bool:
        return not self.discrepancies and self.enough

    def to_json(self) -> dict:
        return {
            "criterion": CRITERION[self.name],
            "instances": self.instances,
            "required_instances": REQUIRED[self.name],
            "checks": self.checks,
            "skipped": self.skipped,
            "counters": dict(sorted(self.counters.items())),
            "discrepancies": len(self.discrepancies),
            "examples": self.discrepancies[:MAX_LISTED],
            "enough_instances": self.enough,
            "ok": self.ok,
        }


@dataclass
class CampaignReport:
    config: CampaignConfig
    sections: dict[str, Section]

    @property
    def discrepancies(self) -> int:
        return sum(len(s.discrepancies) for s in self.sections.values())

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.sections.values())

    def to_json(self) -> dict:
        return {
            "config": asdict(self.config),
            "sections": {k: v.to_json() for k, v in self.sections.items()},
            "discrepancies": self.discrepancies,
            "ok": self.ok,
        }

    def render(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def summary_lines(self) -> list[str]:
        lines = []
        for name, s in self.sections.items():
            flag = "FAIL" if s.discrepancies else ("PASS" if s.enough else "SHORT")
            lines.append(
                f"[{flag}] {CRITERION[name]} {name}: {s.instances} instances, {s.checks} checks, "
                f"{len(s.discrepancies)} discrepancies"
            )
        lines.append(f"total discrepancies: {self.discrepancies}")
        return lines


# ---------------------------------------------------------------------------
# instance streams


def _rng(config: CampaignConfig, section: str, i: int) -> random.Random:
    return random.Random(f"{config.seed}:{section}:{i}")


def _instances(
    config: CampaignConfig, section: str, constraint: str | None, max_n: int | None = None
) -> Iterator[tuple[int, BidirectedGraph]]:
    """One instance per seed; constraints that cannot be met for a draw are skipped."""
    top = config.max_n if max_n is None else min(max_n, config.max_n)
    for i in range(config.seeds):
        rng = _rng(config, section, i)
        n = rng.randint(3, top)
        m = rng.randint(n - 1, min(config.max_m, 2 * n))
        try:
            B = oracle.random_instance(oracle.GeneratorParams(rng.randrange(1 << 30), n, m, constraint))
        except ConstraintUnsatisfiable:
            continue
        yield i, B


def _tag(i: int, B: BidirectedGraph) -> str:
    return f"#{i} n={len(B.vertices)} m={len(B.edges)}"


def _valid(B: BidirectedGraph, T: Trail) -> bool:
    try:
        validate_trail(B, T.sequence())
    except BidiError:
        return False
    return True


# ---------------------------------------------------------------------------
# 1: reachability


def run_reachability(config: CampaignConfig) -> Section:
    sec = Section("reachability")
    for i, B in _instances(config, "reachability", None):
        sec.instances += 1
        t = oracle.reach_table(B)
        tag = _tag(i, B)
        for o in B.oriented_edges():
            for name, fast, truth, kind in (
                ("trail", trail_reachable, t.trail, "r-trail"),
                ("path", path_reachable, t.path, "path"),
                ("almost-path", almost_path_reachable, t.almost_path, "almost-path"),
            ):
                hit = fast(B, o)
                sec.expect(bool(hit) == (o in truth), f"{tag} {name} reachability of {o}")
                if hit:
                    T = hit.witness
                    good = _valid(B, T) and T.start == B.root and T.edges[-1] == o
                    good = good and _has_shape(T, kind)
                    sec.expect(good, f"{tag} {name} witness for {o}")
        for x in B.vertices:
            for a in SIGNS:
                ends = {
                    (T.end, T.end_sign) for T in oracle.walks(B, "path", x, a) if T.edges
                }
                for y in B.vertices:
                    if y == x:
                        continue
                    for b in SIGNS:
                        hit = path_exists(B, x, a, y, b)
                        sec.expect(bool(hit) == ((y, b) in ends), f"{tag} path ({x},{a})->({y},{b})")
                        sec.count("signed pairs")
    return sec


def _has_shape(T: Trail, kind: str) -> bool:
    if kind == "path":
        return T.is_path
    if kind == "almost-path":
        return T.is_almost_path
    return True


# ---------------------------------------------------------------------------
# 2: edge Menger


def _edge_menger_checks(
    sec: Section, B: BidirectedGraph, tag: str, max_edges: int | None = None, max_vertices: int | None = None
) -> None:
    for x in B.vertices:
        if x == B.root:
            continue
        for kind, fn in (("trail", lambda_trail), ("path", lambda_path)):
            res = fn(B, x)
            best, _ = oracle.bf_lambda(B, x, kind, max_edges=max_edges)
            cut, _ = oracle.bf_min_cut(B, x, kind, max_edges=max_edges, max_vertices=max_vertices)
            sec.expect(res.value == best == cut, f"{tag} lambda_{kind}({x}): {res.value} vs family {best}, cut {cut}")
            sec.expect(len(res.family) == res.value, f"{tag} lambda_{kind}({x}) family size")
            sec.expect(_disjoint_walks(B, res.family, x, kind), f"{tag} lambda_{kind}({x}) family invalid")
            side = res.cut.side
            sec.expect(
                x in side and B.root not in side and len(delta(B, side, kind)) == res.value,
                f"{tag} lambda_{kind}({x}) cut size",
            )
            for s in SIGNS:
                exact = oracle.bf_lambda(B, x, kind, s, max_edges=max_edges)[0]
                sec.expect(lambda_signed(B, x, s, kind) == exact, f"{tag} signed lambda_{kind}({x},{s})")
            sec.count(f"lambda_{kind}")


def _disjoint_walks(B: BidirectedGraph, family: Sequence[Trail], x: str, kind: str) -> bool:
    used: set[str] = set()
    for T in family:
        if not _valid(B, T) or T.start != B.root or T.end != x or not T.edges:
            return False
        if kind == "path" and not T.is_path:
            return False
        if used & set(T.edge_ids):
            return False
        used |= set(T.edge_ids)
    return True


def run_edge_menger(config: CampaignConfig) -> Section:
    sec = Section("edge_menger")
    for i, B in _instances(config, "edge_menger", "edge-clean"):
        sec.instances += 1
        _edge_menger_checks(sec, B, _tag(i, B))
    for f in corpus().fixtures:
        B = f.graph
        if is_edge_clean(B):
            size = max(len(B.vertices), len(B.edges))
            _edge_menger_checks(sec, B, f.name, max_edges=size, max_vertices=size)
            sec.count("fixtures checked")
        else:
            x = next(v for v in B.vertices if v != B.root)
            sec.expect(_raises(lambda: lambda_path(B, x), NotEdgeClean), f"{f.name} not refused")
            sec.count("fixtures refused")
    return sec


def _raises(fn: Callable, exc: type) -> bool:
    try:
        fn()
    except exc:
        return True
    return False


# ---------------------------------------------------------------------------
# 3: vertex Menger


def run_vertex_menger(config: CampaignConfig) -> Section:
    sec = Section("vertex_menger")
    for i, B in _instances(config, "vertex_menger", "clean"):
        tag = _tag(i, B)
        targets = [x for x in B.vertices if x != B.root and not _touches_root(B, x)]
        if not targets:
            sec.skipped += 1
            continue
        sec.instances += 1
        for x in targets:
            res = kappa(B, x, require_cut=True)
            best, _ = oracle.bf_kappa(B, x)
            cut, _ = oracle.bf_min_cut(B, x, "vertex")
            sec.expect(res.value == best == cut, f"{tag} kappa({x}): {res.value} vs family {best}, cut {cut}")
            side = res.cut.side
            need = {x} | oracle.bf_in_vertices(B, x)
            sec.expect(need <= side and B.root not in side, f"{tag} kappa({x}) cut misses in-vertices")
            sec.expect(len(epsilon(B, side)) == res.value, f"{tag} kappa({x}) cut size")
            sec.expect(set(in_vertices(B, x)) == oracle.bf_in_vertices(B, x), f"{tag} in-vertices of {x}")
            for s in SIGNS:
                sec.expect(kappa_signed(B, x, s) == oracle.bf_kappa(B, x, s)[0], f"{tag} kappa({x},{s})")
            sec.count("targets")
    return sec


def _touches_root(B: BidirectedGraph, x: str) -> bool:
    return any(e.other(x) == B.root for e in B.incident(x))


# ---------------------------------------------------------------------------
# 4: decomposition


def _skeleton_trails(D, kind: str) -> set[tuple[str, ...]]:
    out: set[tuple[str, ...]] = set()

    def grow(v, used, seen):
        out.add(tuple(used))
        for a in D.out_arcs(v):
            if a.id in used or (kind == "path" and a.head in seen):
                continue
            grow(a.head, used + [a.id], seen | {a.head})

    grow(D.root, [], {D.root})
    return out


def run_decomposition(config: CampaignConfig) -> Section:
    sec = Section("decomposition")
    for i, B0 in _instances(config, "decomposition", None):
        sec.instances += 1
        tag = _tag(i, B0)
        B = restrict(B0, "trail")
        TD = trail_skeleton(B)
        for C in TD.components:
            cert = certify_component(TD, C)
            sec.expect(cert.ok, f"{tag} component {C.index}: {list(cert.problems)[:2]}")
        solid = oracle.bf_solid_vertices(B, "trail")
        sec.expect(trail_solid_by_rule(TD) == solid == set(TD.skeleton.vertices), f"{tag} trail-solid set")
        arcs = sorted((a.id, a.tail, a.head) for a in TD.skeleton.arcs)
        sec.expect(arcs == oracle.bf_skeleton_arcs(B, "trail"), f"{tag} trail-skeleton arcs")
        projected = {project_trail(TD, T).arcs for T in oracle.walks(B, "r-trail")}
        sec.expect(projected == _skeleton_trails(TD.skeleton, "trail"), f"{tag} projection onto skeleton trails")
        for S in sorted(_skeleton_trails(TD.skeleton, "trail")):
            T = lift_trail(TD, dipath(TD.skeleton, B.root, S))
            sec.expect(_valid(B, T) and project_trail(TD, T).arcs == S, f"{tag} lift of {S}")
            sec.count("trail lifts")
        if oracle.satisfies(B0, "reachable"):
            _vertex_decomposition_checks(sec, B0, tag)
    return sec


def _vertex_decomposition_checks(sec: Section, B: BidirectedGraph, tag: str) -> None:
    VD = vertex_skeleton(B)
    plain = oracle.bf_plain_vertices(B)
    sec.expect(set(plain_vertices(B)) == plain, f"{tag} plain set")
    sec.expect(
        set(VD.skeleton.vertices) == oracle.bf_solid_vertices(B, "almost-path") == plain | {B.root},
        f"{tag} skeleton vertex set",
    )
    corr = verify_correspondence(B)
    sec.expect(corr.ok, f"{tag} correspondence: {list(corr.differences)[:2]}")
    sec.count("correspondences")
    AG = auxiliary_graph(B)
    limit = len(AG.graph.edges)
    proper = sum(
        1
        for T in oracle.walks(AG.graph, "path", B.root, max_edges=limit)
        if T.edges and not AG.is_aux(T.edge_ids[-1])
    )
    ordinary = sum(1 for T in oracle.walks(B, "path", B.root) if T.edges)
    sec.expect(proper == ordinary, f"{tag} proper paths of a(B): {proper} vs {ordinary}")
    if oracle.satisfies(B, "path-reachable"):
        for S in sorted(_skeleton_trails(VD.skeleton, "path")):
            T = lift_path(VD, dipath(VD.skeleton, B.root, S))
            sec.expect(_valid(B, T) and T.is_path, f"{tag} path lift of {S}")
            sec.count("path lifts")


# ---------------------------------------------------------------------------
# 5: flames


def run_flames(config: CampaignConfig) -> Section:
    sec = Section("flames")
    edge_runs = vertex_runs = 0
    for i, B in _instances(config, "flames", "edge-clean"):
        tag = _tag(i, B)
        check_oracle = len(B.vertices) <= config.oracle_max_n
        F = edge_flame(B)
        sec.expect(verify_flame(B, F.graph, "edge", oracle=check_oracle).ok, f"{tag} edge flame")
        edge_runs += 1
        if is_clean(B):
            F = vertex_flame(B)
            sec.expect(verify_flame(B, F.graph, "vertex", oracle=check_oracle).ok, f"{tag} vertex flame")
            vertex_runs += 1
    for i, B in _instances(config, "flames-clean", "clean"):
        if vertex_runs >= config.seeds:
            break
        F = vertex_flame(B)
        check_oracle = len(B.vertices) <= config.oracle_max_n
        sec.expect(verify_flame(B, F.graph, "vertex", oracle=check_oracle).ok, f"clean {_tag(i, B)} vertex flame")
        vertex_runs += 1
    sec.count("edge flames", edge_runs)
    sec.count("vertex flames", vertex_runs)
    # both flame kinds must reach the quota on their own
    sec.instances = min(edge_runs, vertex_runs)
    C = corpus()
    for name in ("Fig2a", "Fig3"):
        fx = C[name]
        sec.expect(all(o.ok for o in fx.check()), f"{name} caption facts")
    fig2 = C["Fig2a"].graph
    F = edge_flame(fig2)
    sec.expect(F.edge_count == 5 and F.budget == 5, f"Fig2a flame keeps {F.edge_count} of 5 edges")
    sec.expect(_raises(lambda: edge_flame(C["Fig3"].graph), NotEdgeClean), "Fig3 not refused")
    return sec


# ---------------------------------------------------------------------------
# 6: linkage


def _greedy_family(paths: list[Trail], rng: random.Random, vertex: bool) -> list[Trail]:
    paths = list(paths)
    rng.shuffle(paths)
    fam, used, inner = [], set(), set()
    for T in paths:
        if set(T.edge_ids) & used or (vertex and set(T.vertices[1:-1]) & inner):
            continue
        fam.append(T)
        used |= set(T.edge_ids)
        inner |= set(T.vertices[1:-1])
        if rng.random() < 0.3:
            break
    return fam


def _linkage_ok(B: BidirectedGraph, R: Sequence[Trail], x: str, P, Q, vertex: bool) -> bool:
    if not oracle.covers(R, [T.edge_ids[0] for T in P], [T.edge_ids[-1] for T in Q]):
        return False
    used, inner = set(), set()
    for T in R:
        if not _valid(B, T) or not T.is_path or T.start != B.root or T.end != x or not T.edges:
            return False
        if set(T.edge_ids) & used or (vertex and set(T.vertices[1:-1]) & inner):
            return False
        used |= set(T.edge_ids)
        inner |= set(T.vertices[1:-1])
    return True


def _xy_paths(B: BidirectedGraph, X: list[str], Y: list[str]) -> list[Trail]:
    out = [trivial_trail(B, x) for x in X if x in Y]
    for x in X:
        for T in oracle.walks(B, "path", x):
            if (
                T.edges
                and T.end in Y
                and not any(v in X for v in T.vertices[1:])
                and not any(v in Y for v in T.vertices[:-1])
            ):
                out.append(T)
    return out


def _vertex_disjoint(paths: list[Trail], rng: random.Random) -> list[Trail]:
    paths = list(paths)
    rng.shuffle(paths)
    fam, seen = [], set()
    for T in paths:
        if set(T.vertices) & seen:
            continue
        fam.append(T)
        seen |= set(T.vertices)
    return fam


def _admissible_sets(B: BidirectedGraph, rng: random.Random, tries: int = 12):
    """Random X, Y with no path between two vertices of X, or (None, None)."""
    V = list(B.vertices)
    for _ in range(tries):
        X = rng.sample(V, rng.randint(1, 3))
        try:
            require_no_xx_path(B, X)
        except XXPathExists:
            continue
        return X, rng.sample(V, rng.randint(1, 3))
    return None, None


def run_linkage(config: CampaignConfig) -> Section:
    sec = Section("linkage")
    for i, B in _instances(config, "linkage", "edge-clean"):
        rng = _rng(config, "linkage-families", i)
        tag = _tag(i, B)
        paths = [T for T in oracle.walks(B, "path", B.root) if T.edges]
        any_run = False
        for x in B.vertices:
            to_x = [T for T in paths if T.end == x]
            if x == B.root or not to_x:
                continue
            P, Q = _greedy_family(to_x, rng, False), _greedy_family(to_x, rng, False)
            R = edge_pym(B, x, P, Q)
            sec.expect(_linkage_ok(B, R, x, P, Q, False), f"{tag} edge linkage at {x}")
            sec.count("edge linkages")
            any_run = True
            if is_clean(B):
                P, Q = _greedy_family(to_x, rng, True), _greedy_family(to_x, rng, True)
                R = vertex_pym(B, x, P, Q)
                sec.expect(_linkage_ok(B, R, x, P, Q, True), f"{tag} vertex linkage at {x}")
                sec.count("vertex linkages")
        sec.instances += int(any_run)
    for i, B in _instances(config, "set-linkage", None):
        rng = _rng(config, "set-linkage-families", i)
        X, Y = _admissible_sets(B, rng)
        if X is None:
            sec.skipped += 1
            continue
        sec.instances += 1
        cands = _xy_paths(B, X, Y)
        P, Q = _vertex_disjoint(cands, rng), _vertex_disjoint(cands, rng)
        R = set_pym(B, X, Y, P, Q)
        good = {T.start for T in P} <= {T.start for T in R} and {T.end for T in Q} <= {T.end for T in R}
        seen: set[str] = set()
        for T in R:
            good = good and _valid(B, T) and T.start in X and T.end in Y and not set(T.vertices) & seen
            seen |= set(T.vertices)
        sec.expect(good, f"{_tag(i, B)} set linkage X={X} Y={Y}")
        res = set_menger(B, X, Y)
        best = max(len(_vertex_disjoint(cands, random.Random(k))) for k in range(8))
        sec.expect(res.value >= best and len(res.family) == res.value, f"{_tag(i, B)} set Menger value")
        sec.expect(len(set_epsilon(B, X, res.cut.side)) == res.value, f"{_tag(i, B)} set Menger cut")
        sec.count("set linkages")
    fig4 = corpus()["Fig4"]
    sec.expect(all(o.ok for o in fig4.check()), "Fig4 caption facts")
    B = fig4.graph
    P = [T for T in oracle.walks(B, "path", "r") if T.edges and T.end == "x" and T.edge_ids[0] == "e"]
    Q = [T for T in oracle.walks(B, "path", "r") if T.edges and T.end == "x" and T.edge_ids[-1] == "f"]
    sec.expect(_raises(lambda: edge_pym(B, "x", P[:1], Q[:1]), NotEdgeClean), "Fig4 not refused")
    sec.expect(_raises(lambda: vertex_pym(B, "x", P[:1], Q[:1]), NotClean), "Fig4 not refused by vertex linkage")
    return sec


# ---------------------------------------------------------------------------
# 7: matching


def _random_ugraph(rng: random.Random, max_nodes: int) -> UGraph:
    n = rng.randint(1, max_nodes)
    nodes = [f"n{k}" for k in range(n)]
    p = rng.uniform(0.15, 0.7)
    pairs = [(a, b) for k, a in enumerate(nodes) for b in nodes[k + 1:] if rng.random() < p]
    return ugraph(nodes, pairs)


def _with_perfect_matching(rng: random.Random, max_nodes: int) -> tuple[UGraph, frozenset[str]]:
    k = rng.randint(1, max_nodes // 2)
    nodes = [f"n{j}" for j in range(2 * k)]
    order = list(nodes)
    rng.shuffle(order)
    match = {frozenset(order[2 * j: 2 * j + 2]) for j in range(k)}
    pairs, matching = [], set()
    for j, a in enumerate(nodes):
        for b in nodes[j + 1:]:
            if frozenset((a, b)) in match:
                pairs.append((f"m{a}{b}", a, b))
                matching.add(f"m{a}{b}")
            elif rng.random() < 0.4:
                pairs.append((f"e{a}{b}", a, b))
    return ugraph(nodes, pairs), frozenset(matching)


def _edge_key(e) -> tuple:
    return (e.id, frozenset({(e.u, e.su), (e.v, e.sv)}))


def bidirected_round_trip(B: BidirectedGraph) -> bool:
    """B -> matched graph -> B keeps vertices and every signed edge (the identity is an isomorphism)."""
    back = from_matched_graph(to_matched_graph(B))
    return set(back.vertices) == set(B.vertices) and sorted(map(_edge_key, back.edges), key=repr) == sorted(
        map(_edge_key, B.edges), key=repr
    )


def matched_round_trip(G: UGraph, M: frozenset[str]) -> bool:
    """(G, M) -> bidirected -> matched graph is isomorphic to (G, M).

    The candidate map sends the two ends of each matching edge to the two signed
    copies of the contracted vertex; it is then checked to be a bijection that
    preserves adjacency and the matching.
    """
    B = from_matched_graph(G, M)
    H = to_matched_graph(B)
    phi = {}
    for eid in M:
        e = G.edge(eid)
        lo, hi = sorted((e.a, e.b), key=node_key)
        name = contracted_name(lo, hi)
        phi[lo], phi[hi] = (name, MINUS), (name, PLUS)
    if len(set(phi.values())) != len(G.nodes) or set(phi.values()) != set(H.graph.nodes):
        return False
    for e in G.edges:
        image = H.graph.between(phi[e.a], phi[e.b])
        if image is None or (e.id in M) != (image.id in H.matching):
            return False
    return len(G.edges) == len(H.graph.edges) and is_perfect(H.graph, H.matching)


def run_matching(config: CampaignConfig) -> Section:
    sec = Section("matching")
    for i in range(max(config.seeds, REQUIRED["matching"])):
        rng = _rng(config, "matching", i)
        G = _random_ugraph(rng, config.matching_max_nodes)
        M = max_matching(G)
        sec.expect(len(M) == oracle.bf_max_matching(G), f"#{i} matching size on {len(G.nodes)} nodes")
        sec.instances += 1
        H, N = _with_perfect_matching(rng, config.matching_max_nodes)
        sec.expect(matched_round_trip(H, N), f"#{i} matched round trip")
        sec.count("matched round trips")
    for f in corpus().fixtures:
        sec.expect(bidirected_round_trip(f.graph), f"{f.name} round trip")
        MG = to_matched_graph(f.graph)
        sec.expect(matched_round_trip(MG.graph, MG.matching), f"{f.name} matched round trip")
        sec.count("fixture round trips")
    for i, B in _instances(config, "matching-bidirected", None):
        sec.expect(bidirected_round_trip(B), f"{_tag(i, B)} round trip")
        sec.count("random round trips")
    return sec


RUNNERS: dict[str, Callable[[CampaignConfig], Section]] = {
    "reachability": run_reachability,
    "edge_menger": run_edge_menger,
    "vertex_menger": run_vertex_menger,
    "decomposition": run_decomposition,
    "flames": run_flames,
    "linkage": run_linkage,
    "matching": run_matching,
}


def run_campaign(config: CampaignConfig | None = None, sections: Sequence[str] | None = None) -> CampaignReport:
    config = CampaignConfig.from_env() if config is None else config
    names = SECTIONS if sections is None else tuple(sections)
    unknown = [s for s in names if s not in RUNNERS]
    if unknown:
        raise ValueError(f"unknown campaign sections {unknown}")
    return CampaignReport(config, {name: RUNNERS[name](config) for name in names})
