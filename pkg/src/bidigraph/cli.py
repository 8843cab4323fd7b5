"""Command-line interface: ``bidigraph <command> ...``.

Exit codes: 0 on success, 1 on a domain error (error JSON on stderr) or a
failed verification, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import oracle
from .campaign import SECTIONS, CampaignConfig, run_campaign
from .connectivity import kappa, lambda_path, lambda_trail, set_menger, signed_table
from .core import BidirectedGraph, Sign, digraph_to_dot, dumps, from_json, parse_text, to_dot, to_json, to_text, validate_trail
from .decomposition import trail_skeleton, vertex_skeleton
from .errors import BidiError, FormatError
from .fixtures import FIXTURE_NAMES, corpus, write_corpus
from .flame import edge_flame, vertex_flame
from .linkage import edge_pym, set_pym, vertex_pym
from .matching import UGraph, from_matched_graph, node_from_json, to_matched_graph, ugraph
from .reachability import classify_all, is_clean, is_edge_clean, is_reachable_in, plain_vertices, restrict


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input and output helpers


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def load_graph(path: str) -> BidirectedGraph:
    """A graph in the text format, or the JSON format when the input starts with ``{``."""
    text = _read_text(path)
    if text.lstrip().startswith("{"):
        try:
            return from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    return parse_text(text)


def _csv(text: str | None) -> list[str]:
    return [t for t in (text or "").split(",") if t]


def _emit(args, payload: dict, lines: Sequence[str]) -> None:
    if args.json:
        sys.stdout.write(dumps(payload))
    else:
        for line in lines:
            print(line)


def _flag(b: bool) -> str:
    return "true" if b else "false"


# ---------------------------------------------------------------------------
# commands


def cmd_check(args) -> int:
    B = load_graph(args.graph)
    chosen = [k for k in ("edge_clean", "clean", "reachable") if getattr(args, k)]
    chosen = chosen or ["edge_clean", "clean", "reachable"]
    facts = {}
    if "edge_clean" in chosen:
        facts["edge-clean"] = is_edge_clean(B)
    if "clean" in chosen:
        facts["clean"] = is_clean(B)
    if "reachable" in chosen:
        for mode in ("trail", "path", "almost-path"):
            facts[f"{mode}-reachable"] = is_reachable_in(B, mode)
    payload = {"graph": args.graph, **facts}
    if args.plain:
        payload["plain"] = sorted(plain_vertices(B))
    lines = [f"{k}: {_flag(v)}" for k, v in facts.items()]
    if args.plain:
        lines.append("plain: " + " ".join(payload["plain"]))
    _emit(args, payload, lines)
    return 0


def cmd_classify(args) -> int:
    B = load_graph(args.graph)
    table = classify_all(B, args.regime)
    payload = {"regime": args.regime, "edges": [table[eid].to_json() for eid in B.edge_ids]}
    lines = []
    for eid in B.edge_ids:
        c = table[eid]
        arrow = f" {c.natural.tail}->{c.natural.head}" if c.natural is not None else ""
        lines.append(f"{eid}: {c.status}{arrow}")
    _emit(args, payload, lines)
    return 0


def cmd_skeleton(args) -> int:
    B = load_graph(args.graph)
    if args.restrict:
        B = restrict(B, "trail" if args.kind == "trail" else "almost-path")
    D = trail_skeleton(B) if args.kind == "trail" else vertex_skeleton(B)
    if args.json:
        sys.stdout.write(dumps(D.to_json()))
    else:
        sys.stdout.write(digraph_to_dot(D.skeleton, f"{args.kind}-skeleton"))
    return 0


def cmd_menger(args) -> int:
    B = load_graph(args.graph)
    if args.sources or args.sinks:
        if not (args.sources and args.sinks):
            raise UsageError("--sources and --sinks go together")
        res = set_menger(B, _csv(args.sources), _csv(args.sinks))
        kind = "set"
    elif args.signed:
        table = signed_table(B)
        rows = [
            {"vertex": v, "sign": str(s), "trail": c.trail, "path": c.path, "vertex_connectivity": c.vertex}
            for (v, s), c in sorted(table.items(), key=lambda kv: (kv[0][0], int(kv[0][1])))
        ]
        lines = [f"({r['vertex']},{r['sign']}) trail={r['trail']} path={r['path']} vertex={r['vertex_connectivity']}"
                 for r in rows]
        _emit(args, {"signed": rows}, lines)
        return 0
    else:
        if not args.target:
            raise UsageError("menger needs --target, --signed, or --sources/--sinks")
        fn = {"trail": lambda_trail, "path": lambda_path, "vertex": lambda G, x: kappa(G, x)}[args.kind]
        res = fn(B, args.target)
        kind = args.kind
    payload = {"kind": kind, **res.to_json()}
    lines = [f"{kind} connectivity: {res.value}"]
    lines += [f"  {T}" for T in res.family]
    if res.cut is not None:
        lines.append(f"cut side: {' '.join(sorted(res.cut.side))}")
        lines.append(f"boundary: {' '.join(res.cut.boundary)}")
    else:
        lines.append("cut: none (an edge joins the root and the target)")
    _emit(args, payload, lines)
    return 0


def cmd_flame(args) -> int:
    B = load_graph(args.graph)
    report = edge_flame(B) if args.kind == "edge" else vertex_flame(B)
    if args.out:
        Path(args.out).write_text(to_text(report.graph))
    lines = [
        f"{args.kind} flame: {report.edge_count} edges, budget {report.budget}, ok: {_flag(report.ok)}",
        "edges: " + " ".join(report.graph.edge_ids),
    ]
    _emit(args, report.to_json(), lines)
    return 0 if report.ok else 1


def _families(B: BidirectedGraph, path: str) -> tuple[list, list]:
    try:
        data = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise FormatError(f"families file is not JSON: {exc.msg}", line=exc.lineno) from None
    try:
        P = [validate_trail(B, seq) for seq in data.get("P", [])]
        Q = [validate_trail(B, seq) for seq in data.get("Q", [])]
    except AttributeError:
        raise FormatError("families file must be an object with lists P and Q") from None
    return P, Q


def cmd_pym(args) -> int:
    B = load_graph(args.graph)
    P, Q = _families(B, args.families)
    if args.sources or args.sinks:
        if not (args.sources and args.sinks):
            raise UsageError("--sources and --sinks go together")
        R = set_pym(B, _csv(args.sources), _csv(args.sinks), P, Q)
        kind = "set"
    else:
        if not args.target:
            raise UsageError("pym needs --target or --sources/--sinks")
        R = (vertex_pym if args.vertex else edge_pym)(B, args.target, P, Q)
        kind = "vertex" if args.vertex else "edge"
    payload = {"kind": kind, "R": [T.sequence() for T in R]}
    _emit(args, payload, [f"{kind} linkage with {len(R)} paths"] + [f"  {T}" for T in R])
    return 0


def _matched_from_json(data: dict) -> tuple[UGraph, frozenset[str]]:
    nodes = [node_from_json(n) for n in data["nodes"]]
    pairs = [(e["id"], node_from_json(e["a"]), node_from_json(e["b"])) for e in data["edges"]]
    return ugraph(nodes, pairs), frozenset(data["matching"])


def cmd_translate(args) -> int:
    text = _read_text(args.graph)
    data = json.loads(text) if text.lstrip().startswith("{") else None
    if data is not None and "matching" in data:
        G, M = _matched_from_json(data)
        B = from_matched_graph(G, M)
        if data.get("root") is not None:
            B = B.rooted(data["root"])
    elif data is not None:
        B = from_json(data)
    else:
        B = parse_text(text)
    if args.to == "matched":
        out = to_matched_graph(B).to_json()
        sys.stdout.write(dumps(out))
    elif args.to == "json":
        sys.stdout.write(dumps(to_json(B)))
    elif args.to == "dot":
        sys.stdout.write(to_dot(B))
    else:
        sys.stdout.write(to_text(B))
    return 0


def _parse_sign(text: str) -> Sign:
    try:
        return Sign.parse(text)
    except (ValueError, BidiError):
        raise UsageError(f"bad sign {text!r}") from None


def cmd_oracle(args) -> int:
    if args.action == "reconstruct":
        C = corpus()
        if args.out:
            write_corpus(args.out, C)
        bad = [f.name for f in C.fixtures if not all(o.ok for o in f.check())]
        payload = {"fixtures": C.names, "failed": bad, "transcript": list(C.transcript)}
        _emit(args, payload, list(C.transcript) + [f"fixtures: {' '.join(C.names)}"])
        return 1 if bad else 0
    if args.action == "verify":
        return _verify_directory(args)
    B = load_graph(args.graph)
    limit = args.max_edges
    payload: dict = {"graph": args.graph}
    lines = []
    if args.target:
        x = args.target
        sign = _parse_sign(args.sign) if args.sign else None
        for kind in ("trail", "path"):
            value, fam = oracle.bf_lambda(B, x, kind, sign, max_edges=limit)
            payload[f"lambda_{kind}"] = value
            lines.append(f"lambda_{kind}: {value}")
        value, _ = oracle.bf_kappa(B, x, sign, max_edges=limit)
        payload["kappa"] = value
        lines.append(f"kappa: {value}")
    else:
        t = oracle.reach_table(B, max_edges=limit)
        payload.update(
            {
                "edge_clean": not t.rr_trail,
                "clean": not t.rr_almost_path,
                "plain": sorted(oracle.bf_plain_vertices(B)),
                "classes": {
                    regime: {eid: status for eid, (status, _) in sorted(oracle.bf_classify(B, regime).items())}
                    for regime in ("trail", "almost-path")
                },
            }
        )
        lines += [f"edge-clean: {_flag(payload['edge_clean'])}", f"clean: {_flag(payload['clean'])}"]
        lines.append("plain: " + " ".join(payload["plain"]))
        for regime, table in payload["classes"].items():
            lines += [f"{regime} {eid}: {status}" for eid, status in table.items()]
    _emit(args, payload, lines)
    return 0


def _verify_directory(args) -> int:
    directory = Path(args.graph or "fixtures")
    C = corpus()
    results = {}
    for name in FIXTURE_NAMES:
        bg = directory / f"{name}.bg"
        expect = directory / f"{name}.expect.json"
        if not bg.exists() or not expect.exists():
            results[name] = "missing"
            continue
        same_graph = parse_text(bg.read_text()) == C[name].graph
        stored = json.loads(expect.read_text())
        fresh = C[name].expectation_json()
        results[name] = "ok" if same_graph and stored == fresh and fresh["ok"] else "stale"
    _emit(args, {"fixtures": results}, [f"{k}: {v}" for k, v in results.items()])
    return 0 if all(v == "ok" for v in results.values()) else 1


def cmd_campaign(args) -> int:
    overrides = {"seeds": args.seeds, "max_n": args.max_n}
    if args.seed is not None:
        overrides["seed"] = args.seed
    config = CampaignConfig.from_env(**overrides)
    sections = _csv(args.sections) or None
    if sections:
        unknown = [s for s in sections if s not in SECTIONS]
        if unknown:
            raise UsageError(f"unknown sections {unknown}; choose from {', '.join(SECTIONS)}")
    report = run_campaign(config, sections)
    text = report.render()
    if args.out:
        Path(args.out).write_text(text)
    if args.json:
        sys.stdout.write(text)
    else:
        for line in report.summary_lines():
            print(line)
    return 1 if report.discrepancies else 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="bidigraph", description="Rooted bidirected graph connectivity toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="edge-cleanness, cleanness and reachability")
    s.add_argument("graph")
    s.add_argument("--edge-clean", dest="edge_clean", action="store_true")
    s.add_argument("--clean", action="store_true")
    s.add_argument("--reachable", action="store_true")
    s.add_argument("--plain", action="store_true", help="also list the plain vertices")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("classify", parents=[common], help="reachable, directable or undirectable edges")
    s.add_argument("graph")
    s.add_argument("--regime", choices=("trail", "path", "almost-path"), default="trail")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("skeleton", parents=[common], help="trail-skeleton or vertex skeleton as DOT")
    s.add_argument("graph")
    s.add_argument("--kind", choices=("trail", "vertex"), default="trail")
    s.add_argument("--restrict", action="store_true", help="drop unreachable edges first")
    s.set_defaults(func=cmd_skeleton)

    s = sub.add_parser("menger", parents=[common], help="connectivity with a disjoint family and a cut")
    s.add_argument("graph")
    s.add_argument("--target")
    s.add_argument("--kind", choices=("trail", "path", "vertex"), default="path")
    s.add_argument("--signed", action="store_true", help="table of signed connectivities")
    s.add_argument("--sources", help="comma-separated X for the set version")
    s.add_argument("--sinks", help="comma-separated Y for the set version")
    s.set_defaults(func=cmd_menger)

    s = sub.add_parser("flame", parents=[common], help="edge or vertex flame")
    s.add_argument("graph")
    s.add_argument("--kind", choices=("edge", "vertex"), default="edge")
    s.add_argument("--out", help="write the flame in the text format")
    s.set_defaults(func=cmd_flame)

    s = sub.add_parser("pym", parents=[common], help="linkage covering given path families")
    s.add_argument("graph")
    s.add_argument("--families", required=True, help='JSON file ("-" for stdin) holding {"P": [[v, e, v, ...]], "Q": [...]}')
    s.add_argument("--target")
    s.add_argument("--vertex", action="store_true", help="internally vertex-disjoint version")
    s.add_argument("--sources")
    s.add_argument("--sinks")
    s.set_defaults(func=cmd_pym)

    s = sub.add_parser("translate", help="convert between text, JSON, DOT and matched-graph JSON")
    s.add_argument("graph")
    s.add_argument("--to", choices=("text", "json", "dot", "matched"), default="text")
    s.set_defaults(func=cmd_translate, json=False)

    s = sub.add_parser("oracle", parents=[common], help="brute-force answers and the fixture corpus")
    s.add_argument("action", choices=("query", "reconstruct", "verify"))
    s.add_argument("graph", nargs="?", help="graph for query; fixture directory for verify")
    s.add_argument("--target")
    s.add_argument("--sign")
    s.add_argument("--max-edges", dest="max_edges", type=int)
    s.add_argument("--out", help="directory to write the reconstructed corpus")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("campaign", parents=[common], help="seeded oracle comparison for every criterion")
    s.add_argument("--seeds", type=int, default=500)
    s.add_argument("--max-n", dest="max_n", type=int, default=7)
    s.add_argument("--seed", type=int, help="base seed (default from BIDI_SEED, else 0)")
    s.add_argument("--sections", help=f"comma-separated subset of {','.join(SECTIONS)}")
    s.add_argument("--out", help="also write the JSON report here")
    s.set_defaults(func=cmd_campaign)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "oracle" and args.action == "query" and not args.graph:
        parser.error("oracle query needs a graph")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"bidigraph: error: {exc}", file=sys.stderr)
        return 2
    except BidiError as exc:
        sys.stderr.write(json.dumps(exc.to_json(), sort_keys=True, default=str) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
