"""
Walking a bidirected graph from its root
========================================

Every edge end carries a sign, and a walk may only pass through a vertex by
arriving with one sign and leaving with the other.  This script builds a small
graph, asks which orientations the root can reach in each regime, and shows
the witness walks that back every yes.
"""

from bidigraph import MINUS, PLUS, OrientedEdge, build_graph
from bidigraph.reachability import (
    almost_path_reachable,
    classify_all,
    is_clean,
    is_edge_clean,
    path_reachable,
    plain_vertices,
    trail_reachable,
)

# f enters c with +, g and h leave c with -, and meet again at w with opposite signs
B = build_graph(
    ["r", "c", "w"],
    [
        ("f", "r", "c", MINUS, PLUS),
        ("g", "c", "w", MINUS, PLUS),
        ("h", "c", "w", MINUS, MINUS),
    ],
    root="r",
)

# the orientation w -> c of g is reachable by a trail (around the c-w cycle)
# and by an almost path, but not by a path
back = OrientedEdge("g", "w", "c")
for name, oracle in (("trail", trail_reachable), ("path", path_reachable), ("almost path", almost_path_reachable)):
    found, witness = oracle(B, back)
    print(f"{name:12s} reaches {back}: {found}  {witness or ''}")

# g and h are reachable in both directions, f only away from the root
for regime in ("trail", "almost-path"):
    print(regime, {eid: c.status for eid, c in classify_all(B, regime).items()})

# c is only ever entered with +, so it is plain; w is entered with both signs
print("plain vertices:", sorted(plain_vertices(B)))
print("edge-clean:", is_edge_clean(B), " clean:", is_clean(B))
