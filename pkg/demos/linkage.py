"""
Rerouting disjoint path families
================================

Given two families of disjoint root-to-x paths, a linkage is a third disjoint
family that starts with every first edge of the first family and ends with
every last edge of the second.  It exists on edge-clean graphs, and can fail
as soon as the root lies on a closed trail.
"""

from bidigraph import validate_trail
from bidigraph.errors import NotEdgeClean
from bidigraph.fixtures import fixture_graph
from bidigraph.linkage import edge_pym, set_pym, vertex_pym
from bidigraph.oracle import bf_pym_exists, walks

B = fixture_graph("F2")
P = [validate_trail(B, ["r", "ra", "a", "ab", "b"])]
Q = [validate_trail(B, ["r", "rb", "b"])]
print("edge linkage:", [str(T) for T in edge_pym(B, "b", P, Q)])
print("vertex linkage:", [str(T) for T in vertex_pym(B, "b", P, Q)])

F3 = fixture_graph("F3")
T = [validate_trail(F3, ["r", "f", "c", "g", "w"])]
print("set linkage from {r} to {w}:", [str(R) for R in set_pym(F3, {"r"}, {"w"}, T, T)])

# one path starts with e, another ends with f, but no disjoint family does both
G = fixture_graph("Fig4")
paths = [T for T in walks(G, "path", "r") if T.edges and T.end == "x"]
P = [next(T for T in paths if T.edge_ids[0] == "e")]
Q = [next(T for T in paths if T.edge_ids[-1] == "f")]
print("brute-force linkage:", bf_pym_exists(G, "x", ["e"], ["f"]))
try:
    edge_pym(G, "x", P, Q)
except NotEdgeClean as exc:
    print("refused:", exc)
