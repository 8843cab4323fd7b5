"""
Disjoint paths, cuts and flames
===============================

On edge-clean graphs the number of edge-disjoint root paths to a vertex equals
the smallest reachability-aware edge cut; on clean graphs the same holds for
internally vertex-disjoint paths and vertex cuts.  A flame keeps every signed
connectivity while using no more edges than their sum.
"""

from bidigraph.connectivity import kappa, lambda_path, lambda_trail, signed_table
from bidigraph.fixtures import fixture_graph
from bidigraph.flame import edge_flame, vertex_flame
from bidigraph.errors import NotEdgeClean
from bidigraph.oracle import bf_lambda, bf_min_cut

B = fixture_graph("F2")
for fn in (lambda_trail, lambda_path):
    res = fn(B, "b")
    print(f"{fn.__name__}(b) = {res.value}, cut X = {sorted(res.cut.side)}, boundary = {res.cut.boundary}")
    for T in res.family:
        print("   ", T)

# brute force agrees
print("brute force:", bf_lambda(B, "b", "path")[0], "disjoint paths,", bf_min_cut(B, "b", "path")[0], "cut edges")
print("vertex version:", kappa(B, "b").value)

# signed connectivities decide the flame budget; unsigned ones undercount
G = fixture_graph("Fig2a")
table = signed_table(G)
print("signed path connectivities:", {f"{v}{s}": row.path for (v, s), row in sorted(table.items())})
rep = edge_flame(G)
print(f"edge flame keeps {rep.edge_count} of {len(G.edges)} edges, budget {rep.budget}")
print("vertex flame ok:", vertex_flame(fixture_graph("F3")).ok)

# without edge-cleanness a flame may not exist at all
try:
    edge_flame(fixture_graph("Fig3"))
except NotEdgeClean as exc:
    print("refused:", exc)
