"""
Contracting undirectable components
===================================

Edges that the root reaches in both directions form components.  Contracting
each component onto its anchor and orienting every other edge the one way it
can be reached gives an ordinary digraph, the skeleton, on which flow
arguments work unchanged.
"""

from bidigraph.decomposition import (
    auxiliary_graph,
    lift_trail,
    project_trail,
    trail_skeleton,
    verify_correspondence,
    vertex_skeleton,
)
from bidigraph.fixtures import fixture_graph
from bidigraph.oracle import walks

B = fixture_graph("Fig1")
TD = trail_skeleton(B)

# two components, each entered through exactly one edge
for C in TD.components:
    print(f"component {sorted(C.vertices)} anchored at {C.anchor}, entered by {C.entry}")

print("skeleton vertices:", sorted(TD.skeleton.vertices))
print("skeleton arcs:", sorted((a.tail, a.head) for a in TD.skeleton.arcs))

# every root trail projects to a skeleton trail, and every skeleton trail lifts back
T = max(walks(B, "r-trail", max_edges=len(B.edges)), key=lambda t: len(t.edges))
S = project_trail(TD, T)
print("a longest root trail:", T)
print("  projects to", S.vertices)
print("  which lifts to", lift_trail(TD, S))

# the vertex version lives on the plain vertices; splitting them turns it into the trail version
VD = vertex_skeleton(fixture_graph("Fig5"))
print("vertex skeleton on", sorted(VD.skeleton.vertices))
AG = auxiliary_graph(fixture_graph("Fig5"))
print("split graph has", len(AG.graph.vertices), "vertices and", len(AG.graph.edges), "edges")
print("split skeleton matches trail skeleton of the split graph:", verify_correspondence(fixture_graph("Fig5")).ok)
