"""Connectivity, flames and linkages in rooted bidirected graphs.

Submodules:

- ``core``: signed multigraphs, walks, text/JSON/DOT formats
- ``matching``: blossom matching and the matched-graph translation
- ``reachability``: trail, path and almost-path reachability
- ``decomposition``: undirectable components, skeletons, the auxiliary graph
- ``connectivity``: edge and vertex Menger with families and cuts
- ``flame``: ear decompositions and edge/vertex flames
- ``linkage``: Pym-type linkages
- ``oracle``: brute-force ground truth and random instances
- ``fixtures``: hand-made and figure-derived graphs with expectations
- ``campaign``: seeded oracle comparison report
"""

from .connectivity import (
    MengerResult,
    kappa,
    kappa_signed,
    lambda_path,
    lambda_signed,
    lambda_trail,
    set_menger,
    signed_table,
)
from .core import (
    MINUS,
    PLUS,
    SIGNS,
    BidirectedGraph,
    Digraph,
    Edge,
    OrientedEdge,
    Sign,
    Trail,
    build_digraph,
    build_graph,
    from_json,
    parse_text,
    to_json,
    to_text,
    validate_trail,
)
from .decomposition import auxiliary_graph, trail_skeleton, vertex_skeleton
from .errors import BidiError
from .flame import edge_flame, ear_decomposition, verify_flame, vertex_flame
from .linkage import edge_pym, set_pym, vertex_pym
from .reachability import (
    almost_path_reachable,
    classify_all,
    is_clean,
    is_edge_clean,
    path_exists,
    path_reachable,
    plain_vertices,
    restrict,
    trail_reachable,
)

__version__ = "0.1.0"

__all__ = [
    "MINUS",
    "PLUS",
    "SIGNS",
    "BidiError",
    "BidirectedGraph",
    "Digraph",
    "Edge",
    "MengerResult",
    "OrientedEdge",
    "Sign",
    "Trail",
    "almost_path_reachable",
    "auxiliary_graph",
    "build_digraph",
    "build_graph",
    "classify_all",
    "ear_decomposition",
    "edge_flame",
    "edge_pym",
    "from_json",
    "is_clean",
    "is_edge_clean",
    "kappa",
    "kappa_signed",
    "lambda_path",
    "lambda_signed",
    "lambda_trail",
    "parse_text",
    "path_exists",
    "path_reachable",
    "plain_vertices",
    "restrict",
    "set_menger",
    "set_pym",
    "signed_table",
    "to_json",
    "to_text",
    "trail_reachable",
    "trail_skeleton",
    "validate_trail",
    "verify_flame",
    "vertex_flame",
    "vertex_pym",
    "vertex_skeleton",
]
