"""matchstab: stabilizing edge-weighted graphs for network bargaining games.

Exact-rational fractional matchings with LP-duality certificates, basic
optima with the fewest odd cycles, minimum vertex-stabilizers with the 2/3
matching-value guarantee, O(Delta)-approximate edge-stabilizers,
2-approximate M-vertex-stabilizers, and desk-scale brute-force oracles.
"""

from .cycles import reduce_cycles
from .graph import (
    AlternatingWalk,
    BasicFractionalMatching,
    FractionalVertexCover,
    Matching,
    WeightedGraph,
    alternate_round,
    complement,
    decompose,
    switch,
    tight_edges,
    walk_value,
)
from .lp import solve_fractional
from .mstab import m_vertex_stabilizer
from .stabilizers import (
    edge_stabilizer_approx,
    gamma_lower_bounds,
    min_vertex_stabilizer,
)
from .walks import detect_structures, optimal_walks, reconstruct_walk

__all__ = [
    "AlternatingWalk",
    "BasicFractionalMatching",
    "FractionalVertexCover",
    "Matching",
    "WeightedGraph",
    "alternate_round",
    "complement",
    "decompose",
    "detect_structures",
    "edge_stabilizer_approx",
    "gamma_lower_bounds",
    "m_vertex_stabilizer",
    "min_vertex_stabilizer",
    "optimal_walks",
    "reconstruct_walk",
    "reduce_cycles",
    "solve_fractional",
    "switch",
    "tight_edges",
    "walk_value",
]

__version__ = "0.1.0"
