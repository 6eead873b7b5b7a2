"""Vertex- and edge-stabilizers with exact certificates.

The vertex stabilizer removes, from every remaining support cycle of a
cycle-minimal optimal solution, the vertex with the smallest cover value;
that is optimal in cardinality and keeps at least two thirds of the maximum
matching weight. The edge stabilizer deletes the stars of those vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cycles import ReduceCyclesResult, reduce_cycles
from .errors import BudgetExceeded
from .graph import ZERO, Matching, WeightedGraph, alternate_round
from .oracle import DEFAULT_BUDGET, OracleBudget, exact_nu


@dataclass(frozen=True)
class VertexStabilizerResult:
    """Minimum vertex-stabilizer with its survival certificate.

    `surviving_matching` is a maximum-weight matching of the stabilized graph
    and `surviving_cover` a fractional cover of it with the same total, so
    stability of the residual graph can be re-checked by pure arithmetic.
    """

    removed: tuple[int, ...]
    gamma: int
    # exact nu(G) from the enumeration oracle; None beyond its budget, where
    # the 2/3 guarantee still holds but cannot be reported numerically
    nu_before: Optional[Fraction]
    nu_after: Fraction
    surviving_matching: Matching
    surviving_cover: dict[int, Fraction]
    reduction: ReduceCyclesResult


def min_vertex_stabilizer(
    graph: WeightedGraph, budget: OracleBudget = DEFAULT_BUDGET
) -> VertexStabilizerResult:
    """Remove the least-covered vertex of each cycle of a gamma-cycle optimum.

    |S| equals gamma(G), which is a lower bound for any vertex-stabilizer, and
    nu(G - S) >= (2/3) nu(G). Ties on the cover value break to the lowest
    vertex index. nu_before is evaluated by the enumeration oracle, which
    stands in for an exact weighted matching solver at desk scale.
    """
    reduction = reduce_cycles(graph)
    bfm, cover = reduction.solution, reduction.cover
    removed: list[int] = []
    rounded = bfm
    for cycle in bfm.odd_cycles:
        pick = min(cycle, key=lambda v: (cover.values[v], v))
        removed.append(pick)
        rounded = alternate_round(rounded, cycle, pick)
    assert not rounded.odd_cycles
    survivors = rounded.matched
    assert not (survivors.vertices & set(removed))
    surviving_cover = {
        v: cover.values[v] for v in range(graph.n) if v not in removed
    }
    nu_after = survivors.weight(graph)
    assert nu_after == sum(surviving_cover.values(), start=ZERO)
    try:
        nu_before, _witness = exact_nu(graph, budget)
    except BudgetExceeded:
        nu_before = None
    return VertexStabilizerResult(
        removed=tuple(sorted(removed)),
        gamma=reduction.gamma,
        nu_before=nu_before,
        nu_after=nu_after,
        surviving_matching=survivors,
        surviving_cover=surviving_cover,
        reduction=reduction,
    )


@dataclass(frozen=True)
class EdgeStabilizerResult:
    """O(Delta)-approximate edge-stabilizer derived from the vertex one.

    Deleting the removed edges isolates the chosen vertices, so the vertex
    result's certificate still certifies stability. The true optimum is
    sandwiched: ceil(gamma/2) <= OPT <= |F| <= gamma * Delta.
    """

    removed_edges: tuple[int, ...]
    gamma: int
    lower_bound: int
    upper_bound: int
    vertex_result: VertexStabilizerResult

    @property
    def ratio_bound(self) -> Optional[Fraction]:
        if self.lower_bound == 0:
            return None
        return Fraction(len(self.removed_edges), self.lower_bound)


def edge_stabilizer_approx(
    graph: WeightedGraph, budget: OracleBudget = DEFAULT_BUDGET
) -> EdgeStabilizerResult:
    """Delete every edge incident to the minimum vertex-stabilizer."""
    vertex_result = min_vertex_stabilizer(graph, budget)
    removed_edges: set[int] = set()
    for v in vertex_result.removed:
        removed_edges.update(graph.incident_edges(v))
    gamma = vertex_result.gamma
    return EdgeStabilizerResult(
        removed_edges=tuple(sorted(removed_edges)),
        gamma=gamma,
        lower_bound=-(-gamma // 2),
        upper_bound=gamma * graph.max_degree,
        vertex_result=vertex_result,
    )


@dataclass(frozen=True)
class GammaBounds:
    gamma: int
    vertex_lower_bound: int
    edge_lower_bound: int


def gamma_lower_bounds(graph: WeightedGraph) -> GammaBounds:
    """gamma(G) with the stabilizer lower bounds it implies."""
    gamma = reduce_cycles(graph).gamma
    return GammaBounds(gamma, gamma, -(-gamma // 2))
