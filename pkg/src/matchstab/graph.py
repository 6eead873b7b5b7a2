"""Exact-rational weighted graphs and the primitive fractional-matching moves.

Everything in this module is immutable and exact: weights, matching values and
cover values are `fractions.Fraction`, and every test (tightness, degree
constraints, duality) is an equality test, never a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

from .errors import (
    CycleNotInSupport,
    DegreeConstraintViolated,
    GraphError,
    HalfValueOnPath,
    InfeasibleCover,
    NotAComponent,
    NotAlternating,
    NotBasic,
    NotHalfIntegral,
    VertexNotOnCycle,
)

WeightLike = Union[int, str, Fraction]

ZERO = Fraction(0)
HALF = Fraction(1, 2)
ONE = Fraction(1)


def as_fraction(value: WeightLike) -> Fraction:
    """Coerce an int/str/Fraction into an exact Fraction.

    Floats are rejected on purpose: weights must stay exact.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise GraphError(f"weights must be exact (int, str or Fraction), got {value!r}")
    return Fraction(value)


@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected graph with exact nonnegative edge weights.

    Vertices are dense indices 0..n-1; optional string labels exist only for
    the I/O boundary. Edges are stored as (u, v, w) with u < v, and the edge
    index (position in `edges`) is the canonical identity used everywhere.
    """

    n: int
    edges: tuple[tuple[int, int, Fraction], ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("vertex count must be nonnegative")
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError("label list length must equal vertex count")
        seen: set[tuple[int, int]] = set()
        for u, v, w in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u},{v}) out of range")
            if u == v:
                raise GraphError(f"loop at vertex {u} not allowed")
            if u > v:
                raise GraphError(f"edge ({u},{v}) must be stored with u < v")
            if (u, v) in seen:
                raise GraphError(f"parallel edge ({u},{v})")
            if not isinstance(w, Fraction):
                raise GraphError(f"edge ({u},{v}) weight must be a Fraction")
            if w < 0:
                raise GraphError(f"edge ({u},{v}) has negative weight {w}")
            seen.add((u, v))

    @staticmethod
    def from_edges(
        n: int,
        edges: Iterable[tuple[int, int, WeightLike]],
        labels: Optional[Sequence[str]] = None,
    ) -> "WeightedGraph":
        """Build a graph, normalizing edge orientation and coercing weights."""
        normalized = tuple(
            (min(u, v), max(u, v), as_fraction(w)) for u, v, w in edges
        )
        return WeightedGraph(n, normalized, tuple(labels) if labels is not None else None)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per-vertex incidence lists of (neighbor, edge_index), sorted."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for idx, (u, v, _w) in enumerate(self.edges):
            adj[u].append((v, idx))
            adj[v].append((u, idx))
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def _index_of(self) -> dict[tuple[int, int], int]:
        return {(u, v): i for i, (u, v, _w) in enumerate(self.edges)}

    def edge_index(self, u: int, v: int) -> int:
        """Index of edge {u, v}; raises KeyError if absent."""
        return self._index_of[(min(u, v), max(u, v))]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._index_of

    def weight(self, u: int, v: int) -> Fraction:
        return self.edges[self.edge_index(u, v)][2]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.n)), default=0)

    def label_of(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def incident_edges(self, v: int) -> tuple[int, ...]:
        return tuple(idx for _nbr, idx in self.adjacency[v])

    def delete_edges(self, edge_indices: Iterable[int]) -> "WeightedGraph":
        """Graph on the same vertex set with the given edges removed.

        Edge indices of the result differ from the original's.
        """
        drop = set(edge_indices)
        kept = tuple(e for i, e in enumerate(self.edges) if i not in drop)
        return WeightedGraph(self.n, kept, self.labels)

    def delete_vertices(
        self, vertices: Iterable[int]
    ) -> tuple["WeightedGraph", tuple[int, ...]]:
        """Induced subgraph on the complement, plus the old id of each new vertex.

        Surviving vertices keep their relative order, so index-based
        tie-breaking is stable across deletions.
        """
        gone = set(vertices)
        keep = [v for v in range(self.n) if v not in gone]
        new_id = {old: new for new, old in enumerate(keep)}
        edges = tuple(
            (new_id[u], new_id[v], w)
            for u, v, w in self.edges
            if u not in gone and v not in gone
        )
        labels = tuple(self.label_of(v) for v in keep) if self.labels is not None else None
        return WeightedGraph(len(keep), edges, labels), tuple(keep)


@dataclass(frozen=True)
class Matching:
    """A set of pairwise vertex-disjoint edges, stored as sorted vertex pairs."""

    pairs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for u, v in self.pairs:
            if u >= v:
                raise GraphError("matching pairs must be stored sorted (u < v)")
            if u in seen or v in seen:
                raise GraphError("edges of a matching may not share a vertex")
            seen.add(u)
            seen.add(v)

    @staticmethod
    def from_pairs(pairs: Iterable[tuple[int, int]]) -> "Matching":
        return Matching(frozenset((min(u, v), max(u, v)) for u, v in pairs))

    @staticmethod
    def empty() -> "Matching":
        return Matching(frozenset())

    @cached_property
    def _partner(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for u, v in self.pairs:
            out[u] = v
            out[v] = u
        return out

    def covers(self, v: int) -> bool:
        return v in self._partner

    def partner(self, v: int) -> Optional[int]:
        return self._partner.get(v)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self._partner)

    def __len__(self) -> int:
        return len(self.pairs)

    def contains_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.pairs

    def is_matching_in(self, graph: WeightedGraph) -> bool:
        return all(graph.has_edge(u, v) for u, v in self.pairs)

    def weight(self, graph: WeightedGraph) -> Fraction:
        return sum((graph.weight(u, v) for u, v in self.pairs), start=ZERO)

    def sorted_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.pairs))


def canonical_cycle(vertices: Sequence[int]) -> tuple[int, ...]:
    """Canonical form of a cycle given in cyclic vertex order.

    Rotated to start at the minimum vertex and oriented toward its smaller
    cyclic neighbor, so equal cycles compare equal.
    """
    k = len(vertices)
    start = min(range(k), key=lambda i: vertices[i])
    forward = tuple(vertices[(start + i) % k] for i in range(k))
    backward = tuple(vertices[(start - i) % k] for i in range(k))
    return forward if forward[1] <= backward[1] else backward


@dataclass(frozen=True)
class BasicFractionalMatching:
    """A half-integral vector split into matched edges and odd half-cycles.

    Built through :func:`decompose`, which is the only validated constructor.
    `values[i]` is the x-value of edge i of `graph`.
    """

    graph: WeightedGraph
    values: tuple[Fraction, ...]
    matched: Matching
    odd_cycles: tuple[tuple[int, ...], ...]

    @property
    def weight(self) -> Fraction:
        return sum(
            (w * x for (_u, _v, w), x in zip(self.graph.edges, self.values)),
            start=ZERO,
        )

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.values) if x != 0)

    def vertex_load(self, v: int) -> Fraction:
        """x(delta(v)) for this vector."""
        return sum((self.values[idx] for _n, idx in self.graph.adjacency[v]), start=ZERO)

    @cached_property
    def cycle_vertices(self) -> frozenset[int]:
        return frozenset(v for cycle in self.odd_cycles for v in cycle)

    def is_exposed(self, v: int) -> bool:
        """True when v carries no support at all (integral nor half)."""
        return self.vertex_load(v) == 0


def cycle_edge_indices(graph: WeightedGraph, cycle: Sequence[int]) -> tuple[int, ...]:
    """Edge indices around a vertex cycle, in cyclic order."""
    k = len(cycle)
    return tuple(graph.edge_index(cycle[i], cycle[(i + 1) % k]) for i in range(k))


def decompose(
    graph: WeightedGraph, values: Sequence[Fraction]
) -> BasicFractionalMatching:
    """Validate a half-integral vector and split it into M(x) and C(x).

    Raises NotHalfIntegral / DegreeConstraintViolated / NotBasic when the
    vector is not a basic fractional matching.
    """
    if len(values) != graph.m:
        raise NotHalfIntegral("value vector length does not match edge count")
    vec = tuple(Fraction(x) for x in values)
    for idx, x in enumerate(vec):
        if x not in (ZERO, HALF, ONE):
            raise NotHalfIntegral(f"edge {idx} has value {x}, expected 0, 1/2 or 1")
    for v in range(graph.n):
        load = sum((vec[idx] for _n, idx in graph.adjacency[v]), start=ZERO)
        if load > 1:
            raise DegreeConstraintViolated(f"vertex {v} carries x(delta(v)) = {load}")

    matched = Matching.from_pairs(
        (u, v) for (u, v, _w), x in zip(graph.edges, vec) if x == ONE
    )

    # Half-valued edges must form vertex-disjoint odd cycles.
    half_adj: dict[int, list[int]] = {}
    for (u, v, _w), x in zip(graph.edges, vec):
        if x == HALF:
            half_adj.setdefault(u, []).append(v)
            half_adj.setdefault(v, []).append(u)
    cycles: list[tuple[int, ...]] = []
    visited: set[int] = set()
    for start in sorted(half_adj):
        if start in visited:
            continue
        if len(half_adj[start]) != 2:
            raise NotBasic(f"vertex {start} has {len(half_adj[start])} half-edges")
        order = [start]
        visited.add(start)
        prev, cur = start, min(half_adj[start])
        while cur != start:
            if len(half_adj[cur]) != 2:
                raise NotBasic(f"vertex {cur} has {len(half_adj[cur])} half-edges")
            visited.add(cur)
            order.append(cur)
            nxt = half_adj[cur][0] if half_adj[cur][1] == prev else half_adj[cur][1]
            prev, cur = cur, nxt
        if len(order) % 2 == 0:
            raise NotBasic(f"half-edges around vertex {start} form an even cycle")
        cycles.append(canonical_cycle(order))
    cycles.sort()
    return BasicFractionalMatching(graph, vec, matched, tuple(cycles))


def recompose(bfm: BasicFractionalMatching) -> tuple[Fraction, ...]:
    """The raw edge vector of a basic fractional matching (decompose inverse)."""
    return bfm.values


def alternate_round(
    bfm: BasicFractionalMatching, cycle: Sequence[int], v: int
) -> BasicFractionalMatching:
    """Round a half-valued odd cycle to the near-perfect matching exposing v.

    Walking the cycle from v, odd-position edges drop to 0 and even-position
    edges rise to 1; entries outside E(C) are untouched.
    """
    canon = canonical_cycle(cycle)
    if canon not in bfm.odd_cycles:
        raise CycleNotInSupport(f"cycle {canon} not in the support")
    if v not in canon:
        raise VertexNotOnCycle(f"vertex {v} not on cycle {canon}")
    k = len(canon)
    pos = canon.index(v)
    order = [canon[(pos + i) % k] for i in range(k)]
    new_values = list(bfm.values)
    for i in range(k):
        idx = bfm.graph.edge_index(order[i], order[(i + 1) % k])
        # positions are 1-based from v; the first and last edges touch v
        new_values[idx] = ZERO if i % 2 == 0 else ONE
    return decompose(bfm.graph, new_values)


def complement(
    bfm: BasicFractionalMatching, edge_indices: Iterable[int]
) -> tuple[Fraction, ...]:
    """Flip x_e to 1 - x_e along a set of integral edges.

    Returns the raw vector; callers re-validate through decompose.
    """
    new_values = list(bfm.values)
    for idx in edge_indices:
        x = new_values[idx]
        if x not in (ZERO, ONE):
            raise HalfValueOnPath(f"edge {idx} has value {x}; complement needs 0/1")
        new_values[idx] = ONE - x
    return tuple(new_values)


def switch(
    bfm: BasicFractionalMatching,
    other: BasicFractionalMatching,
    component_edges: Iterable[int],
) -> BasicFractionalMatching:
    """Replace x by x' on one connected component of supp(x + x').

    The component restriction is what makes the result feasible again; any
    other edge set is rejected.
    """
    graph = bfm.graph
    want = frozenset(component_edges)
    support = [
        i for i in range(graph.m) if bfm.values[i] != 0 or other.values[i] != 0
    ]
    # connected components of the support subgraph, as edge sets
    parent = list(range(graph.n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in support:
        u, v, _w = graph.edges[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    components: dict[int, set[int]] = {}
    for i in support:
        u, _v, _w = graph.edges[i]
        components.setdefault(find(u), set()).add(i)
    if want not in [frozenset(es) for es in components.values()]:
        raise NotAComponent("edge set is not a full component of supp(x + x')")
    new_values = tuple(
        other.values[i] if i in want else bfm.values[i] for i in range(graph.m)
    )
    return decompose(graph, new_values)


@dataclass(frozen=True)
class FractionalVertexCover:
    """Nonnegative vertex values y with y_u + y_v >= w_uv on every edge."""

    values: tuple[Fraction, ...]

    @staticmethod
    def from_values(values: Iterable[WeightLike]) -> "FractionalVertexCover":
        vec = tuple(as_fraction(v) for v in values)
        if any(v < 0 for v in vec):
            raise InfeasibleCover("cover values must be nonnegative")
        return FractionalVertexCover(vec)

    @property
    def total(self) -> Fraction:
        return sum(self.values, start=ZERO)

    def violated_edges(self, graph: WeightedGraph) -> tuple[int, ...]:
        return tuple(
            i
            for i, (u, v, w) in enumerate(graph.edges)
            if self.values[u] + self.values[v] < w
        )

    def is_feasible_for(self, graph: WeightedGraph) -> bool:
        return len(self.values) == graph.n and not self.violated_edges(graph)


def tight_edges(graph: WeightedGraph, cover: FractionalVertexCover) -> frozenset[int]:
    """Edge indices where y_u + y_v equals w_uv exactly."""
    if len(cover.values) != graph.n:
        raise InfeasibleCover("cover length does not match vertex count")
    bad = cover.violated_edges(graph)
    if bad:
        u, v, w = graph.edges[bad[0]]
        raise InfeasibleCover(
            f"edge ({u},{v}) violates the cover: {cover.values[u]} + {cover.values[v]} < {w}"
        )
    return frozenset(
        i
        for i, (u, v, w) in enumerate(graph.edges)
        if cover.values[u] + cover.values[v] == w
    )


@dataclass(frozen=True)
class AlternatingWalk:
    """A walk with per-edge matched flags relative to some matching.

    Vertices may repeat; edges are implied by consecutive vertices.
    """

    vertices: tuple[int, ...]
    matched_flags: tuple[bool, ...]

    @staticmethod
    def from_vertices(
        graph: WeightedGraph, matching: Matching, vertices: Sequence[int]
    ) -> "AlternatingWalk":
        verts = tuple(vertices)
        flags = []
        for a, b in zip(verts, verts[1:]):
            if not graph.has_edge(a, b):
                raise GraphError(f"walk step ({a},{b}) is not an edge")
            flags.append(matching.contains_edge(a, b))
        return AlternatingWalk(verts, tuple(flags))

    def __len__(self) -> int:
        return len(self.matched_flags)

    @property
    def is_alternating(self) -> bool:
        return all(a != b for a, b in zip(self.matched_flags, self.matched_flags[1:]))

    def is_valid(self, matching: Matching) -> bool:
        """Starts and ends with an exposed vertex or a matched edge."""
        if not self.is_alternating:
            return False
        if len(self) == 0:
            return not matching.covers(self.vertices[0])
        start_ok = (not matching.covers(self.vertices[0])) or self.matched_flags[0]
        end_ok = (not matching.covers(self.vertices[-1])) or self.matched_flags[-1]
        return start_ok and end_ok


def walk_value(
    walk: AlternatingWalk, graph: WeightedGraph, matching: Matching
) -> Fraction:
    """w(walk \\ M) - w(walk ∩ M), counting repeated edges with multiplicity."""
    if not walk.is_alternating:
        raise NotAlternating("walk edges do not alternate with the matching")
    total = ZERO
    for (a, b), flag in zip(zip(walk.vertices, walk.vertices[1:]), walk.matched_flags):
        if flag != matching.contains_edge(a, b):
            raise NotAlternating("walk flags disagree with the matching")
        w = graph.weight(a, b)
        total += -w if flag else w
    return total
