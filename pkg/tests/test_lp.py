from __future__ import annotations

import random
from fractions import Fraction

from conftest import fig6, fig8, fig9, random_graph
from matchstab import oracle
from matchstab.graph import WeightedGraph, decompose, tight_edges
from matchstab.lp import (
    BipartiteDuplicate,
    bipartite_max_weight_matching,
    normalize_to_basic,
    solve_fractional,
    symmetrize,
)

H = Fraction(1, 2)


def test_bipartite_empty_and_single_edge():
    empty = WeightedGraph.from_edges(0, [])
    res = bipartite_max_weight_matching(BipartiteDuplicate.of(empty))
    assert res.weight == 0 and res.potentials.total == 0

    single = WeightedGraph.from_edges(2, [(0, 1, 7)])
    res = bipartite_max_weight_matching(BipartiteDuplicate.of(single))
    # both copies of the edge are matched: bipartite optimum 14 = 2 * nu_f
    assert res.weight == 14
    assert res.potentials.total == 14


def test_bipartite_fig9_value_doubles_nu_f():
    res = bipartite_max_weight_matching(BipartiteDuplicate.of(fig9()))
    assert res.weight == 12


def test_symmetrize_unit_triangle():
    tri = WeightedGraph.from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
    dup = BipartiteDuplicate.of(tri)
    res = bipartite_max_weight_matching(dup)
    values = symmetrize(dup, res)
    assert sum(w * x for (_u, _v, w), x in zip(tri.edges, values)) == Fraction(3, 2)
    assert all(x in (Fraction(0), H, Fraction(1)) for x in values)


def test_normalize_identity_on_basic():
    tri = WeightedGraph.from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
    out = normalize_to_basic(tri, (H, H, H))
    assert out.values == (H, H, H)


def test_normalize_even_cycle_ties_break_by_edge_index():
    g4 = WeightedGraph.from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)])
    out = normalize_to_basic(g4, (H, H, H, H))
    assert out.weight == 2
    assert out.values[0] == 1  # lowest-index edge wins the tie


def test_normalize_half_path():
    g = WeightedGraph.from_edges(3, [(0, 1, 3), (1, 2, 3)])
    out = normalize_to_basic(g, (H, H))
    assert out.weight == 3
    assert out.values[0] == 1 and out.values[1] == 0


def test_solve_fractional_fixture_values():
    bfm9, cover9 = solve_fractional(fig9())
    assert bfm9.weight == 6
    assert cover9.values == (Fraction(2), Fraction(2), Fraction(2), Fraction(0))
    assert bfm9.odd_cycles == ((0, 1, 2),)

    bfm8, _cover8 = solve_fractional(fig8())
    assert bfm8.weight == 9

    bfm6, _cover6 = solve_fractional(fig6())
    assert bfm6.weight == Fraction(13, 2)


def test_duality_and_slackness_on_random_suite(property_suite):
    for g in property_suite:
        bfm, cover = solve_fractional(g)
        assert bfm.weight == cover.total
        tight = tight_edges(g, cover)
        assert all(i in tight for i in bfm.support)
        assert all(
            cover.values[v] == 0 or bfm.vertex_load(v) == 1 for v in range(g.n)
        )
        # solver value equals the enumeration oracle
        assert bfm.weight == oracle.exact_nu_f(g)
        # the result round-trips through decompose bit-exactly
        assert decompose(g, bfm.values).values == bfm.values


def test_normalize_never_changes_weight():
    rng = random.Random(7)
    for _ in range(60):
        g = random_graph(rng)
        dup = BipartiteDuplicate.of(g)
        res = bipartite_max_weight_matching(dup)
        raw = symmetrize(dup, res)
        raw_weight = sum(
            (w * x for (_u, _v, w), x in zip(g.edges, raw)), start=Fraction(0)
        )
        assert normalize_to_basic(g, raw).weight == raw_weight


def test_zero_weight_edges_are_harmless():
    g = WeightedGraph.from_edges(3, [(0, 1, 0), (1, 2, 0), (0, 2, 0)])
    bfm, cover = solve_fractional(g)
    assert bfm.weight == 0 and cover.total == 0

    mixed = WeightedGraph.from_edges(4, [(0, 1, 3), (1, 2, 0), (2, 3, 2)])
    bfm, cover = solve_fractional(mixed)
    assert bfm.weight == 5 == cover.total
    from matchstab.cycles import reduce_cycles

    assert reduce_cycles(mixed).gamma == 0
