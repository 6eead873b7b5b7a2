from __future__ import annotations

import random

import pytest

from conftest import random_graph, random_matching
from matchstab import oracle
from matchstab.errors import EntryIsMinusInfinity, VertexNotExposed
from matchstab.graph import Matching, WeightedGraph, walk_value
from matchstab.walks import (
    detect_structures,
    extract_augmenting_structure,
    optimal_walks,
    reconstruct_walk,
)


def _triangle_flower():
    g = WeightedGraph.from_edges(3, [(0, 1, 2), (0, 2, 2), (1, 2, 2)])
    return g, Matching.from_pairs([(1, 2)])


def test_k0_exposed_source():
    g, m = _triangle_flower()
    t = optimal_walks(g, m, 0, 0)
    assert t.y1[0] == 0 and t.y2[0] == 0
    assert t.y1[1] is None and t.y2[1] is None


def test_single_edge_walk():
    g = WeightedGraph.from_edges(2, [(0, 1, 5)])
    t = optimal_walks(g, Matching.empty(), 0, 1)
    assert t.y1[1] == 5
    walk = reconstruct_walk(t, 1, 1)
    assert walk.vertices == (0, 1)


def test_triangle_flower_value():
    g, m = _triangle_flower()
    t = optimal_walks(g, m, 0, 3)
    assert t.y1[0] == 2
    walk = reconstruct_walk(t, 0, 1)
    assert walk_value(walk, g, m) == 2
    assert walk.vertices[0] == walk.vertices[-1] == 0
    assert len(walk) <= 3


def test_reconstruct_empty_walk_and_sentinel():
    g, m = _triangle_flower()
    t = optimal_walks(g, m, 0, 0)
    assert reconstruct_walk(t, 0, 1).vertices == (0,)
    with pytest.raises(EntryIsMinusInfinity):
        reconstruct_walk(t, 1, 1)


def test_tables_are_monotone():
    rng = random.Random(321)
    for _ in range(40):
        g = random_graph(rng, n_max=7)
        m = random_matching(rng, g)
        s = rng.randrange(g.n)
        t = optimal_walks(g, m, s, 7)
        for history in (t.history1, t.history2):
            for earlier, later in zip(history, history[1:]):
                for a, b in zip(earlier, later):
                    assert a is None or (b is not None and b >= a)


def test_dp_equals_enumeration_per_iteration():
    rng = random.Random(424)
    for _ in range(60):
        g = random_graph(rng, n_max=7)
        m = random_matching(rng, g)
        s = rng.randrange(g.n)
        k = rng.randint(0, 8)
        t = optimal_walks(g, m, s, k)
        brute = oracle.optimal_walk_values(g, m, s, k)
        for i in range(k + 1):
            for v in range(g.n):
                got = t.history2[i][v] if m.covers(v) else t.history1[i][v]
                assert brute[i][v] == got


def test_reconstruction_matches_entries_and_is_valid():
    rng = random.Random(88)
    for _ in range(60):
        g = random_graph(rng, n_max=7)
        m = random_matching(rng, g)
        s = rng.randrange(g.n)
        k = rng.randint(0, 8)
        t = optimal_walks(g, m, s, k)
        for v in range(g.n):
            table = 2 if m.covers(v) else 1
            entry = (t.y2 if table == 2 else t.y1)[v]
            if entry is None:
                continue
            walk = reconstruct_walk(t, v, table)
            assert walk.is_valid(m)
            assert walk_value(walk, g, m) == entry
            assert len(walk) <= k


def test_detect_structures_examples():
    g, m = _triangle_flower()
    scan = detect_structures(g, m, 0)
    assert scan.flower_at_root
    assert scan.walk_to_covered is None

    single = WeightedGraph.from_edges(2, [(0, 1, 3)])
    scan = detect_structures(single, Matching.empty(), 0)
    assert scan.walk_to_exposed == 1 and not scan.flower_at_root

    path = WeightedGraph.from_edges(3, [(0, 1, 3), (1, 2, 2)])
    scan = detect_structures(path, Matching.from_pairs([(1, 2)]), 0)
    assert scan.walk_to_covered == 2

    with pytest.raises(VertexNotExposed):
        detect_structures(path, Matching.from_pairs([(1, 2)]), 1)


def test_flower_extraction_from_triangle():
    g, m = _triangle_flower()
    t = optimal_walks(g, m, 0, 3)
    walk = reconstruct_walk(t, 0, 1)
    structure = extract_augmenting_structure(g, m, walk)
    assert structure.kind == "flower" and structure.root == 0


def test_every_augmenting_walk_decomposes():
    rng = random.Random(999)
    found = 0
    for _ in range(120):
        g = random_graph(rng, n_max=7)
        m = random_matching(rng, g)
        exposed = [v for v in range(g.n) if not m.covers(v)]
        for u in exposed:
            scan = detect_structures(g, m, u)
            targets = []
            if scan.flower_at_root:
                targets.append((u, 1, scan.long_tables))
            if scan.walk_to_covered is not None:
                targets.append((scan.walk_to_covered, 2, scan.long_tables))
            if scan.walk_to_exposed is not None:
                targets.append((scan.walk_to_exposed, 1, scan.short_tables))
            for v, table, tables in targets:
                walk = reconstruct_walk(tables, v, table)
                if walk_value(walk, g, m) <= 0:
                    continue
                structure = extract_augmenting_structure(g, m, walk)
                assert structure.kind in ("path", "cycle", "flower", "bicycle")
                if structure.kind == "flower":
                    assert structure.root in (walk.vertices[0], walk.vertices[-1])
                if structure.kind == "path":
                    assert {structure.pieces[0][0], structure.pieces[0][-1]} == \
                        {walk.vertices[0], walk.vertices[-1]}
                found += 1
    assert found > 50  # the random suite must actually exercise the extractor
