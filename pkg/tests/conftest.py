from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from matchstab.graph import Matching, WeightedGraph


def fig6() -> WeightedGraph:
    # two weight-2 triangles joined through a 1 / 0.5 / 1 path
    return WeightedGraph.from_edges(
        8,
        [
            (0, 1, 2), (0, 2, 2), (1, 2, 2),
            (0, 3, 1), (3, 4, Fraction(1, 2)), (4, 5, 1),
            (5, 6, 2), (5, 7, 2), (6, 7, 2),
        ],
        labels=[str(i + 1) for i in range(8)],
    )


def fig7() -> WeightedGraph:
    # augmenting flower: weight-2 triangle with a 3/4 stem (epsilon = 1/4)
    return WeightedGraph.from_edges(
        4,
        [(0, 1, 2), (0, 2, 2), (1, 2, 2), (0, 3, Fraction(3, 4))],
        labels=["1", "2", "3", "4"],
    )


def fig8() -> WeightedGraph:
    return WeightedGraph.from_edges(
        5,
        [(1, 2, 4), (3, 4, 4), (0, 1, 3), (0, 4, 3), (2, 3, 3), (1, 3, 3), (0, 2, 3)],
        labels=["p", "q", "r", "s", "t"],
    )


def fig9() -> WeightedGraph:
    return WeightedGraph.from_edges(
        4,
        [(0, 1, 4), (0, 2, 4), (1, 2, 4), (0, 3, 1)],
        labels=["p", "q", "r", "s"],
    )


@pytest.fixture(scope="session")
def graph_fig6() -> WeightedGraph:
    return fig6()


@pytest.fixture(scope="session")
def graph_fig7() -> WeightedGraph:
    return fig7()


@pytest.fixture(scope="session")
def graph_fig8() -> WeightedGraph:
    return fig8()


@pytest.fixture(scope="session")
def graph_fig9() -> WeightedGraph:
    return fig9()


def random_graph(
    rng: random.Random, n_max: int = 8, weight_max: int = 5, unit: bool = False
) -> WeightedGraph:
    n = rng.randint(2, n_max)
    possible = list(itertools.combinations(range(n), 2))
    m = rng.randint(0, min(len(possible), n + 4))
    edges = [
        (u, v, 1 if unit else rng.randint(1, weight_max))
        for u, v in rng.sample(possible, m)
    ]
    return WeightedGraph.from_edges(n, edges)


def random_matching(rng: random.Random, graph: WeightedGraph, p: float = 0.5) -> Matching:
    pairs = []
    used: set[int] = set()
    shuffled = list(graph.edges)
    rng.shuffle(shuffled)
    for u, v, _w in shuffled:
        if u not in used and v not in used and rng.random() < p:
            pairs.append((u, v))
            used.update((u, v))
    return Matching.from_pairs(pairs)


@pytest.fixture(scope="session")
def property_suite() -> list[WeightedGraph]:
    """200 weighted instances (n <= 8, weights 1..5) plus 40 unit-weight
    ones covering the unweighted setting; shared by the acceptance tests."""
    rng = random.Random(20240817)
    suite = [random_graph(rng) for _ in range(200)]
    suite += [random_graph(rng, unit=True) for _ in range(40)]
    return suite
