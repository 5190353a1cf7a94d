import random

import pytest

from apexctl.graphs import (
    Graph,
    complete_bipartite,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    from_edges,
    heawood_graph,
    petersen_graph,
)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def k5():
    return complete_graph(5)


@pytest.fixture
def k6():
    return complete_graph(6)


@pytest.fixture
def k7():
    return complete_graph(7)


@pytest.fixture
def k33():
    return complete_bipartite(3, 3)


@pytest.fixture
def petersen():
    return petersen_graph()


@pytest.fixture
def heawood():
    return heawood_graph()


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return from_edges(
        n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    )


def random_graph_m(rng: random.Random, n: int, m: int) -> Graph:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return from_edges(n, rng.sample(pairs, min(m, len(pairs))))
