import itertools

import numpy as np
import pytest

from tkserver.metric import GraphSpace


def random_connected_graph(rng, n, p=0.5):
    """Random spanning tree plus independent extra edges."""
    order = rng.permutation(n)
    edges = {tuple(sorted((int(order[i]), int(order[rng.integers(i)])))) for i in range(1, n)}
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            edges.add((u, v))
    return GraphSpace(n, sorted(edges))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
