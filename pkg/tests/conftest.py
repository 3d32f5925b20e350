import random

import pytest

from avmsim import Opinion, VoterGraph, available


def random_multigraph(rnd: random.Random, max_n: int = 12, max_m: int = 20,
                      min_n: int = 1) -> VoterGraph:
    """Random multigraph: parallel edges allowed, self-edges never."""
    n = rnd.randint(min_n, max_n)
    opinions = [rnd.randint(0, 1) for _ in range(n)]
    edges = []
    if n >= 2:
        m = rnd.randint(0, max_m)
        for _ in range(m):
            i = rnd.randrange(n)
            j = rnd.randrange(n)
            while j == i:
                j = rnd.randrange(n)
            edges.append((i, j))
    return VoterGraph(opinions, edges)


def graph_corpus(count: int, seed: int = 2024, **kw) -> list[VoterGraph]:
    rnd = random.Random(seed)
    return [random_multigraph(rnd, **kw) for _ in range(count)]


@pytest.fixture(params=available())
def backend(request):
    return request.param
